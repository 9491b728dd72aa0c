#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "nsplit/oracles.hpp"
#include "nsplit/solver.hpp"
#include "nsplit/walks.hpp"

using namespace nsplit;

namespace {

// independent oracle: all alternating s-cut partitions by direct combination
// enumeration, checked with is_fair
std::int64_t brute_count_fair_scut(const Necklace& N, int s) {
    const int n = N.n();
    std::int64_t count = 0;
    std::vector<std::int32_t> cuts;
    auto gen = [&](auto&& self, int from) -> void {
        if (static_cast<int>(cuts.size()) == s) {
            Partition P;
            P.cuts = cuts;
            for (int j = 0; j <= s; ++j) P.owners.push_back(j % 2);
            if (is_fair(N, P)) ++count;
            return;
        }
        for (int c = from; c <= n - (s - static_cast<int>(cuts.size())); ++c) {
            cuts.push_back(c);
            self(self, c + 1);
            cuts.pop_back();
        }
    };
    if (s >= 1) gen(gen, 1);
    return count;
}

} // namespace

TEST_CASE("named instances") {
    CHECK(min_cuts_two(neck("ABAB")).cut_count == 1);
    CHECK(min_cuts_exact(neck("ABAB")).cut_count == 1);
    auto w = min_cuts_two(neck("AABB"));
    CHECK(w.cut_count == 2);
    CHECK(w.partition.cuts == std::vector<std::int32_t>{1, 3});
    CHECK(min_cuts_exact(neck("AABB")).cut_count == 2);
    CHECK(min_cuts_two(neck("AA")).cut_count == 1);
    // t blocks of contiguous types force t cuts
    for (int t = 1; t <= 4; ++t)
        CHECK(min_cuts_two(sorted_necklace(2, t, 1)).cut_count == t);
    CHECK(min_cuts_two(neck("ABABABAB")).cut_count == 1);
}

TEST_CASE("two-thief solver agrees with exhaustive search") {
    for (auto [t, m] : {std::pair{1, 2}, {2, 1}, {2, 2}, {3, 1}}) {
        for_each_necklace(2, t, m, [&](const Necklace& N) {
            Witness a = min_cuts_two(N);
            Witness b = min_cuts_exact(N);
            CHECK(a.cut_count == b.cut_count);
            CHECK(a.cut_count <= t);
            CHECK(x_value(N) == a.cut_count);
            CHECK(is_fair(N, a.partition));
            CHECK(canonicalize(a.partition) == a.partition);
        });
    }
}

TEST_CASE("three thieves, exhaustive (3,2,1)") {
    for_each_necklace(3, 2, 1, [&](const Necklace& N) {
        Witness w = min_cuts_exact(N);
        CHECK(w.cut_count <= (N.k - 1) * N.t);
        CHECK(is_fair(N, w.partition));
        CHECK(canonicalize(w.partition) == w.partition);
        CHECK(x_value(N) == w.cut_count);
    });
}

TEST_CASE("exists_fair_with_cuts") {
    CHECK_FALSE(exists_fair_with_cuts(neck("AABB"), 1).has_value());
    auto w = exists_fair_with_cuts(neck("AABB"), 2);
    REQUIRE(w.has_value());
    CHECK(w->partition.cuts == std::vector<std::int32_t>{1, 3});
    // the deterministic bound always admits a witness
    for_each_necklace(2, 3, 1, [&](const Necklace& N) {
        CHECK(exists_fair_with_cuts(N, (N.k - 1) * N.t).has_value());
    });
    CHECK_THROWS_AS(exists_fair_with_cuts(neck("ABAB"), -1), std::invalid_argument);
}

TEST_CASE("count_fair_scut basics") {
    CHECK(count_fair_scut(neck("ABAB"), 1) == 1);
    CHECK(count_fair_scut(neck("AABB"), 1) == 0);
    std::int64_t total = 0;
    for_each_necklace(2, 2, 1, [&](const Necklace& N) { total += count_fair_scut(N, 1); });
    CHECK(total == 4); // 4 of 6 arrangements have a fair half split
    // mean over all arrangements is E(Y) = n'(1,2,1) P(2,2,1) = 2/3
    CHECK(Rational(total, 6) == fair_probability_exact(2, 2, 1));
}

TEST_CASE("count_fair_scut matches brute enumeration") {
    for (auto [t, m] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        for_each_necklace(2, t, m, [&](const Necklace& N) {
            for (int s = 1; s <= std::min(N.n() - 1, 2 * t); ++s)
                CHECK(count_fair_scut(N, s) == brute_count_fair_scut(N, s));
        });
    }
}

TEST_CASE("solver caps") {
    CHECK_THROWS_AS(min_cuts_exact(sorted_necklace(2, 3, 7)), too_large_error);
    CHECK_THROWS_AS(min_cuts_exact(sorted_necklace(3, 3, 3)), too_large_error);
    SolverCaps tight;
    tight.count_cap = 2;
    CHECK_THROWS_AS(count_fair_scut(sorted_necklace(2, 3, 2), 3, tight), too_large_error);
    CHECK_THROWS_AS(min_cuts_two(sorted_necklace(3, 2, 1)), unsupported_error);
}

TEST_CASE("deep witnesses remain fair for larger t") {
    // spot-check the DFS path (s >= 3) on sorted necklaces where X = t
    for (int t : {3, 4, 5}) {
        Necklace N = sorted_necklace(2, t, 1);
        Witness w = min_cuts_two(N);
        CHECK(w.cut_count == t);
        CHECK(is_fair(N, w.partition));
    }
}

TEST_CASE("t=4 exhaustive: the s=3 DFS level agrees with plain enumeration") {
    // X(2,4,1) ranges over {1..4}; values 3 and 4 exercise the generic DFS
    std::vector<std::int64_t> histogram(5, 0);
    for_each_necklace(2, 4, 1, [&](const Necklace& N) {
        Witness a = min_cuts_two(N);
        Witness b = min_cuts_exact(N);
        CHECK(a.cut_count == b.cut_count);
        CHECK(x_value(N) == a.cut_count);
        CHECK(is_fair(N, a.partition));
        ++histogram[static_cast<std::size_t>(a.cut_count)];
    });
    // every level up to the deterministic bound is realized
    for (int s = 1; s <= 4; ++s) CHECK(histogram[static_cast<std::size_t>(s)] > 0);
}

TEST_CASE("sampled (2,5,1): solver, decision form and fold agree") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Necklace N = generate_uniform(2, 5, 1, {7171, i});
        Witness w = min_cuts_two(N);
        Witness e = min_cuts_exact(N);
        CHECK(w.cut_count == e.cut_count);
        CHECK(is_fair(N, w.partition));
        CHECK(fold_min_direct(N) == w.cut_count);
        CHECK(fair_within_two(N, w.cut_count));
        CHECK_FALSE(fair_within_two(N, w.cut_count - 1));
    }
}

TEST_CASE("two-thief solver handles n around two thousand") {
    Necklace N = generate_uniform(2, 3, 333, {5097, 0}); // n = 1998
    Witness w = min_cuts_two(N);
    CHECK(w.cut_count >= 1);
    CHECK(w.cut_count <= 3);
    CHECK(is_fair(N, w.partition));
}
