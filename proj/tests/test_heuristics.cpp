#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "nsplit/heuristics.hpp"
#include "nsplit/solver.hpp"

using namespace nsplit;

TEST_CASE("incremental_two_thief: base case and hand-traced example") {
    auto base = incremental_two_thief(neck("AA"));
    CHECK(base.cut_count == 1);
    CHECK(is_fair(neck("AA"), base.partition));

    auto sol = incremental_two_thief(neck("ABBA"));
    CHECK(sol.cut_count == 1);
    CHECK(sol.partition.cuts == std::vector<std::int32_t>{2});
    CHECK(is_fair(neck("ABBA"), sol.partition));

    CHECK_THROWS_AS(incremental_two_thief(neck("ABABAB", 3)), unsupported_error);
    CHECK_THROWS_AS(incremental_two_thief(sorted_necklace(2, 2, 2)), unsupported_error);
}

TEST_CASE("incremental_two_thief: exhaustive small instances") {
    for (int t : {1, 2, 3}) {
        for_each_necklace(2, t, 1, [&](const Necklace& N) {
            auto sol = incremental_two_thief(N);
            CHECK(is_fair(N, sol.partition));
            CHECK(sol.cut_count <= t);
            CHECK(sol.cut_count >= min_cuts_two(N).cut_count);
            CHECK(sol.stats.cuts_intervals + sol.stats.cuts_leftover >= sol.cut_count);
        });
    }
}

TEST_CASE("incremental_two_thief: seeded trials stay fair and within t cuts") {
    int done = 0;
    for (int t : {8, 33, 64}) {
        for (int i = 0; i < (t == 64 ? 4000 : 3000); ++i, ++done) {
            Necklace N = generate_uniform(2, t, 1, {321, static_cast<std::uint64_t>(done)});
            auto sol = incremental_two_thief(N);
            CHECK(is_fair(N, sol.partition));
            CHECK(sol.cut_count <= t);
            CHECK(sol.cut_count >= 1);
            CHECK(sol.stats.cuts_intervals + sol.stats.cuts_leftover == sol.cut_count);
        }
    }
    CHECK(done == 10000);
}

TEST_CASE("incremental_two_thief: cut fraction at t=400") {
    const int t = 400, trials = 100;
    double sum = 0;
    for (int i = 0; i < trials; ++i) {
        Necklace N = generate_uniform(2, t, 1, {8080, static_cast<std::uint64_t>(i)});
        auto sol = incremental_two_thief(N);
        CHECK(is_fair(N, sol.partition));
        sum += static_cast<double>(sol.cut_count) / t;
    }
    double mean = sum / trials;
    CHECK(mean >= 0.20);
    CHECK(mean <= 0.45);
}

TEST_CASE("build_interval_hypergraph") {
    // duplicated rainbow: every window of 3 has distinct types
    auto N = necklace_from_beads(2, {0, 1, 2, 3, 4, 5, 0, 1, 2, 3, 4, 5});
    auto ib = build_interval_hypergraph(N, 3);
    CHECK(ib.interval_count == 4);
    CHECK(ib.graph.edges.size() == 4);
    CHECK(ib.bad_intervals.empty());

    auto M = neck("AABB");
    auto ib2 = build_interval_hypergraph(M, 2);
    REQUIRE(!ib2.bad_intervals.empty());
    CHECK(ib2.bad_intervals[0] == 0);

    // short trailing interval is always bad
    auto S = sorted_necklace(2, 5, 1);
    auto ib3 = build_interval_hypergraph(S, 3);
    CHECK(ib3.interval_count == 4);
    CHECK(!ib3.bad_intervals.empty());
    CHECK(ib3.bad_intervals.back() == 3);

    CHECK_THROWS_AS(build_interval_hypergraph(N, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_interval_hypergraph(sorted_necklace(2, 2, 2), 2), unsupported_error);

    // vertex degree never exceeds k
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Necklace R = generate_uniform(5, 40, 1, {seed, 9});
        auto ib4 = build_interval_hypergraph(R, 4);
        std::vector<int> degree(static_cast<std::size_t>(R.t), 0);
        for (const auto& e : ib4.graph.edges)
            for (auto v : e) ++degree[static_cast<std::size_t>(v)];
        for (int d : degree) CHECK(d <= R.k);
    }
}

TEST_CASE("greedy_matchings") {
    Hypergraph disjoint{6, {{0, 1}, {2, 3}, {4, 5}}};
    CHECK(greedy_matchings(disjoint).size() == 1);

    Hypergraph parallel{3, {}};
    for (int i = 0; i < 7; ++i) parallel.edges.push_back({0, 1, 2});
    CHECK(greedy_matchings(parallel).size() == 7);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const int k = 6, C = 3;
        Necklace R = generate_uniform(k, 30, 1, {seed, 17});
        auto ib = build_interval_hypergraph(R, C);
        auto ms = greedy_matchings(ib.graph);
        CHECK(ms.size() <= static_cast<std::size_t>(C * (k - 1) + 1));
        // union of matchings is the edge multiset, and matchings are disjoint
        std::multiset<std::int32_t> ids;
        for (const auto& matching : ms) {
            std::set<std::int32_t> verts;
            for (auto e : matching) {
                ids.insert(e);
                for (auto v : ib.graph.edges[static_cast<std::size_t>(e)]) {
                    CHECK(verts.count(v) == 0);
                    verts.insert(v);
                }
            }
        }
        CHECK(ids.size() == ib.graph.edges.size());
    }
}

TEST_CASE("interval_hypergraph_partition: fairness across seeded trials") {
    for (int i = 0; i < 50; ++i) {
        Necklace N = generate_uniform(16, 200, 1, {606, static_cast<std::uint64_t>(i)});
        auto sol = interval_hypergraph_partition(N, 4);
        CHECK(is_fair(N, sol.partition));
        CHECK(sol.stats.cuts_intervals + sol.stats.cuts_leftover >= sol.cut_count);
    }
}

TEST_CASE("interval_hypergraph_partition: tiny instance sanity") {
    Necklace N = generate_uniform(2, 4, 1, {31, 0});
    auto sol = interval_hypergraph_partition(N, 2);
    CHECK(is_fair(N, sol.partition));
    CHECK(sol.cut_count <= N.k * N.t);
    CHECK_THROWS_AS(interval_hypergraph_partition(generate_uniform(1, 4, 1, {1, 1}), 2),
                    unsupported_error);
}
