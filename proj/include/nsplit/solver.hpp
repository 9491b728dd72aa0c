#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nsplit/errors.hpp"
#include "nsplit/necklace.hpp"

namespace nsplit {

/// A fair partition together with its canonical cut count. Results of the
/// min-cut searches additionally guarantee no fair partition uses fewer cuts.
struct Witness {
    Partition partition;
    int cut_count = 0;
};

struct SolverCaps {
    int exact_n_two = 40;      // min_cuts_exact bead cap for k = 2
    int exact_n_general = 24;  // min_cuts_exact bead cap for k >= 3
    std::uint64_t count_cap = 5000000; // cut-set enumeration cap for counting
};

namespace detail {

// prefix[type][pos] = beads of `type` among the first `pos` beads
inline std::vector<std::vector<std::int32_t>> prefix_counts(const Necklace& N) {
    std::vector<std::vector<std::int32_t>> pc(static_cast<std::size_t>(N.t),
                                              std::vector<std::int32_t>(static_cast<std::size_t>(N.n() + 1), 0));
    for (int i = 0; i < N.n(); ++i) {
        for (int type = 0; type < N.t; ++type)
            pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(i + 1)] =
                pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(i)] +
                (N.beads[static_cast<std::size_t>(i)] == type ? 1 : 0);
    }
    return pc;
}

inline bool halves_fair(const Necklace& N) {
    const int half = N.t * N.m;
    std::vector<std::int32_t> cnt(static_cast<std::size_t>(N.t), 0);
    for (int i = 0; i < half; ++i) ++cnt[static_cast<std::size_t>(N.beads[static_cast<std::size_t>(i)])];
    for (auto c : cnt)
        if (c != N.m) return false;
    return true;
}

/// First (lexicographically smallest) shift a in [1, tm) whose cyclic-interval
/// partition {(a, a+tm] | rest} is fair, or -1. Every balanced two-cut
/// partition of a k=2 necklace has this shape.
inline int first_fair_cyclic_shift(const Necklace& N) {
    const int tm = N.t * N.m, n = N.n();
    std::vector<std::int32_t> cnt(static_cast<std::size_t>(N.t), 0);
    for (int i = 0; i < tm; ++i) ++cnt[static_cast<std::size_t>(N.beads[static_cast<std::size_t>(i)])];
    int off = 0; // number of types whose window count differs from m
    for (auto c : cnt)
        if (c != N.m) ++off;
    auto adjust = [&](std::int32_t type, int delta) {
        auto& c = cnt[static_cast<std::size_t>(type)];
        if (c == N.m) ++off;
        c += delta;
        if (c == N.m) --off;
    };
    (void)n;
    for (int a = 1; a < tm; ++a) {
        // window moves from (a-1, a-1+tm] to (a, a+tm]
        adjust(N.beads[static_cast<std::size_t>(a - 1)], -1);
        adjust(N.beads[static_cast<std::size_t>(a - 1 + tm)], +1);
        if (off == 0) return a;
    }
    return -1;
}

/// Pruned DFS over alternating s-cut partitions (k = 2, owners 0,1,0,...).
/// The last cut is forced by the balance constraint; per-type counts prune
/// as soon as either thief exceeds m of any type. Visits candidates in
/// lexicographic cut order; returns the count of fair partitions found, or
/// stops at the first one when `first_out` is given.
inline std::int64_t dfs_alternating(const Necklace& N, int s, Partition* first_out) {
    const int n = N.n(), tm = N.t * N.m;
    if (s < 1 || s > n - 1) return 0;
    auto pc = prefix_counts(N);
    std::vector<std::int32_t> cnt0(static_cast<std::size_t>(N.t), 0), cnt1(cnt0);
    std::int64_t found = 0;

    // interval (from, to] added to thief `who`; returns false if a quota breaks
    auto add_range = [&](std::vector<std::int32_t>& cnt, int from, int to) {
        bool ok = true;
        for (int type = 0; type < N.t; ++type) {
            cnt[static_cast<std::size_t>(type)] +=
                pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(to)] -
                pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(from)];
            if (cnt[static_cast<std::size_t>(type)] > N.m) ok = false;
        }
        return ok;
    };
    auto sub_range = [&](std::vector<std::int32_t>& cnt, int from, int to) {
        for (int type = 0; type < N.t; ++type)
            cnt[static_cast<std::size_t>(type)] -=
                pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(to)] -
                pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(from)];
    };

    std::vector<std::int32_t> cuts(static_cast<std::size_t>(s), 0);
    std::int64_t owned0 = 0, owned1 = 0;

    // place cut j (1-based) after position prev; interval (prev, c] has owner (j-1)%2
    auto rec = [&](auto&& self, int j, int prev) -> bool {
        if (j == s) {
            const bool last_owner0 = ((s - 1) % 2) == 0;
            std::int64_t need = last_owner0 ? tm - owned0 : tm - owned1;
            std::int64_t cs = prev + need;
            if (need < 1 || cs > n - 1) return false;
            auto& cnt_last = last_owner0 ? cnt0 : cnt1;
            auto& cnt_tail = last_owner0 ? cnt1 : cnt0;
            bool ok = true;
            for (int type = 0; type < N.t && ok; ++type) {
                auto in_last = pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(cs)] -
                               pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(prev)];
                auto in_tail = pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(n)] -
                               pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(cs)];
                if (cnt_last[static_cast<std::size_t>(type)] + in_last != N.m) ok = false;
                if (cnt_tail[static_cast<std::size_t>(type)] + in_tail != N.m) ok = false;
            }
            if (!ok) return false;
            cuts[static_cast<std::size_t>(s - 1)] = static_cast<std::int32_t>(cs);
            ++found;
            if (first_out) {
                first_out->cuts = cuts;
                first_out->owners.clear();
                for (int i = 0; i <= s; ++i) first_out->owners.push_back(static_cast<std::int32_t>(i % 2));
                return true;
            }
            return false;
        }
        const bool owner0 = ((j - 1) % 2) == 0;
        auto& cnt = owner0 ? cnt0 : cnt1;
        auto& owned = owner0 ? owned0 : owned1;
        const int limit = n - (s - j); // leave room for the remaining cuts
        int added_to = prev;
        for (int c = prev + 1; c <= limit; ++c) {
            bool ok = add_range(cnt, c - 1, c);
            added_to = c;
            owned += 1;
            if (!ok || owned > tm) break; // larger c only extends this interval further
            cuts[static_cast<std::size_t>(j - 1)] = static_cast<std::int32_t>(c);
            if (self(self, j + 1, c)) return true;
        }
        sub_range(cnt, prev, added_to);
        owned -= (added_to - prev);
        return false;
    };
    rec(rec, 1, 0);
    return found;
}

/// Fair alternating partition with exactly s cuts, k = 2; lexicographically
/// smallest cut vector, or nothing.
inline std::optional<Partition> find_fair_two(const Necklace& N, int s) {
    const int tm = N.t * N.m;
    if (s == 1) {
        if (halves_fair(N)) return halves_partition(N);
        return std::nullopt;
    }
    if (s == 2) {
        int a = first_fair_cyclic_shift(N);
        if (a < 0) return std::nullopt;
        return Partition{{a, a + tm}, {0, 1, 0}};
    }
    Partition P;
    if (dfs_alternating(N, s, &P) > 0) return P;
    return std::nullopt;
}

} // namespace detail

/// Minimum cuts for k = 2 by iterative deepening on the pruned DFS. The Alon
/// bound X <= t guarantees termination at s = t.
inline Witness min_cuts_two(const Necklace& N) {
    if (N.k != 2) throw unsupported_error("min_cuts_two requires k = 2");
    for (int s = 1; s <= N.t; ++s) {
        if (auto P = detail::find_fair_two(N, s)) return Witness{*P, s};
    }
    throw std::logic_error("min_cuts_two: no fair partition within t cuts");
}

/// X(N) without producing a witness. For k = 2 the final level needs no
/// search: when every s < t fails, X = t by the deterministic bound.
inline int x_value(const Necklace& N, const SolverCaps& caps = {});

/// Reference solver: plain enumeration over cut sets and owner sequences,
/// any k. Guarded by a bead-count cap; minimal s, lexicographically smallest
/// cut vector, owner sequences with owners[0] = 0 in lexicographic order.
inline Witness min_cuts_exact(const Necklace& N, const SolverCaps& caps = {}) {
    const int n = N.n();
    const int cap = N.k == 2 ? caps.exact_n_two : caps.exact_n_general;
    if (n > cap)
        throw too_large_error("min_cuts_exact: n = " + std::to_string(n) + " exceeds cap " +
                              std::to_string(cap));
    auto pc = detail::prefix_counts(N);
    const std::int64_t quota_beads = static_cast<std::int64_t>(N.t) * N.m;

    std::vector<std::int32_t> cuts;
    std::vector<std::int32_t> owners;
    Witness result;
    bool done = false;

    auto fair_with_owners = [&](auto&& self, std::size_t j) -> bool {
        if (done) return true;
        if (j == cuts.size() + 1) {
            // all owners fixed; full per-type check
            std::vector<std::int32_t> cnt(static_cast<std::size_t>(N.k) * N.t, 0);
            std::vector<std::int64_t> sizes(static_cast<std::size_t>(N.k), 0);
            std::int32_t prev = 0;
            for (std::size_t i = 0; i < owners.size(); ++i) {
                std::int32_t end = i < cuts.size() ? cuts[i] : static_cast<std::int32_t>(n);
                sizes[static_cast<std::size_t>(owners[i])] += end - prev;
                for (int type = 0; type < N.t; ++type)
                    cnt[static_cast<std::size_t>(owners[i]) * N.t + static_cast<std::size_t>(type)] +=
                        pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(end)] -
                        pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(prev)];
                prev = end;
            }
            for (auto s : sizes)
                if (s != quota_beads) return false;
            for (auto c : cnt)
                if (c != N.m) return false;
            result = Witness{Partition{cuts, owners}, static_cast<int>(cuts.size())};
            done = true;
            return true;
        }
        for (std::int32_t who = 0; who < N.k; ++who) {
            if (j > 0 && owners[j - 1] == who) continue;
            if (j == 0 && who != 0) break; // fix the first owner; thieves are symmetric
            owners.push_back(who);
            if (self(self, j + 1)) return true;
            owners.pop_back();
        }
        return false;
    };

    auto choose_cuts = [&](auto&& self, int s, int from) -> void {
        if (done) return;
        if (static_cast<int>(cuts.size()) == s) {
            owners.clear();
            fair_with_owners(fair_with_owners, 0);
            return;
        }
        int remaining = s - static_cast<int>(cuts.size());
        for (std::int32_t c = from; c <= n - remaining && !done; ++c) {
            cuts.push_back(c);
            self(self, s, c + 1);
            cuts.pop_back();
        }
    };

    const int s_max = (N.k - 1) * N.t;
    for (int s = N.k - 1; s <= s_max; ++s) {
        cuts.clear();
        choose_cuts(choose_cuts, s, 1);
        if (done) return result;
    }
    throw std::logic_error("min_cuts_exact: no fair partition within (k-1)t cuts");
}

inline int x_value(const Necklace& N, const SolverCaps& caps) {
    if (N.k != 2) return min_cuts_exact(N, caps).cut_count;
    if (detail::halves_fair(N)) return 1;
    if (N.t <= 1) return 1;
    if (detail::first_fair_cyclic_shift(N) > 0) return 2;
    Partition first;
    for (int s = 3; s < N.t; ++s)
        if (detail::dfs_alternating(N, s, &first) > 0) return s;
    return N.t; // X <= t always; every s < t failed
}

/// Decision X(N) <= s for k = 2, without producing a witness. Cheap for the
/// s <= 2 levels that drive the Monte Carlo sweeps.
inline bool fair_within_two(const Necklace& N, int s) {
    if (N.k != 2) throw unsupported_error("fair_within_two requires k = 2");
    if (s <= 0) return false;
    if (s >= N.t) return true; // deterministic bound
    if (detail::halves_fair(N)) return true;
    if (s >= 2 && detail::first_fair_cyclic_shift(N) > 0) return true;
    Partition dummy;
    for (int j = 3; j <= s; ++j)
        if (detail::dfs_alternating(N, j, &dummy) > 0) return true;
    return false;
}

/// Decision form: a fair witness using at most s cuts, if one exists.
inline std::optional<Witness> exists_fair_with_cuts(const Necklace& N, int s,
                                                    const SolverCaps& caps = {}) {
    if (s < 0) throw std::invalid_argument("exists_fair_with_cuts: s must be >= 0");
    if (N.k == 2) {
        for (int j = 1; j <= std::min(s, N.t); ++j)
            if (auto P = detail::find_fair_two(N, j)) return Witness{*P, j};
        if (s >= N.t) {
            // unreachable by the deterministic bound, kept as a hard error
            throw std::logic_error("exists_fair_with_cuts: bound violated");
        }
        return std::nullopt;
    }
    Witness w = min_cuts_exact(N, caps);
    if (w.cut_count <= s) return w;
    return std::nullopt;
}

/// Number of fair partitions with canonical cut count exactly s (k = 2).
/// Owner-swapped labelings describe the same partition and count once.
inline std::int64_t count_fair_scut(const Necklace& N, int s,
                                    const SolverCaps& caps = {}) {
    if (N.k != 2) throw unsupported_error("count_fair_scut requires k = 2");
    if (s < 1) return 0;
    const int n = N.n();
    if (binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(s)) >
        BigInt::from_u64(caps.count_cap))
        throw too_large_error("count_fair_scut: cut-set space exceeds cap");
    if (s == 1) return detail::halves_fair(N) ? 1 : 0;
    if (s == 2) {
        const int tm = N.t * N.m;
        std::int64_t cnt = 0;
        std::vector<std::int32_t> w(static_cast<std::size_t>(N.t), 0);
        for (int i = 0; i < tm; ++i) ++w[static_cast<std::size_t>(N.beads[static_cast<std::size_t>(i)])];
        for (int a = 1; a < tm; ++a) {
            --w[static_cast<std::size_t>(N.beads[static_cast<std::size_t>(a - 1)])];
            ++w[static_cast<std::size_t>(N.beads[static_cast<std::size_t>(a - 1 + tm)])];
            bool fair = true;
            for (auto c : w)
                if (c != N.m) { fair = false; break; }
            if (fair) ++cnt;
        }
        return cnt;
    }
    return detail::dfs_alternating(N, s, nullptr);
}

} // namespace nsplit
