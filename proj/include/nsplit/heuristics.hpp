#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nsplit/errors.hpp"
#include "nsplit/necklace.hpp"

namespace nsplit {

/// C-uniform hypergraph over the t types; edges form a multiset.
struct Hypergraph {
    int vertex_count = 0;
    std::vector<std::vector<std::int32_t>> edges;
};

struct PhaseStats {
    std::int64_t cuts_intervals = 0;
    std::int64_t cuts_leftover = 0;
};

/// Fair partition built by a constructive heuristic. The phase counts are the
/// raw cuts made during construction; canonicalization can only merge, so
/// cuts_intervals + cuts_leftover >= cut_count.
struct FairSolution {
    Partition partition;
    int cut_count = 0;
    PhaseStats stats;
};

/// Incremental two-thief construction (k = 2, m = 1). Peels the last bead's
/// type pair, solves the smaller necklace, and reinserts: reuse an existing
/// cut when the partner bead sits at one; otherwise keep it when it lands in
/// the opposite thief's interval; otherwise cut once just before the final
/// bead. Adds at most one cut per type, so cut_count <= t.
inline FairSolution incremental_two_thief(const Necklace& N) {
    if (N.k != 2 || N.m != 1)
        throw unsupported_error("incremental_two_thief requires k = 2, m = 1");
    std::vector<std::int32_t> cur = N.beads;
    std::vector<std::int32_t> gaps; // partner gap index per peeled level
    while (cur.size() > 2) {
        const std::int32_t tau = cur.back();
        std::size_t j = 0;
        while (cur[j] != tau) ++j; // partner occurrence; j < cur.size()-1
        gaps.push_back(static_cast<std::int32_t>(j));
        cur.pop_back();
        cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(j));
    }
    std::vector<std::int32_t> owners{0, 1}; // base: one bead each
    std::int64_t added = 0;
    for (std::size_t level = gaps.size(); level-- > 0;) {
        const std::int32_t g = gaps[level];
        const std::int32_t last = owners.back();
        const std::int32_t other = 1 - last;
        const std::size_t size = owners.size();
        std::int32_t extra_owner;
        if (g == 0) {
            extra_owner = owners.front();
        } else if (static_cast<std::size_t>(g) == size) {
            extra_owner = last;
        } else if (owners[static_cast<std::size_t>(g) - 1] != owners[static_cast<std::size_t>(g)]) {
            extra_owner = other; // partner sits at a cut: append to either side
        } else {
            extra_owner = owners[static_cast<std::size_t>(g) - 1];
        }
        owners.insert(owners.begin() + g, extra_owner);
        if (extra_owner == other) {
            owners.push_back(last); // partner covers the new type for `other`
        } else {
            owners.push_back(other); // one fresh cut before the very last bead
            ++added;
        }
    }
    FairSolution sol;
    sol.partition = partition_from_owners(owners);
    sol.cut_count = sol.partition.cut_count();
    sol.stats.cuts_intervals = 1; // base cut of the two-bead necklace
    sol.stats.cuts_leftover = added;
    return sol;
}

struct IntervalHypergraph {
    Hypergraph graph;
    std::vector<std::int32_t> bad_intervals;  // indices of bad intervals
    std::vector<std::int32_t> edge_interval;  // edge id -> interval index
    int C = 0;
    int interval_count = 0;
};

/// Splits the necklace into consecutive length-C windows (m = 1). Windows with
/// all-distinct types become edges over the type vertices; windows with a
/// repeat, and a short trailing window, are reported as bad.
inline IntervalHypergraph build_interval_hypergraph(const Necklace& N, int C) {
    if (N.m != 1) throw unsupported_error("build_interval_hypergraph requires m = 1");
    if (C < 2) throw std::invalid_argument("build_interval_hypergraph: C must be >= 2");
    const int n = N.n();
    IntervalHypergraph out;
    out.C = C;
    out.interval_count = (n + C - 1) / C;
    out.graph.vertex_count = N.t;
    std::vector<std::int32_t> stamp(static_cast<std::size_t>(N.t), -1);
    for (int i = 0; i < out.interval_count; ++i) {
        const int lo = i * C, hi = std::min(n, lo + C);
        bool good = hi - lo == C;
        if (good) {
            for (int p = lo; p < hi; ++p) {
                auto& s = stamp[static_cast<std::size_t>(N.beads[static_cast<std::size_t>(p)])];
                if (s == i) {
                    good = false;
                    break;
                }
                s = i;
            }
        }
        if (!good) {
            out.bad_intervals.push_back(i);
            continue;
        }
        std::vector<std::int32_t> edge(N.beads.begin() + lo, N.beads.begin() + hi);
        std::sort(edge.begin(), edge.end());
        out.graph.edges.push_back(std::move(edge));
        out.edge_interval.push_back(i);
    }
    return out;
}

/// First-fit decomposition into matchings: each edge, in input order, joins
/// the first matching sharing none of its vertices. The union of the
/// matchings is the input edge multiset.
inline std::vector<std::vector<std::int32_t>> greedy_matchings(const Hypergraph& H) {
    std::vector<std::vector<std::int32_t>> matchings;
    // per-vertex occupancy bitmask over matchings
    std::vector<std::vector<std::uint64_t>> used(static_cast<std::size_t>(H.vertex_count));
    std::size_t words = 0;
    std::vector<std::uint64_t> mask;
    for (std::size_t e = 0; e < H.edges.size(); ++e) {
        mask.assign(words, 0);
        for (auto v : H.edges[e]) {
            const auto& bits = used[static_cast<std::size_t>(v)];
            for (std::size_t w = 0; w < bits.size(); ++w) mask[w] |= bits[w];
        }
        std::size_t slot = matchings.size();
        for (std::size_t w = 0; w < words; ++w) {
            if (mask[w] != ~std::uint64_t{0}) {
                std::size_t cand = w * 64 + static_cast<std::size_t>(std::countr_one(mask[w]));
                if (cand < matchings.size()) slot = cand;
                break;
            }
        }
        if (slot == matchings.size()) {
            matchings.emplace_back();
            words = (matchings.size() + 63) / 64;
        }
        matchings[slot].push_back(static_cast<std::int32_t>(e));
        for (auto v : H.edges[e]) {
            auto& bits = used[static_cast<std::size_t>(v)];
            if (bits.size() < words) bits.resize(words, 0);
            bits[slot / 64] |= std::uint64_t{1} << (slot % 64);
        }
    }
    return matchings;
}

/// Interval/matching construction (m = 1, any k >= 2): the k largest
/// matchings hand whole intervals to the k thieves; every remaining interval
/// is cut into single beads, each given to the lowest-index thief still
/// missing that type. Always fair by construction.
inline FairSolution interval_hypergraph_partition(const Necklace& N, int C) {
    if (N.k < 2) throw unsupported_error("interval_hypergraph_partition requires k >= 2");
    IntervalHypergraph ib = build_interval_hypergraph(N, C);
    auto matchings = greedy_matchings(ib.graph);

    std::vector<std::size_t> order(matchings.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return matchings[a].size() > matchings[b].size();
    });

    const int n = N.n(), k = N.k, t = N.t;
    std::vector<std::int32_t> owner(static_cast<std::size_t>(n), -1);
    std::vector<char> covered(static_cast<std::size_t>(k) * static_cast<std::size_t>(t), 0);
    std::vector<char> interval_taken(static_cast<std::size_t>(ib.interval_count), 0);
    const int top = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
    for (int thief = 0; thief < top; ++thief) {
        for (auto e : matchings[order[static_cast<std::size_t>(thief)]]) {
            const int iv = ib.edge_interval[static_cast<std::size_t>(e)];
            interval_taken[static_cast<std::size_t>(iv)] = 1;
            const int lo = iv * C, hi = std::min(n, lo + C);
            for (int p = lo; p < hi; ++p) {
                owner[static_cast<std::size_t>(p)] = thief;
                covered[static_cast<std::size_t>(thief) * t +
                        static_cast<std::size_t>(N.beads[static_cast<std::size_t>(p)])] = 1;
            }
        }
    }

    // leftovers: lowest-index thief still missing the bead's type
    std::vector<std::vector<std::int32_t>> missing(static_cast<std::size_t>(t));
    for (int type = 0; type < t; ++type)
        for (int thief = 0; thief < k; ++thief)
            if (!covered[static_cast<std::size_t>(thief) * t + static_cast<std::size_t>(type)])
                missing[static_cast<std::size_t>(type)].push_back(thief);
    std::vector<std::size_t> next(static_cast<std::size_t>(t), 0);
    std::int64_t leftover_cuts = 0;
    for (int iv = 0; iv < ib.interval_count; ++iv) {
        if (interval_taken[static_cast<std::size_t>(iv)]) continue;
        const int lo = iv * C, hi = std::min(n, lo + C);
        leftover_cuts += hi - lo - 1; // cut loose into single beads
        for (int p = lo; p < hi; ++p) {
            auto type = static_cast<std::size_t>(N.beads[static_cast<std::size_t>(p)]);
            owner[static_cast<std::size_t>(p)] = missing[type][next[type]++];
        }
    }

    FairSolution sol;
    sol.partition = partition_from_owners(owner);
    sol.cut_count = sol.partition.cut_count();
    sol.stats.cuts_intervals = ib.interval_count - 1;
    sol.stats.cuts_leftover = leftover_cuts;
    return sol;
}

} // namespace nsplit
