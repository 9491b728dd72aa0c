#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nsplit/bigint.hpp"
#include "nsplit/errors.hpp"
#include "nsplit/rng.hpp"

namespace nsplit {

/// Open necklace with k*m beads of each of t types, n = k*t*m beads total.
/// Beads are 1-indexed in the cut convention below; storage is 0-indexed.
struct Necklace {
    int k = 1, t = 1, m = 1;
    std::vector<std::int32_t> beads;

    int n() const { return static_cast<int>(beads.size()); }
};

/// Cuts are between-bead positions in (0, n): a cut at p separates beads p
/// and p+1. owners[j] is the thief receiving interval j; adjacent owners are
/// distinct in canonical (minimal) form.
struct Partition {
    std::vector<std::int32_t> cuts;
    std::vector<std::int32_t> owners;

    int cut_count() const { return static_cast<int>(cuts.size()); }
    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Per-type prefix counts for types 0..t-2 (the last type is determined by
/// the prefix length and the others).
struct CountingVector {
    std::vector<std::int32_t> counts;
    friend bool operator==(const CountingVector&, const CountingVector&) = default;
};

inline void validate(const Necklace& N) {
    if (N.k < 1 || N.t < 1 || N.m < 1)
        throw std::invalid_argument("necklace: k, t, m must all be >= 1");
    const std::int64_t n = static_cast<std::int64_t>(N.k) * N.t * N.m;
    if (static_cast<std::int64_t>(N.beads.size()) != n)
        throw std::invalid_argument("necklace: bead count must equal k*t*m");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(N.t), 0);
    for (auto b : N.beads) {
        if (b < 0 || b >= N.t) throw std::invalid_argument("necklace: bead type out of range");
        ++counts[static_cast<std::size_t>(b)];
    }
    for (auto c : counts)
        if (c != static_cast<std::int64_t>(N.k) * N.m)
            throw std::invalid_argument("necklace: each type must appear exactly k*m times");
}

inline Necklace make_necklace(int k, int t, int m, std::vector<std::int32_t> beads) {
    Necklace N{k, t, m, std::move(beads)};
    validate(N);
    return N;
}

/// Builds a necklace from a bead list, inferring t and m for the given k.
inline Necklace necklace_from_beads(int k, std::vector<std::int32_t> beads) {
    if (k < 1) throw std::invalid_argument("necklace: k must be >= 1");
    if (beads.empty()) throw std::invalid_argument("necklace: empty bead list");
    std::int32_t t = 1 + *std::max_element(beads.begin(), beads.end());
    std::vector<std::int64_t> counts(static_cast<std::size_t>(t), 0);
    for (auto b : beads) {
        if (b < 0) throw std::invalid_argument("necklace: negative bead type");
        ++counts[static_cast<std::size_t>(b)];
    }
    std::int64_t per = counts[0];
    for (auto c : counts)
        if (c != per) throw std::invalid_argument("necklace: unequal type multiplicities");
    if (per % k != 0) throw std::invalid_argument("necklace: type multiplicity not divisible by k");
    return make_necklace(k, t, static_cast<int>(per / k), std::move(beads));
}

/// Necklace with each type's beads contiguous: 0...0 1...1 ... (t-1)...
inline Necklace sorted_necklace(int k, int t, int m) {
    std::vector<std::int32_t> beads;
    beads.reserve(static_cast<std::size_t>(k) * t * m);
    for (std::int32_t type = 0; type < t; ++type)
        beads.insert(beads.end(), static_cast<std::size_t>(k) * m, type);
    return make_necklace(k, t, m, std::move(beads));
}

/// Number of distinct arrangements, (ktm)! / ((km)!)^t.
inline BigInt arrangement_count(int k, int t, int m) {
    if (k < 1 || t < 1 || m < 1) throw std::invalid_argument("arrangement_count: parameters must be >= 1");
    BigInt num = factorial(static_cast<unsigned>(k) * t * m);
    BigInt den = BigInt::pow(factorial(static_cast<unsigned>(k) * m), static_cast<unsigned>(t));
    return num / den;
}

/// Uniform sample over all arrangements; in-place shuffle of the fixed
/// multiset, so the distribution is exact. Deterministic given (seed, stream).
inline Necklace generate_uniform(int k, int t, int m, RngSeed rs) {
    Necklace N = sorted_necklace(k, t, m);
    Rng rng(rs);
    rng.shuffle(N.beads);
    return N;
}

/// Visits every distinct arrangement exactly once, in lexicographic order.
inline void for_each_necklace(int k, int t, int m,
                              const std::function<void(const Necklace&)>& fn,
                              std::uint64_t cap = 1000000) {
    BigInt count = arrangement_count(k, t, m);
    if (count > BigInt::from_u64(cap))
        throw too_large_error("enumerate: " + count.to_string() + " arrangements exceeds cap " +
                              std::to_string(cap));
    Necklace N = sorted_necklace(k, t, m);
    do {
        fn(N);
    } while (std::next_permutation(N.beads.begin(), N.beads.end()));
}

inline std::vector<Necklace> enumerate_all(int k, int t, int m, std::uint64_t cap = 1000000) {
    std::vector<Necklace> out;
    for_each_necklace(k, t, m, [&](const Necklace& N) { out.push_back(N); }, cap);
    return out;
}

/// counts[j] = number of beads of type j among the first p beads, j < t-1.
inline CountingVector counting_vector(const Necklace& N, int p) {
    if (p < 0 || p > N.n()) throw std::invalid_argument("counting_vector: prefix length out of range");
    CountingVector cv;
    cv.counts.assign(static_cast<std::size_t>(N.t > 0 ? N.t - 1 : 0), 0);
    for (int i = 0; i < p; ++i) {
        auto b = N.beads[static_cast<std::size_t>(i)];
        if (b < N.t - 1) ++cv.counts[static_cast<std::size_t>(b)];
    }
    return cv;
}

inline void validate_partition(const Necklace& N, const Partition& P) {
    const int n = N.n();
    if (P.owners.size() != P.cuts.size() + 1)
        throw std::invalid_argument("partition: owners must have |cuts|+1 entries");
    std::int32_t prev = 0;
    for (auto c : P.cuts) {
        if (c <= prev || c >= n) throw std::invalid_argument("partition: cuts must be strictly increasing in (0, n)");
        prev = c;
    }
    for (std::size_t j = 0; j < P.owners.size(); ++j) {
        if (P.owners[j] < 0 || P.owners[j] >= N.k)
            throw std::invalid_argument("partition: owner out of range");
        if (j > 0 && P.owners[j] == P.owners[j - 1])
            throw std::invalid_argument("partition: adjacent intervals share an owner");
    }
}

/// owner of each bead (0-indexed bead positions).
inline std::vector<std::int32_t> owner_per_bead(const Partition& P, int n) {
    std::vector<std::int32_t> owners(static_cast<std::size_t>(n));
    int interval = 0;
    for (int i = 0; i < n; ++i) {
        while (interval < P.cut_count() && i >= P.cuts[static_cast<std::size_t>(interval)]) ++interval;
        owners[static_cast<std::size_t>(i)] = P.owners[static_cast<std::size_t>(interval)];
    }
    return owners;
}

/// Canonical partition induced by a bead->owner map: cuts exactly at owner
/// changes, so the cut count is minimal for the map.
inline Partition partition_from_owners(const std::vector<std::int32_t>& bead_owner) {
    Partition P;
    if (bead_owner.empty()) throw std::invalid_argument("partition_from_owners: empty map");
    P.owners.push_back(bead_owner[0]);
    for (std::size_t i = 1; i < bead_owner.size(); ++i) {
        if (bead_owner[i] != bead_owner[i - 1]) {
            P.cuts.push_back(static_cast<std::int32_t>(i));
            P.owners.push_back(bead_owner[i]);
        }
    }
    return P;
}

/// Per-thief bead totals.
inline std::vector<std::int64_t> part_sizes(const Partition& P, int n, int k) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    std::int32_t prev = 0;
    for (std::size_t j = 0; j < P.owners.size(); ++j) {
        std::int32_t end = j < P.cuts.size() ? P.cuts[j] : static_cast<std::int32_t>(n);
        sizes[static_cast<std::size_t>(P.owners[j])] += end - prev;
        prev = end;
    }
    return sizes;
}

inline bool is_balanced(const Necklace& N, const Partition& P) {
    auto sizes = part_sizes(P, N.n(), N.k);
    const std::int64_t quota = static_cast<std::int64_t>(N.t) * N.m;
    return std::all_of(sizes.begin(), sizes.end(), [&](std::int64_t s) { return s == quota; });
}

/// True iff every thief receives exactly m beads of each type.
inline bool is_fair(const Necklace& N, const Partition& P) {
    validate_partition(N, P);
    std::vector<std::int32_t> cnt(static_cast<std::size_t>(N.k) * N.t, 0);
    std::int32_t prev = 0;
    for (std::size_t j = 0; j < P.owners.size(); ++j) {
        std::int32_t end = j < P.cuts.size() ? P.cuts[j] : static_cast<std::int32_t>(N.n());
        auto base = static_cast<std::size_t>(P.owners[j]) * N.t;
        for (std::int32_t i = prev; i < end; ++i)
            ++cnt[base + static_cast<std::size_t>(N.beads[static_cast<std::size_t>(i)])];
        prev = end;
    }
    return std::all_of(cnt.begin(), cnt.end(), [&](std::int32_t c) { return c == N.m; });
}

/// k=2 fairness via the counting-vector route: balance plus a vanishing
/// alternating sum of prefix-count differences over the first t-1 types.
inline bool is_fair_counting_vector(const Necklace& N, const Partition& P) {
    validate_partition(N, P);
    if (N.k != 2) throw unsupported_error("counting-vector fairness requires k = 2");
    if (!is_balanced(N, P)) return false;
    std::vector<std::int64_t> acc(static_cast<std::size_t>(N.t - 1), 0);
    std::vector<std::int32_t> prefix(static_cast<std::size_t>(N.t - 1), 0);
    std::int32_t pos = 0;
    int interval = 0;
    std::vector<std::int32_t> at_start = prefix;
    auto flush = [&](int sign) {
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += sign * (prefix[j] - at_start[j]);
    };
    for (; interval <= P.cut_count(); ++interval) {
        std::int32_t end = interval < P.cut_count() ? P.cuts[static_cast<std::size_t>(interval)]
                                                    : static_cast<std::int32_t>(N.n());
        at_start = prefix;
        for (; pos < end; ++pos) {
            auto b = N.beads[static_cast<std::size_t>(pos)];
            if (b < N.t - 1) ++prefix[static_cast<std::size_t>(b)];
        }
        flush(P.owners[static_cast<std::size_t>(interval)] == P.owners[0] ? 1 : -1);
    }
    return std::all_of(acc.begin(), acc.end(), [](std::int64_t v) { return v == 0; });
}

/// Minimal form: drops empty intervals (repeated cut positions, or a cut at
/// 0) and merges same-owner neighbours. Accepts non-decreasing cuts.
inline Partition canonicalize(const Partition& P) {
    if (P.owners.size() != P.cuts.size() + 1)
        throw std::invalid_argument("canonicalize: owners must have |cuts|+1 entries");
    for (std::size_t i = 1; i < P.cuts.size(); ++i)
        if (P.cuts[i] < P.cuts[i - 1])
            throw std::invalid_argument("canonicalize: cuts must be non-decreasing");
    // (start, owner) for each non-empty interval
    std::vector<std::pair<std::int32_t, std::int32_t>> intervals;
    std::int32_t prev = 0;
    for (std::size_t j = 0; j < P.owners.size(); ++j) {
        std::int32_t end = j < P.cuts.size() ? P.cuts[j] : -1; // -1: open-ended last interval
        if (end == -1 || end > prev)
            intervals.emplace_back(prev, P.owners[j]);
        if (end != -1) prev = end;
    }
    Partition out;
    for (const auto& [start, owner] : intervals) {
        if (!out.owners.empty() && out.owners.back() == owner) continue;
        if (!out.owners.empty()) out.cuts.push_back(start);
        out.owners.push_back(owner);
    }
    return out;
}

/// Distance of two balanced bipartitions (k = 2): the smaller of the two
/// part-pairing set differences; 0 <= q <= tm/2.
inline int partition_distance(const Partition& P1, const Partition& P2, int n) {
    auto check_two = [](const Partition& P) {
        for (auto o : P.owners)
            if (o != 0 && o != 1) throw unsupported_error("partition_distance requires k = 2");
    };
    check_two(P1);
    check_two(P2);
    auto o1 = owner_per_bead(P1, n);
    auto o2 = owner_per_bead(P2, n);
    auto half = [&](const std::vector<std::int32_t>& o) {
        return std::count(o.begin(), o.end(), 0) * 2 == n;
    };
    if (!half(o1) || !half(o2))
        throw std::invalid_argument("partition_distance: partitions must be balanced");
    int diff = 0, same = 0;
    for (int i = 0; i < n; ++i) {
        if (o1[static_cast<std::size_t>(i)] == 0) {
            if (o2[static_cast<std::size_t>(i)] == 0) ++same;
            else ++diff;
        }
    }
    return std::min(diff, same);
}

/// The one-cut partition into first and second halves (k = 2).
inline Partition halves_partition(const Necklace& N) {
    if (N.k != 2) throw unsupported_error("halves_partition requires k = 2");
    return Partition{{static_cast<std::int32_t>(N.t * N.m)}, {0, 1}};
}

} // namespace nsplit
