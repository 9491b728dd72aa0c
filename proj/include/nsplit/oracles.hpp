#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

#include "nsplit/bigint.hpp"

namespace nsplit {

/// P(k,t,m): exact probability that a fixed balanced partition of a uniform
/// necklace is fair, ((mt)!)^k ((mk)!)^t / ((m!)^{tk} (ktm)!).
inline Rational fair_probability_exact(int k, int t, int m) {
    if (k < 1 || t < 1 || m < 1)
        throw std::invalid_argument("fair_probability_exact: parameters must be >= 1");
    const unsigned uk = static_cast<unsigned>(k), ut = static_cast<unsigned>(t),
                   um = static_cast<unsigned>(m);
    BigInt num = BigInt::pow(factorial(um * ut), uk) * BigInt::pow(factorial(um * uk), ut);
    BigInt den = BigInt::pow(factorial(um), ut * uk) * factorial(uk * ut * um);
    return Rational(num, den);
}

/// Stirling limit of P(k,t,m) without the (1+o(1)) correction:
/// t^{(k-1)/2} k^{(t-1)/2} / (2 pi m)^{(k-1)(t-1)/2}.
inline double fair_probability_asymptotic(int k, int t, int m) {
    if (k < 1 || t < 1 || m < 1)
        throw std::invalid_argument("fair_probability_asymptotic: parameters must be >= 1");
    const double e = (k - 1) * (t - 1) / 2.0;
    return std::pow(t, (k - 1) / 2.0) * std::pow(k, (t - 1) / 2.0) /
           std::pow(2.0 * std::numbers::pi * m, e);
}

/// n'(s,t,m): exact number of s-cut partitions for two thieves,
/// C(tm-1, ceil((s-1)/2)) * C(tm-1, floor((s-1)/2)).
inline BigInt s_cut_partition_count(int t, int m, int s) {
    if (s < 1 || t < 1 || m < 1)
        throw std::invalid_argument("s_cut_partition_count: need s >= 1 and t, m >= 1");
    const unsigned tm1 = static_cast<unsigned>(t) * static_cast<unsigned>(m) - 1;
    return binomial(tm1, static_cast<unsigned>(s) / 2) *
           binomial(tm1, static_cast<unsigned>(s - 1) / 2);
}

/// Upper bound k^{s+1} (tm)^{s+1-k} on the number of balanced partitions
/// reachable with s cuts.
inline BigInt balanced_partition_count_bound(int s, int k, int t, int m) {
    if (s + 1 < k) throw std::invalid_argument("balanced_partition_count_bound: need s+1 >= k");
    return BigInt::pow(BigInt(k), static_cast<unsigned>(s + 1)) *
           BigInt::pow(BigInt(static_cast<std::int64_t>(t) * m), static_cast<unsigned>(s + 1 - k));
}

/// E(Y) = n'(s,t,m) * P(2,t,m), the expected number of fair s-cut partitions.
inline Rational expected_fair_scut(int t, int m, int s) {
    return Rational(s_cut_partition_count(t, m, s), BigInt(1)) * fair_probability_exact(2, t, m);
}

/// Multivariate hypergeometric point mass: probability that a uniform q-subset
/// of an m-per-type pool has composition (q_1..q_t). Equals
/// prod C(m,q_i) / C(mt,q).
inline Rational composition_probability(int t, int m, int q, std::span<const int> comp) {
    if (t < 1 || m < 1) throw std::invalid_argument("composition_probability: t, m must be >= 1");
    if (static_cast<int>(comp.size()) != t)
        throw std::invalid_argument("composition_probability: need exactly t parts");
    if (q < 0 || q > t * m) throw std::invalid_argument("composition_probability: q out of range");
    long long sum = 0;
    BigInt num(1);
    for (int qi : comp) {
        if (qi < 0 || qi > m) throw std::invalid_argument("composition_probability: part out of range");
        sum += qi;
        num *= binomial(static_cast<unsigned>(m), static_cast<unsigned>(qi));
    }
    if (sum != q) throw std::invalid_argument("composition_probability: parts must sum to q");
    return Rational(num, binomial(static_cast<unsigned>(t) * static_cast<unsigned>(m),
                                  static_cast<unsigned>(q)));
}

/// Probability that two independent q-subsets of the m-per-type pool have the
/// same composition: the sum of squared point masses, exactly.
inline Rational collision_probability(int t, int m, int q) {
    if (t < 1 || m < 1) throw std::invalid_argument("collision_probability: t, m must be >= 1");
    if (q < 0 || q > t * m) throw std::invalid_argument("collision_probability: q out of range");
    // common denominator C(tm,q)^2; numerators enumerated lexicographically
    BigInt numerator(0);
    std::vector<int> comp(static_cast<std::size_t>(t), 0);
    auto rec = [&](auto&& self, int idx, int remaining, const BigInt& partial) -> void {
        if (idx == t - 1) {
            if (remaining > m) return;
            BigInt w = partial * binomial(static_cast<unsigned>(m), static_cast<unsigned>(remaining));
            numerator += w * w;
            return;
        }
        for (int qi = 0; qi <= std::min(m, remaining); ++qi)
            self(self, idx + 1, remaining - qi,
                 partial * binomial(static_cast<unsigned>(m), static_cast<unsigned>(qi)));
    };
    rec(rec, 0, q, BigInt(1));
    BigInt den = binomial(static_cast<unsigned>(t) * static_cast<unsigned>(m), static_cast<unsigned>(q));
    return Rational(numerator, den * den);
}

/// Exact joint probability that two balanced bipartitions at distance q are
/// both fair: P(2,t,m) times the hypergeometric collision probability.
inline Rational pair_fair_probability(int t, int m, int q) {
    if (q < 1 || 2 * q > t * m)
        throw std::invalid_argument("pair_fair_probability: need 1 <= q <= tm/2");
    return fair_probability_exact(2, t, m) * collision_probability(t, m, q);
}

/// Binary entropy H(x) = -x log2 x - (1-x) log2 (1-x).
inline double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: x must lie in [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Inverse of H on [0, 1/2], by bisection to 1e-12.
inline double inverse_binary_entropy(double y) {
    if (y < 0.0 || y > 1.0) throw std::invalid_argument("inverse_binary_entropy: y must lie in [0,1]");
    double lo = 0.0, hi = 0.5;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (binary_entropy(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// 2 H^{-1}(1/2) = 0.2200..., the lower-bound slope for X(2,t,1)/t.
inline double entropy_threshold() { return 2.0 * inverse_binary_entropy(0.5); }

/// P(2,t,1) in closed form, (t!)^2 2^t / (2t)!.
inline Rational m1_fair_probability(int t) {
    if (t < 1) throw std::invalid_argument("m1_fair_probability: t must be >= 1");
    const unsigned ut = static_cast<unsigned>(t);
    BigInt num = BigInt::pow(factorial(ut), 2) * BigInt::pow(BigInt(2), ut);
    return Rational(num, factorial(2 * ut));
}

} // namespace nsplit
