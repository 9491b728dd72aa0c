#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nsplit/errors.hpp"
#include "nsplit/necklace.hpp"
#include "nsplit/parallel.hpp"
#include "nsplit/rng.hpp"
#include "nsplit/solver.hpp"
#include "nsplit/stats.hpp"

namespace nsplit {

/// Uniform finite-support step distribution on Z^{t-1}. `coupling(t)` is the
/// distribution with support {t e_j - (1,..,1)} u {-(1,..,1)}, one vector per
/// type, each with weight 1/t; it is exactly centered. `difference(t)` is the
/// walk of bead-indicator differences (t^2 equally likely entries, zero
/// included), which is the memoryless model of the shifted-partition walk.
struct StepDistribution {
    int t = 2;
    std::vector<std::vector<std::int32_t>> support; // uniform over entries

    int dim() const { return t - 1; }

    static StepDistribution coupling(int t) {
        if (t < 2) throw std::invalid_argument("StepDistribution: t must be >= 2");
        StepDistribution d;
        d.t = t;
        for (int j = 0; j < t - 1; ++j) {
            std::vector<std::int32_t> v(static_cast<std::size_t>(t - 1), -1);
            v[static_cast<std::size_t>(j)] += t;
            d.support.push_back(std::move(v));
        }
        d.support.emplace_back(static_cast<std::size_t>(t - 1), -1);
        return d;
    }

    static StepDistribution difference(int t) {
        if (t < 2) throw std::invalid_argument("StepDistribution: t must be >= 2");
        StepDistribution d;
        d.t = t;
        auto indicator = [&](int type) {
            std::vector<std::int32_t> v(static_cast<std::size_t>(t - 1), 0);
            if (type < t - 1) v[static_cast<std::size_t>(type)] = 1;
            return v;
        };
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b) {
                auto va = indicator(a), vb = indicator(b);
                for (std::size_t i = 0; i < va.size(); ++i) va[i] -= vb[i];
                d.support.push_back(std::move(va));
            }
        return d;
    }

    /// Exact step mean times |support|; all-zero iff centered.
    std::vector<std::int64_t> mean_numerator() const {
        std::vector<std::int64_t> sum(static_cast<std::size_t>(dim()), 0);
        for (const auto& v : support)
            for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
        return sum;
    }
};

/// Two-sided path anchored at the origin: positions for every integer time in
/// [lo, hi], consecutive increments drawn from a step distribution.
struct WalkPath {
    int dim = 0;
    int lo = 0, hi = 0;
    std::vector<std::vector<std::int32_t>> positions; // index: time - lo

    const std::vector<std::int32_t>& at(int time) const {
        if (time < lo || time > hi) throw std::invalid_argument("WalkPath: time out of range");
        return positions[static_cast<std::size_t>(time - lo)];
    }
};

/// 2L iid steps around W(0) = 0; forward and backward increments share the
/// step distribution.
inline WalkPath sample_walk(const StepDistribution& dist, int L, RngSeed rs) {
    if (L < 1) throw std::invalid_argument("sample_walk: L must be >= 1");
    Rng rng(rs);
    WalkPath path;
    path.dim = dist.dim();
    path.lo = -L;
    path.hi = L;
    path.positions.assign(static_cast<std::size_t>(2 * L + 1),
                          std::vector<std::int32_t>(static_cast<std::size_t>(path.dim), 0));
    auto& pos = path.positions;
    const std::size_t origin = static_cast<std::size_t>(L);
    for (int i = 1; i <= L; ++i) {
        const auto& step = dist.support[rng.below(dist.support.size())];
        pos[origin + static_cast<std::size_t>(i)] = pos[origin + static_cast<std::size_t>(i) - 1];
        auto& p = pos[origin + static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < p.size(); ++j) p[j] += step[j];
    }
    for (int i = 1; i <= L; ++i) {
        // W(-i) = W(-i+1) - increment
        const auto& step = dist.support[rng.below(dist.support.size())];
        pos[origin - static_cast<std::size_t>(i)] = pos[origin - static_cast<std::size_t>(i) + 1];
        auto& p = pos[origin - static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < p.size(); ++j) p[j] -= step[j];
    }
    return path;
}

/// Difference walk of a k=2 necklace: position(i) = U(i) - (U(tm+i) - U(tm))
/// over types 0..t-2, for 0 <= i <= window. The shifted cyclic partition P_i
/// (one part = beads i+1..i+tm) is fair iff position(i) equals the half-split
/// deviation U(tm) - (m,..,m); in particular, conditioned on the half split
/// being fair, P_i is fair exactly when position(i) = 0.
inline WalkPath difference_walk(const Necklace& N, int window) {
    if (N.k != 2) throw unsupported_error("difference_walk requires k = 2");
    const int tm = N.t * N.m;
    if (window < 0 || window > tm)
        throw std::invalid_argument("difference_walk: window must lie in [0, tm]");
    WalkPath path;
    path.dim = N.t - 1;
    path.lo = 0;
    path.hi = window;
    path.positions.assign(static_cast<std::size_t>(window + 1),
                          std::vector<std::int32_t>(static_cast<std::size_t>(path.dim), 0));
    for (int i = 1; i <= window; ++i) {
        auto& p = path.positions[static_cast<std::size_t>(i)];
        p = path.positions[static_cast<std::size_t>(i - 1)];
        auto front = N.beads[static_cast<std::size_t>(i - 1)];        // bead i
        auto back = N.beads[static_cast<std::size_t>(tm + i - 1)];    // bead tm+i
        if (front < N.t - 1) ++p[static_cast<std::size_t>(front)];
        if (back < N.t - 1) --p[static_cast<std::size_t>(back)];
    }
    return path;
}

namespace detail {

inline void check_grid(std::span<const int> grid) {
    if (grid.empty()) throw std::invalid_argument("walks: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1]))
            throw std::invalid_argument("walks: grid must be positive and strictly increasing");
    }
}

} // namespace detail

/// Monte Carlo for the s-walk non-return event of the coupled model: no
/// k in A_N = {sum k_j = 0, k lexicographically positive, |k_j| <= N} solves
/// sum_j W_j(k_j) = 0. The walks live on Z^{2s-2} with the coupling steps of
/// t = 2s-1 types. One row per grid N; rows share trials, so the estimates
/// are exactly nested.
inline std::vector<CiRow> nonreturn_probability(int s, std::span<const int> N_grid,
                                                std::int64_t trials, RngSeed rs,
                                                int threads = 1) {
    if (s < 2) throw std::invalid_argument("nonreturn_probability: s must be >= 2");
    detail::check_grid(N_grid);
    if (trials < 1) throw std::invalid_argument("nonreturn_probability: trials must be >= 1");
    const int maxN = N_grid.back();
    if (s > 3 || (s == 3 && maxN > 2048))
        throw too_large_error("nonreturn_probability: A_N enumeration too large for s = " +
                              std::to_string(s) + ", N = " + std::to_string(maxN));
    const int t = 2 * s - 1;
    const StepDistribution dist = StepDistribution::coupling(t);
    const int d = dist.dim();

    // per trial: the smallest N at which a solution exists (or maxN+1)
    auto first_hit = [&](std::int64_t trial) -> int {
        Rng rng(RngSeed{rs.seed, rs.stream + static_cast<std::uint64_t>(trial)});
        if (s == 2) {
            std::vector<std::int32_t> w1(static_cast<std::size_t>(d), 0), w2(w1);
            for (int i = 1; i <= maxN; ++i) {
                const auto& f = dist.support[rng.below(dist.support.size())];
                const auto& b = dist.support[rng.below(dist.support.size())];
                bool zero = true;
                for (int j = 0; j < d; ++j) {
                    auto uj = static_cast<std::size_t>(j);
                    w1[uj] += f[uj];
                    w2[uj] -= b[uj]; // W2(-i) accumulates negated increments
                    if (w1[uj] + w2[uj] != 0) zero = false;
                }
                if (zero) return i;
            }
            return maxN + 1;
        }
        // s == 3: full trajectories, then scan A_N with max-norm pruning
        std::vector<WalkPath> walks;
        for (int j = 0; j < s; ++j)
            walks.push_back(sample_walk(
                dist, maxN,
                RngSeed{rs.seed ^ (0xA5A5A5A5A5A5A5A5ULL * static_cast<std::uint64_t>(j + 1)),
                        rs.stream + static_cast<std::uint64_t>(trial)}));
        int best = maxN + 1;
        for (int k1 = 0; k1 < best; ++k1) {
            int k2lo = (k1 == 0) ? 1 : -maxN;
            for (int k2 = k2lo; k2 <= maxN; ++k2) {
                if (std::abs(k2) >= best) continue;
                int k3 = -k1 - k2;
                if (std::abs(k3) > maxN || std::abs(k3) >= best) continue;
                bool zero = true;
                const auto& p1 = walks[0].at(k1);
                const auto& p2 = walks[1].at(k2);
                const auto& p3 = walks[2].at(k3);
                for (int j = 0; j < d && zero; ++j) {
                    auto uj = static_cast<std::size_t>(j);
                    if (p1[uj] + p2[uj] + p3[uj] != 0) zero = false;
                }
                if (zero) best = std::max({k1, std::abs(k2), std::abs(k3)});
            }
        }
        return best;
    };

    std::vector<std::int64_t> counts = parallel_trials(
        trials, threads, std::vector<std::int64_t>(N_grid.size(), 0),
        [&](std::int64_t i, std::vector<std::int64_t>& acc) {
            int hit = first_hit(i);
            for (std::size_t g = 0; g < N_grid.size(); ++g)
                if (hit > N_grid[g]) ++acc[g];
        },
        [](std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        });

    std::vector<CiRow> rows;
    for (std::size_t g = 0; g < N_grid.size(); ++g)
        rows.push_back(count_row(N_grid[g], counts[g], trials));
    return rows;
}

/// Q'(steps) of the memoryless difference walk: probability of no return to
/// the origin within the first `steps` steps. Rows share trials across the
/// grid, so monotonicity in steps is exact.
inline std::vector<CiRow> single_nonreturn_grid(int t, std::span<const int> steps_grid,
                                                std::int64_t trials, RngSeed rs,
                                                int threads = 1) {
    if (t < 2) throw std::invalid_argument("single_nonreturn: t must be >= 2");
    detail::check_grid(steps_grid);
    if (trials < 1) throw std::invalid_argument("single_nonreturn: trials must be >= 1");
    const int max_steps = steps_grid.back();

    auto first_return = [&](std::int64_t trial) -> int {
        Rng rng(RngSeed{rs.seed, rs.stream + static_cast<std::uint64_t>(trial)});
        std::vector<std::int32_t> pos(static_cast<std::size_t>(t - 1), 0);
        int nonzero = 0;
        auto bump = [&](int type, int delta) {
            if (type >= t - 1) return;
            auto& c = pos[static_cast<std::size_t>(type)];
            if (c == 0) ++nonzero;
            c += delta;
            if (c == 0) --nonzero;
        };
        for (int i = 1; i <= max_steps; ++i) {
            bump(rng.below_int(t), +1);
            bump(rng.below_int(t), -1);
            if (nonzero == 0) return i;
        }
        return max_steps + 1;
    };

    std::vector<std::int64_t> counts = parallel_trials(
        trials, threads, std::vector<std::int64_t>(steps_grid.size(), 0),
        [&](std::int64_t i, std::vector<std::int64_t>& acc) {
            int ret = first_return(i);
            for (std::size_t g = 0; g < steps_grid.size(); ++g)
                if (ret > steps_grid[g]) ++acc[g];
        },
        [](std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        });

    std::vector<CiRow> rows;
    for (std::size_t g = 0; g < steps_grid.size(); ++g)
        rows.push_back(count_row(steps_grid[g], counts[g], trials));
    return rows;
}

inline CiRow single_nonreturn(int t, int steps, std::int64_t trials, RngSeed rs, int threads = 1) {
    std::array<int, 1> grid{steps};
    return single_nonreturn_grid(t, grid, trials, rs, threads).front();
}

/// Conditioned model of the shifted-partition walk: necklaces are rejection
/// sampled until the half split is fair, then Q(steps) = P(no fair shift
/// P_i, 1 <= i <= steps) is estimated directly on the necklace differences.
inline CiRow conditioned_nonreturn(int t, int m, int steps, std::int64_t trials, RngSeed rs,
                                   int threads = 1) {
    if (t < 2 || m < 1) throw std::invalid_argument("conditioned_nonreturn: need t >= 2, m >= 1");
    const int tm = t * m;
    if (steps < 1 || steps > tm)
        throw std::invalid_argument("conditioned_nonreturn: steps must lie in [1, tm]");
    if (trials < 1) throw std::invalid_argument("conditioned_nonreturn: trials must be >= 1");

    auto survives = [&](std::int64_t trial) -> bool {
        Rng rng(RngSeed{rs.seed, rs.stream + static_cast<std::uint64_t>(trial)});
        Necklace N = sorted_necklace(2, t, m);
        do {
            rng.shuffle(N.beads);
        } while (!detail::halves_fair(N));
        std::vector<std::int32_t> pos(static_cast<std::size_t>(t - 1), 0);
        int nonzero = 0;
        auto bump = [&](std::int32_t type, int delta) {
            if (type >= t - 1) return;
            auto& c = pos[static_cast<std::size_t>(type)];
            if (c == 0) ++nonzero;
            c += delta;
            if (c == 0) --nonzero;
        };
        for (int i = 1; i <= steps; ++i) {
            bump(N.beads[static_cast<std::size_t>(i - 1)], +1);
            bump(N.beads[static_cast<std::size_t>(tm + i - 1)], -1);
            if (nonzero == 0) return false;
        }
        return true;
    };

    std::int64_t count = parallel_trials(
        trials, threads, std::int64_t{0},
        [&](std::int64_t i, std::int64_t& acc) { acc += survives(i) ? 1 : 0; },
        [](std::int64_t& a, const std::int64_t& b) { a += b; });
    return count_row(steps, count, trials);
}

/// Minimum number of elementary foldings sending the bead-step walk back to
/// the origin; equals the minimum cut count by the cut <-> folding bijection.
inline int fold_min(const Necklace& N) {
    if (N.k != 2) throw unsupported_error("fold_min requires k = 2");
    return min_cuts_two(N).cut_count;
}

/// Direct search over folding sets (independent of the solver) for small n:
/// fold positions j flip all steps from j on; a set is a solution when every
/// type's signed sum vanishes. Returns the minimum set size.
inline int fold_min_direct(const Necklace& N, std::uint64_t cap = 1000000) {
    if (N.k != 2) throw unsupported_error("fold_min_direct requires k = 2");
    const int n = N.n();
    auto pc = detail::prefix_counts(N);
    std::uint64_t budget = 0;
    for (int r = 1; r <= N.t; ++r) {
        std::uint64_t layer =
            binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(r)).to_u64_saturating();
        if (layer > cap || budget > cap - layer)
            throw too_large_error("fold_min_direct: search space exceeds cap");
        budget += layer;
    }
    // folding at j corresponds to a boundary before bead j, i.e. cut j-1
    std::vector<int> folds;
    auto endpoint_zero = [&]() {
        for (int type = 0; type < N.t; ++type) {
            auto count = [&](int from, int to) {
                return pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(to)] -
                       pc[static_cast<std::size_t>(type)][static_cast<std::size_t>(from)];
            };
            int prev = 0, sign = 1;
            std::int64_t total = 0;
            for (int f : folds) {
                total += sign * count(prev, f - 1);
                prev = f - 1;
                sign = -sign;
            }
            total += sign * count(prev, n);
            if (total != 0) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, int r, int from) -> bool {
        if (static_cast<int>(folds.size()) == r) return endpoint_zero();
        for (int j = from; j <= n - (r - static_cast<int>(folds.size()) - 1); ++j) {
            folds.push_back(j);
            if (self(self, r, j + 1)) return true;
            folds.pop_back();
        }
        return false;
    };
    for (int r = 1; r <= N.t; ++r) {
        folds.clear();
        if (search(search, r, 2)) return r;
    }
    throw std::logic_error("fold_min_direct: no folding set within t folds");
}

} // namespace nsplit
