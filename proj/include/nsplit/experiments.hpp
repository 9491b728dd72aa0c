#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nsplit/heuristics.hpp"
#include "nsplit/necklace.hpp"
#include "nsplit/oracles.hpp"
#include "nsplit/parallel.hpp"
#include "nsplit/solver.hpp"
#include "nsplit/stats.hpp"

namespace nsplit {

/// Shortest representation that round-trips a double exactly.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Declarative description of a seeded run; `echo()` is the provenance line
/// written at the top of every output file. It deliberately omits the thread
/// count: the same spec must produce byte-identical files on any thread count.
struct ExperimentSpec {
    std::string kind;
    int k = 2, t = 3, m = 1, s = 1, C = 4;
    std::vector<int> m_grid, t_grid, n_grid;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    int threads = 1;

    std::string echo() const {
        std::string out = "kind=" + kind;
        auto grid = [](const std::vector<int>& g) {
            std::string joined;
            for (std::size_t i = 0; i < g.size(); ++i)
                joined += (i ? "," : "") + std::to_string(g[i]);
            return joined;
        };
        if (kind == "dist" || kind == "lower") out += " k=" + std::to_string(k);
        if (kind != "concentration") out += " t=" + std::to_string(t);
        if (kind == "dist" || kind == "moments") out += " m=" + std::to_string(m);
        if (kind == "sweep" || kind == "moments") out += " s=" + std::to_string(s);
        if (!m_grid.empty()) out += " m_grid=" + grid(m_grid);
        if (!t_grid.empty()) out += " t_grid=" + grid(t_grid);
        if (!n_grid.empty()) out += " n_grid=" + grid(n_grid);
        out += " trials=" + std::to_string(trials);
        out += " seed=" + std::to_string(seed);
        return out;
    }
};

struct ExperimentResult {
    std::string kind;
    std::string provenance;
    std::string x_name = "x";
    std::vector<CiRow> rows;
    std::optional<LineFit> fit;
    std::vector<std::pair<std::string, double>> extras;

    void write_csv(std::ostream& os) const {
        os << "# " << provenance << "\n";
        os << x_name << ",successes,trials,estimate,ci_low,ci_high\n";
        for (const auto& r : rows)
            os << fmt_double(r.x) << ',' << r.successes << ',' << r.trials << ','
               << fmt_double(r.estimate) << ',' << fmt_double(r.ci_low) << ','
               << fmt_double(r.ci_high) << "\n";
        if (fit)
            os << "# fit slope=" << fmt_double(fit->slope)
               << " intercept=" << fmt_double(fit->intercept)
               << " slope_err=" << fmt_double(fit->slope_err)
               << " residual=" << fmt_double(fit->residual) << " points=" << fit->points_used
               << "\n";
        for (const auto& [name, value] : extras)
            os << "# extra " << name << "=" << fmt_double(value) << "\n";
    }
};

namespace detail {

inline void check_experiment_grid(std::span<const int> grid, const char* what) {
    if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1]))
            throw std::invalid_argument(std::string(what) +
                                        ": grid must be positive and strictly increasing");
}

inline void check_trials(std::int64_t trials, const char* what) {
    if (trials < 1) throw std::invalid_argument(std::string(what) + ": trials must be >= 1");
}

} // namespace detail

/// Histogram of X(k,t,m) over seeded iid necklaces, with Wilson CIs. Rows
/// cover every s in [1, (k-1)t], so the masses sum to one.
inline ExperimentResult estimate_distribution(int k, int t, int m, std::int64_t trials,
                                              std::uint64_t seed, int threads = 1,
                                              const SolverCaps& caps = {}) {
    detail::check_trials(trials, "estimate_distribution");
    if (k < 2) throw std::invalid_argument("estimate_distribution: k must be >= 2");
    const int smax = (k - 1) * t;
    if (k > 2 && k * t * m > caps.exact_n_general)
        throw too_large_error("estimate_distribution: instance too large for the exact solver");

    std::vector<std::int64_t> counts = parallel_trials(
        trials, threads, std::vector<std::int64_t>(static_cast<std::size_t>(smax), 0),
        [&](std::int64_t i, std::vector<std::int64_t>& acc) {
            Necklace N = generate_uniform(k, t, m, {seed, static_cast<std::uint64_t>(i)});
            int x = x_value(N, caps);
            ++acc[static_cast<std::size_t>(x - 1)];
        },
        [](std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        });

    ExperimentSpec spec;
    spec.kind = "dist";
    spec.k = k;
    spec.t = t;
    spec.m = m;
    spec.trials = trials;
    spec.seed = seed;
    ExperimentResult res;
    res.kind = spec.kind;
    res.provenance = spec.echo();
    res.x_name = "s";
    for (int s = 1; s <= smax; ++s)
        res.rows.push_back(count_row(s, counts[static_cast<std::size_t>(s - 1)], trials));
    return res;
}

/// P(X(2,t,m) = s) across a geometric m-grid with a weighted log-log fit of
/// the decay exponent. The polynomial decay regime is s < (t+1)/2; larger s
/// values are allowed as flat-law controls. Cells with zero successes are
/// excluded from the fit and counted in the extras.
inline ExperimentResult sweep_exponent(int t, int s, std::span<const int> m_grid,
                                       std::int64_t trials, std::uint64_t seed,
                                       int threads = 1) {
    detail::check_experiment_grid(m_grid, "sweep_exponent");
    detail::check_trials(trials, "sweep_exponent");
    if (s < 1 || s > t) throw std::invalid_argument("sweep_exponent: need 1 <= s <= t");

    ExperimentSpec spec;
    spec.kind = "sweep";
    spec.t = t;
    spec.s = s;
    spec.m_grid.assign(m_grid.begin(), m_grid.end());
    spec.trials = trials;
    spec.seed = seed;
    ExperimentResult res;
    res.kind = spec.kind;
    res.provenance = spec.echo();
    res.x_name = "m";
    for (std::size_t cell = 0; cell < m_grid.size(); ++cell) {
        const int m = m_grid[cell];
        const std::uint64_t base = static_cast<std::uint64_t>(cell) * static_cast<std::uint64_t>(trials);
        std::int64_t hits = parallel_trials(
            trials, threads, std::int64_t{0},
            [&](std::int64_t i, std::int64_t& acc) {
                Necklace N = generate_uniform(2, t, m, {seed, base + static_cast<std::uint64_t>(i)});
                if (fair_within_two(N, s) && !fair_within_two(N, s - 1)) ++acc;
            },
            [](std::int64_t& a, const std::int64_t& b) { a += b; });
        res.rows.push_back(count_row(m, hits, trials));
    }
    int zero_cells = 0;
    for (const auto& r : res.rows)
        if (r.successes == 0) ++zero_cells;
    res.extras.emplace_back("zero_cells", zero_cells);
    if (static_cast<int>(res.rows.size()) - zero_cells >= 2) res.fit = fit_loglog(res.rows);
    return res;
}

/// P(X(2,t,m) <= (t+1)/2) * log m across the grid (t odd). Reports the
/// max/min ratio of the products and a power-law control fit.
inline ExperimentResult check_log_law(int t, std::span<const int> m_grid, std::int64_t trials,
                                      std::uint64_t seed, int threads = 1) {
    detail::check_experiment_grid(m_grid, "check_log_law");
    detail::check_trials(trials, "check_log_law");
    if (t % 2 == 0) throw std::invalid_argument("check_log_law: t must be odd");
    const int s = (t + 1) / 2;

    ExperimentSpec spec;
    spec.kind = "loglaw";
    spec.t = t;
    spec.m_grid.assign(m_grid.begin(), m_grid.end());
    spec.trials = trials;
    spec.seed = seed;
    ExperimentResult res;
    res.kind = spec.kind;
    res.provenance = spec.echo();
    res.x_name = "m";
    for (std::size_t cell = 0; cell < m_grid.size(); ++cell) {
        const int m = m_grid[cell];
        const std::uint64_t base = static_cast<std::uint64_t>(cell) * static_cast<std::uint64_t>(trials);
        std::int64_t hits = parallel_trials(
            trials, threads, std::int64_t{0},
            [&](std::int64_t i, std::int64_t& acc) {
                Necklace N = generate_uniform(2, t, m, {seed, base + static_cast<std::uint64_t>(i)});
                if (fair_within_two(N, s)) ++acc;
            },
            [](std::int64_t& a, const std::int64_t& b) { a += b; });
        res.rows.push_back(count_row(m, hits, trials));
    }
    double lo = 1e300, hi = 0;
    for (const auto& r : res.rows) {
        double v = r.estimate * std::log(r.x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    res.extras.emplace_back("product_min", lo);
    res.extras.emplace_back("product_max", hi);
    res.extras.emplace_back("product_max_min_ratio", lo > 0 ? hi / lo : 0.0);
    bool any_zero = false;
    for (const auto& r : res.rows) any_zero |= r.successes == 0;
    if (!any_zero) res.fit = fit_loglog(res.rows);
    return res;
}

/// Mean and second moment of Y = count of fair s-cut partitions, against the
/// exact first-moment oracle. trials = 0 enumerates every necklace instead of
/// sampling (exact values, degenerate CIs).
inline ExperimentResult moment_check(int t, int m, int s, std::int64_t trials,
                                     std::uint64_t seed, int threads = 1,
                                     const SolverCaps& caps = {},
                                     std::uint64_t enumeration_cap = 1000000) {
    if (trials < 0) throw std::invalid_argument("moment_check: trials must be >= 0");
    if (s_cut_partition_count(t, m, s) > BigInt(100000))
        throw too_large_error("moment_check: too many s-cut partitions per necklace");
    if (binomial(static_cast<unsigned>(2 * t * m - 1), static_cast<unsigned>(s)) >
        BigInt::from_u64(caps.count_cap))
        throw too_large_error("moment_check: cut-set space exceeds cap");

    struct State {
        std::int64_t n = 0, sum1 = 0, sum2 = 0;
        unsigned __int128 sum4 = 0;
    };
    auto add_value = [](State& st, std::int64_t y) {
        ++st.n;
        st.sum1 += y;
        st.sum2 += y * y;
        unsigned __int128 y2 = static_cast<unsigned __int128>(y) * static_cast<unsigned __int128>(y);
        st.sum4 += y2 * y2;
    };

    State total;
    if (trials == 0) {
        for_each_necklace(
            2, t, m, [&](const Necklace& N) { add_value(total, count_fair_scut(N, s, caps)); },
            enumeration_cap);
    } else {
        total = parallel_trials(
            trials, threads, State{},
            [&](std::int64_t i, State& st) {
                Necklace N = generate_uniform(2, t, m, {seed, static_cast<std::uint64_t>(i)});
                add_value(st, count_fair_scut(N, s, caps));
            },
            [](State& a, const State& b) {
                a.n += b.n;
                a.sum1 += b.sum1;
                a.sum2 += b.sum2;
                a.sum4 += b.sum4;
            });
    }

    ExperimentSpec spec;
    spec.kind = "moments";
    spec.t = t;
    spec.m = m;
    spec.s = s;
    spec.trials = trials;
    spec.seed = seed;
    ExperimentResult res;
    res.kind = spec.kind;
    res.provenance = spec.echo();
    res.x_name = "moment";

    const long double n = static_cast<long double>(total.n);
    auto moment_row = [&](double x, std::int64_t sum, long double sq_sum) {
        CiRow row;
        row.x = x;
        row.successes = sum;
        row.trials = total.n;
        long double mean = static_cast<long double>(sum) / n;
        row.estimate = static_cast<double>(mean);
        if (trials == 0 || total.n < 2) {
            row.ci_low = row.ci_high = row.estimate;
        } else {
            long double var = (sq_sum - n * mean * mean) / (n - 1);
            long double half = kZ95 * std::sqrt(static_cast<double>(var / n));
            row.ci_low = static_cast<double>(mean - half);
            row.ci_high = static_cast<double>(mean + half);
        }
        return row;
    };
    res.rows.push_back(moment_row(1, total.sum1, static_cast<long double>(total.sum2)));
    res.rows.push_back(moment_row(2, total.sum2, static_cast<long double>(total.sum4)));
    res.extras.emplace_back("oracle_mean", expected_fair_scut(t, m, s).to_double());
    return res;
}

/// Fraction of trials with X below ceil((k-1)(t+1)/2) per m, plus a hard
/// check that no trial ever exceeds the deterministic (k-1)t ceiling.
inline ExperimentResult lower_bound_check(int k, int t, std::span<const int> m_grid,
                                          std::int64_t trials, std::uint64_t seed,
                                          int threads = 1, const SolverCaps& caps = {}) {
    detail::check_experiment_grid(m_grid, "lower_bound_check");
    detail::check_trials(trials, "lower_bound_check");
    if (k < 2) throw std::invalid_argument("lower_bound_check: k must be >= 2");
    const int threshold = ((k - 1) * (t + 1) + 1) / 2;
    const int ceiling = (k - 1) * t;
    if (k > 2 && k * t * m_grid.back() > caps.exact_n_general)
        throw too_large_error("lower_bound_check: instance too large for the exact solver");

    ExperimentSpec spec;
    spec.kind = "lower";
    spec.k = k;
    spec.t = t;
    spec.m_grid.assign(m_grid.begin(), m_grid.end());
    spec.trials = trials;
    spec.seed = seed;
    ExperimentResult res;
    res.kind = spec.kind;
    res.provenance = spec.echo();
    res.x_name = "m";
    std::int64_t exceed = 0;
    for (std::size_t cell = 0; cell < m_grid.size(); ++cell) {
        const int m = m_grid[cell];
        const std::uint64_t base = static_cast<std::uint64_t>(cell) * static_cast<std::uint64_t>(trials);
        auto counts = parallel_trials(
            trials, threads, std::pair<std::int64_t, std::int64_t>{0, 0},
            [&](std::int64_t i, std::pair<std::int64_t, std::int64_t>& acc) {
                Necklace N = generate_uniform(k, t, m, {seed, base + static_cast<std::uint64_t>(i)});
                int x = x_value(N, caps);
                if (x < threshold) ++acc.first;
                if (x > ceiling) ++acc.second;
            },
            [](auto& a, const auto& b) {
                a.first += b.first;
                a.second += b.second;
            });
        exceed += counts.second;
        res.rows.push_back(count_row(m, counts.first, trials));
    }
    res.extras.emplace_back("threshold", threshold);
    res.extras.emplace_back("exceed_upper", static_cast<double>(exceed));
    return res;
}

/// Sample std of the incremental heuristic's cut count per t; reports
/// std/sqrt(t) with a normal-approximation CI, plus mean/t in the extras.
inline ExperimentResult concentration_check(std::span<const int> t_grid, std::int64_t trials,
                                            std::uint64_t seed, int threads = 1) {
    detail::check_experiment_grid(t_grid, "concentration_check");
    detail::check_trials(trials, "concentration_check");

    ExperimentSpec spec;
    spec.kind = "concentration";
    spec.t_grid.assign(t_grid.begin(), t_grid.end());
    spec.trials = trials;
    spec.seed = seed;
    ExperimentResult res;
    res.kind = spec.kind;
    res.provenance = spec.echo();
    res.x_name = "t";
    for (std::size_t cell = 0; cell < t_grid.size(); ++cell) {
        const int t = t_grid[cell];
        const std::uint64_t base = static_cast<std::uint64_t>(cell) * static_cast<std::uint64_t>(trials);
        auto sums = parallel_trials(
            trials, threads, std::pair<std::int64_t, std::int64_t>{0, 0},
            [&](std::int64_t i, std::pair<std::int64_t, std::int64_t>& acc) {
                Necklace N = generate_uniform(2, t, 1, {seed, base + static_cast<std::uint64_t>(i)});
                std::int64_t c = incremental_two_thief(N).cut_count;
                acc.first += c;
                acc.second += c * c;
            },
            [](auto& a, const auto& b) {
                a.first += b.first;
                a.second += b.second;
            });
        const double n = static_cast<double>(trials);
        const double mean = static_cast<double>(sums.first) / n;
        const double var =
            trials > 1 ? (static_cast<double>(sums.second) - n * mean * mean) / (n - 1) : 0.0;
        const double sd = std::sqrt(std::max(0.0, var));
        const double root_t = std::sqrt(static_cast<double>(t));
        CiRow row;
        row.x = t;
        row.successes = sums.first;
        row.trials = trials;
        row.estimate = sd / root_t;
        const double se = trials > 1 ? sd / std::sqrt(2.0 * (n - 1)) : 0.0;
        row.ci_low = std::max(0.0, (sd - kZ95 * se)) / root_t;
        row.ci_high = (sd + kZ95 * se) / root_t;
        res.rows.push_back(row);
        res.extras.emplace_back("mean_over_t@" + std::to_string(t), mean / t);
    }
    return res;
}

} // namespace nsplit
