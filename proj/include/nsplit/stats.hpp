#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace nsplit {

inline constexpr double kZ95 = 1.959963984540054;

struct Ci {
    double low = 0, high = 0;
};

/// Wilson score interval at 95% by default; well-behaved at small counts and
/// at zero successes.
inline Ci wilson(std::int64_t successes, std::int64_t trials, double z = kZ95) {
    if (trials <= 0 || successes < 0 || successes > trials)
        throw std::invalid_argument("wilson: need 0 <= successes <= trials, trials > 0");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Ci ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) ci.low = 0.0;
    if (successes == trials) ci.high = 1.0;
    return ci;
}

/// One estimate cell: parameter value, raw counts, point estimate and CI.
struct CiRow {
    double x = 0;
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double estimate = 0, ci_low = 0, ci_high = 0;
};

inline CiRow count_row(double x, std::int64_t successes, std::int64_t trials) {
    Ci ci = wilson(successes, trials);
    return {x, successes, trials, static_cast<double>(successes) / static_cast<double>(trials),
            ci.low, ci.high};
}

struct LineFit {
    double slope = 0, intercept = 0, slope_err = 0, residual = 0;
    int points_used = 0;
};

/// Weighted least squares y = intercept + slope * x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 equally sized samples");
    double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        S += w[i];
        Sx += w[i] * x[i];
        Sy += w[i] * y[i];
        Sxx += w[i] * x[i] * x[i];
        Sxy += w[i] * x[i] * y[i];
    }
    const double delta = S * Sxx - Sx * Sx;
    if (delta <= 0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (S * Sxy - Sx * Sy) / delta;
    fit.intercept = (Sxx * Sy - Sx * Sxy) / delta;
    fit.slope_err = std::sqrt(S / delta);
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        rss += w[i] * r * r;
    }
    fit.residual = std::sqrt(rss / S);
    fit.points_used = static_cast<int>(x.size());
    return fit;
}

/// Fit of log(estimate) against log(x). Zero-success rows carry no usable
/// log value and are skipped; weights come from the CI width in log space.
inline LineFit fit_loglog(std::span<const CiRow> rows) {
    std::vector<double> x, y, w;
    for (const auto& r : rows) {
        if (r.successes <= 0) continue;
        x.push_back(std::log(r.x));
        y.push_back(std::log(r.estimate));
        double sigma = (std::log(r.ci_high) - std::log(std::max(r.ci_low, 1e-300))) / (2.0 * kZ95);
        w.push_back(1.0 / std::max(sigma * sigma, 1e-12));
    }
    return fit_line(x, y, w);
}

/// Consecutive estimates move in the stated direction up to the combined CI
/// half-widths.
inline bool monotone_within_ci(std::span<const CiRow> rows, bool decreasing) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double slack = (rows[i - 1].ci_high - rows[i - 1].ci_low) / 2.0 +
                       (rows[i].ci_high - rows[i].ci_low) / 2.0;
        double delta = rows[i].estimate - rows[i - 1].estimate;
        if (decreasing ? delta > slack : delta < -slack) return false;
    }
    return true;
}

} // namespace nsplit
