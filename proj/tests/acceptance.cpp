// Acceptance suite: one line per criterion, nonzero exit on any failure.
// argv[1] must point at the CLI binary (used by the determinism criterion).
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "nsplit/experiments.hpp"
#include "nsplit/heuristics.hpp"
#include "nsplit/oracles.hpp"
#include "nsplit/solver.hpp"
#include "nsplit/walks.hpp"

using namespace nsplit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20250808;
constexpr int kThreads = 2;

int failures = 0;
std::string cli_path;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d %-22s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

void criterion1_oracle_equivalence() {
    auto t0 = Clock::now();
    bool ok = true;
    long checked = 0;
    for (int t = 1; t <= 3; ++t) {
        for (int m = 1; m <= 2; ++m) {
            for_each_necklace(2, t, m, [&](const Necklace& N) {
                Witness fast = min_cuts_two(N);
                Witness exact = min_cuts_exact(N);
                int x = fast.cut_count;
                if (x != exact.cut_count) ok = false;
                if (x < 1 || x > (N.k - 1) * N.t) ok = false;
                if (fold_min(N) != x) ok = false;
                if (fold_min_direct(N) != x) ok = false;
                if (!is_fair(N, fast.partition) || !is_fair(N, exact.partition)) ok = false;
                ++checked;
            });
        }
    }
    for_each_necklace(3, 2, 1, [&](const Necklace& N) {
        Witness w = min_cuts_exact(N);
        if (w.cut_count < 1 || w.cut_count > (N.k - 1) * N.t) ok = false;
        if (!is_fair(N, w.partition)) ok = false;
        ++checked;
    });
    double dt = elapsed(t0);
    if (dt >= 300.0) ok = false;
    report(1, "oracle-equivalence", ok, fmt("%ld necklaces, %.1fs (limit 300s)", checked, dt));
}

void criterion2_exact_formulas() {
    bool ok = true;
    // halves frequency by direct enumeration
    auto halves_freq = [](int t, int m) {
        std::int64_t fair = 0, total = 0;
        for_each_necklace(2, t, m, [&](const Necklace& N) {
            ++total;
            if (is_fair(N, halves_partition(N))) ++fair;
        });
        return Rational(fair, total);
    };
    ok &= fair_probability_exact(2, 2, 1) == Rational(2, 3);
    ok &= halves_freq(2, 1) == Rational(2, 3);
    ok &= fair_probability_exact(2, 3, 1) == Rational(2, 5);
    ok &= halves_freq(3, 1) == Rational(2, 5);
    for (int t = 1; t <= 12; ++t) ok &= m1_fair_probability(t) == fair_probability_exact(2, t, 1);
    // joint fairness of the halves and the shift-1 partition, exhaustively
    std::int64_t joint = 0, total = 0;
    Partition p1{{2}, {0, 1}}, p2{{1, 3}, {0, 1, 0}};
    for_each_necklace(2, 2, 1, [&](const Necklace& N) {
        ++total;
        if (is_fair(N, p1) && is_fair(N, p2)) ++joint;
    });
    ok &= pair_fair_probability(2, 1, 1) == Rational(1, 3);
    ok &= Rational(joint, total) == Rational(1, 3);
    report(2, "exact-formulas", ok,
           fmt("P(2,2,1)=%s P(2,3,1)=%s joint=%lld/%lld", fair_probability_exact(2, 2, 1).to_string().c_str(),
               fair_probability_exact(2, 3, 1).to_string().c_str(), joint, total));
}

void criterion3_stirling_constant() {
    const double target = std::sqrt(3.0) / std::numbers::pi;
    const double value = 100.0 * fair_probability_exact(2, 3, 100).to_double();
    bool ok = value >= 0.9 * target && value <= 1.1 * target;
    report(3, "claim-2.1-constant", ok,
           fmt("m*P = %.6f, sqrt(3)/pi = %.6f, ratio %.4f", value, target, value / target));
}

void criterion4_power_law() {
    auto t0 = Clock::now();
    std::vector<int> grid{8, 16, 32, 64};
    auto res = sweep_exponent(3, 1, grid, 100000, kSeed, kThreads);
    double slope = res.fit ? res.fit->slope : 0.0;
    bool ok = res.fit.has_value() && slope >= -1.25 && slope <= -0.75;
    double dt = elapsed(t0);
    if (dt >= 900.0) ok = false;
    report(4, "theorem-1.2(1)", ok, fmt("slope %.4f in [-1.25,-0.75], %.1fs (limit 900s)", slope, dt));
}

void criterion5_log_law() {
    std::vector<int> grid{16, 64, 256, 1024};
    auto res = check_log_law(3, grid, 20000, kSeed + 1, kThreads);
    double ratio = 0;
    for (const auto& [name, v] : res.extras)
        if (name == "product_max_min_ratio") ratio = v;
    bool decreasing = monotone_within_ci(res.rows, true);
    double slope = res.fit ? res.fit->slope : -1;
    bool ok = ratio > 0 && ratio <= 4.0 && decreasing && res.fit.has_value() && slope > -0.35 &&
              slope < 0.0;
    report(5, "theorem-1.2(2)", ok,
           fmt("P*log(m) ratio %.3f <= 4, decreasing=%d, power slope %.4f in (-0.35,0)", ratio,
               decreasing ? 1 : 0, slope));
}

void criterion6_constant_mass() {
    auto res = estimate_distribution(2, 3, 256, 10000, kSeed + 2, kThreads);
    double mass = res.rows.at(2).estimate; // s = 3
    bool ok = mass >= 0.5;
    report(6, "theorem-1.2(3)", ok, fmt("P(X(2,3,256)=3) = %.4f >= 0.5", mass));
}

void criterion7_first_moment() {
    auto exact = moment_check(3, 1, 2, 0, 0);
    bool ok = Rational(exact.rows[0].successes, exact.rows[0].trials) == Rational(4, 5);
    auto sampled = moment_check(3, 8, 2, 10000, kSeed + 3, kThreads);
    double oracle = expected_fair_scut(3, 8, 2).to_double();
    double sigma = (sampled.rows[0].ci_high - sampled.rows[0].ci_low) / (2.0 * kZ95);
    double dev = std::abs(sampled.rows[0].estimate - oracle);
    ok &= dev <= 4.0 * sigma;
    report(7, "first-moment", ok,
           fmt("exhaustive %lld/%lld = 4/5, sampled |%.4f - %.4f| = %.4f <= 4sigma=%.4f",
               exact.rows[0].successes, exact.rows[0].trials, sampled.rows[0].estimate, oracle, dev,
               4.0 * sigma));
}

void criterion8_incremental_bracket() {
    const int t = 512, trials = 200;
    bool ok = true;
    double sum = 0;
    for (int i = 0; i < trials; ++i) {
        Necklace N = generate_uniform(2, t, 1, {kSeed + 4, static_cast<std::uint64_t>(i)});
        FairSolution sol = incremental_two_thief(N);
        if (!is_fair(N, sol.partition)) ok = false;
        if (sol.cut_count > t) ok = false;
        sum += static_cast<double>(sol.cut_count) / t;
    }
    double mean = sum / trials;
    ok &= mean >= 0.20 && mean <= 0.45;
    report(8, "theorem-1.4-proxy", ok, fmt("all fair, cuts <= t, mean/t = %.4f in [0.20,0.45]", mean));
}

void criterion9_interval_trend() {
    auto t0 = Clock::now();
    const int t = 2000, C = 8, trials = 20;
    bool ok = true;
    auto average_fraction = [&](int k, std::uint64_t seed_offset) {
        double sum = 0;
        for (int i = 0; i < trials; ++i) {
            Necklace N = generate_uniform(k, t, 1, {kSeed + seed_offset, static_cast<std::uint64_t>(i)});
            FairSolution sol = interval_hypergraph_partition(N, C);
            if (!is_fair(N, sol.partition)) ok = false;
            sum += static_cast<double>(sol.cut_count) / (static_cast<double>(k) * t);
        }
        return sum / trials;
    };
    double frac32 = average_fraction(32, 5);
    double frac256 = average_fraction(256, 6);
    ok &= frac256 < frac32;
    report(9, "theorem-1.3-trend", ok,
           fmt("cut fraction k=32: %.4f, k=256: %.4f (strictly smaller), %.1fs", frac32, frac256,
               elapsed(t0)));
}

void criterion10_nonreturn() {
    std::vector<int> n_grid{64, 128, 256, 512, 1024, 2048, 4096};
    auto rows = nonreturn_probability(2, n_grid, 10000, {kSeed + 7, 0}, kThreads);
    double lo = 1e300, hi = 0;
    for (const auto& r : rows) {
        double v = r.estimate * std::log(r.x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool pair_ok = hi / lo <= 4.0 && monotone_within_ci(rows, true);

    auto one = single_nonreturn(3, 1, 100000, {kSeed + 8, 0}, kThreads);
    double sigma = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / 100000.0);
    bool one_ok = std::abs(one.estimate - 2.0 / 3.0) <= 4.0 * sigma;
    std::vector<int> s_grid{16, 64, 256, 1024, 4096};
    auto srows = single_nonreturn_grid(3, s_grid, 30000, {kSeed + 9, 0}, kThreads);
    bool single_monotone = monotone_within_ci(srows, true);

    bool ok = pair_ok && one_ok && single_monotone;
    report(10, "prop-2.9/claim-2.2", ok,
           fmt("est*log(N) ratio %.3f <= 4, Q'(1) = %.4f (2/3 +- %.4f), monotone=%d/%d", hi / lo,
               one.estimate, 4.0 * sigma, pair_ok ? 1 : 0, single_monotone ? 1 : 0));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion11_determinism() {
    if (cli_path.empty()) {
        report(11, "determinism", false, "no CLI path given (pass it as argv[1])");
        return;
    }
    auto tmp = [](const std::string& name) {
        return (fs::temp_directory_path() /
                ("nsplit_acc_" + std::to_string(getpid()) + "_" + name))
            .string();
    };
    auto run = [&](const std::string& args) {
        std::string cmd = cli_path + " " + args + " > /dev/null 2> /dev/null";
        int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    };
    bool ok = true;
    struct Case {
        std::string name, args;
    };
    std::vector<Case> cases{
        {"dist-csv", "dist --k 2 --t 3 --m 16 --trials 20000 --seed 101 --format csv"},
        {"dist-json", "dist --k 2 --t 3 --m 16 --trials 20000 --seed 101 --format json"},
        {"sweep-csv", "sweep --t 3 --s 1 --m-grid 4,8,16 --trials 10000 --seed 102 --format csv"},
        {"walk-csv", "walk --mode single --steps-grid 8,64,512 --trials 20000 --seed 103"},
    };
    for (const auto& c : cases) {
        std::string a = tmp(c.name + "_t1"), b = tmp(c.name + "_t4");
        ok &= run(c.args + " --threads 1 --out " + a);
        ok &= run(c.args + " --threads 4 --out " + b);
        std::string ca = slurp(a), cb = slurp(b);
        if (ca.empty() || ca != cb) ok = false;
        fs::remove(a);
        fs::remove(b);
    }
    report(11, "determinism", ok, fmt("%zu seeded runs byte-identical across thread counts",
                                      std::size_t{4}));
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];
    auto t0 = Clock::now();
    criterion1_oracle_equivalence();
    criterion2_exact_formulas();
    criterion3_stirling_constant();
    criterion4_power_law();
    criterion5_log_law();
    criterion6_constant_mass();
    criterion7_first_moment();
    criterion8_incremental_bracket();
    criterion9_interval_trend();
    criterion10_nonreturn();
    criterion11_determinism();
    std::printf("%d/11 criteria passed in %.1fs\n", 11 - failures, elapsed(t0));
    return failures == 0 ? 0 : 1;
}
