#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsplit/experiments.hpp"
#include "nsplit/io.hpp"
#include "nsplit/oracles.hpp"
#include "nsplit/walks.hpp"

namespace {

using namespace nsplit;

class Output {
public:
    void open(const std::string& path) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<Necklace> load_inputs(const std::string& literal, const std::string& path, int k) {
    std::vector<Necklace> out;
    if (!literal.empty()) {
        auto parsed = nlohmann::json::parse(literal, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_array())
            throw std::invalid_argument("--necklace must be a JSON array of bead types");
        out.push_back(necklace_from_beads(k, parsed.get<std::vector<std::int32_t>>()));
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open input file: " + path);
        out = read_jsonl(in);
    }
    if (out.empty()) throw std::invalid_argument("no necklaces to process");
    return out;
}

void echo_progress(const std::string& provenance, int threads) {
    std::cerr << "[necklace] " << provenance << " threads=" << threads << "\n";
}

void emit_result(const ExperimentResult& res, Output& out, const std::string& format) {
    if (format == "json")
        out.stream() << to_json(res).dump(2) << "\n";
    else
        res.write_csv(out.stream());
}

void emit_ci_rows(Output& out, const std::string& format, const std::string& provenance,
                  const std::string& x_name, const std::vector<CiRow>& rows) {
    if (format == "json") {
        ordered_json jrows = ordered_json::array();
        for (const auto& r : rows)
            jrows.push_back(ordered_json{{"x", r.x},
                                         {"successes", r.successes},
                                         {"trials", r.trials},
                                         {"estimate", r.estimate},
                                         {"ci_low", r.ci_low},
                                         {"ci_high", r.ci_high}});
        out.stream() << ordered_json{{"provenance", provenance}, {"rows", jrows}}.dump(2) << "\n";
        return;
    }
    auto& os = out.stream();
    os << "# " << provenance << "\n";
    os << x_name << ",trials,estimate,ci_low,ci_high\n";
    for (const auto& r : rows)
        os << fmt_double(r.x) << ',' << r.trials << ',' << fmt_double(r.estimate) << ','
           << fmt_double(r.ci_low) << ',' << fmt_double(r.ci_high) << "\n";
}

std::string grid_string(const std::vector<int>& grid) {
    std::string s;
    for (std::size_t i = 0; i < grid.size(); ++i) s += (i ? "," : "") + std::to_string(grid[i]);
    return s;
}

std::string rational_line(const Rational& r) {
    char dec[40];
    std::snprintf(dec, sizeof dec, "%.12g", r.to_double());
    return r.to_string() + " = " + dec;
}

std::string bigint_line(const BigInt& v) { return v.to_string(); }

std::string double_line(double v) {
    char dec[40];
    std::snprintf(dec, sizeof dec, "%.12g", v);
    return dec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"necklace: fair-division solvers, exact probability oracles and seeded experiments"};
    app.require_subcommand(1);

    // shared flags, one set per subcommand that uses them
    struct Common {
        std::uint64_t seed = 0;
        std::int64_t trials = 1;
        int threads = 1;
        std::string out;
        std::string format = "csv";
    };
    auto add_common = [](CLI::App* cmd, Common& c, bool trials_required = true) {
        cmd->add_option("--seed", c.seed, "PRNG seed; all randomness derives from it")->required();
        auto* trials_opt = cmd->add_option("--trials", c.trials, "number of Monte Carlo trials");
        if (trials_required) trials_opt->required();
        cmd->add_option("--threads", c.threads, "worker thread cap (results are thread-count invariant)")
            ->default_val(1);
        cmd->add_option("--out", c.out, "output file (default stdout)");
        cmd->add_option("--format", c.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->default_val("csv");
    };

    // gen
    auto* gen = app.add_subcommand("gen", "sample uniform necklaces as JSONL");
    int gen_k = 2, gen_t = 2, gen_m = 1, gen_count = 1;
    std::uint64_t gen_seed = 0, gen_stream = 0;
    std::string gen_out;
    gen->add_option("--k", gen_k, "thief count")->required();
    gen->add_option("--t", gen_t, "type count")->required();
    gen->add_option("--m", gen_m, "per-thief per-type multiplicity")->required();
    gen->add_option("--seed", gen_seed, "PRNG seed")->required();
    gen->add_option("--stream", gen_stream, "first stream index")->default_val(0);
    gen->add_option("--count", gen_count, "number of necklaces")->default_val(1);
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->callback([&] {
        std::cerr << "[necklace] kind=gen k=" << gen_k << " t=" << gen_t << " m=" << gen_m
                  << " seed=" << gen_seed << " stream=" << gen_stream << " count=" << gen_count
                  << "\n";
        Output out;
        out.open(gen_out);
        for (int i = 0; i < gen_count; ++i) {
            Necklace N = generate_uniform(gen_k, gen_t, gen_m,
                                          {gen_seed, gen_stream + static_cast<std::uint64_t>(i)});
            out.stream() << to_json(N).dump() << "\n";
        }
    });

    // solve
    auto* solve = app.add_subcommand("solve", "exact minimum fair cuts; emits witness JSON");
    int solve_k = 2;
    std::string solve_neck, solve_in, solve_out;
    solve->add_option("--k", solve_k, "thief count for --necklace input")->default_val(2);
    auto* sn = solve->add_option("--necklace", solve_neck, "bead array, e.g. [0,0,1,1]");
    auto* si = solve->add_option("--in", solve_in, "JSONL file of necklaces");
    sn->excludes(si);
    solve->add_option("--out", solve_out, "output file (default stdout)");
    solve->callback([&] {
        if (solve_neck.empty() && solve_in.empty())
            throw std::invalid_argument("solve: need --necklace or --in");
        std::cerr << "[necklace] kind=solve k=" << solve_k
                  << " input=" << (solve_in.empty() ? "literal" : solve_in) << "\n";
        Output out;
        out.open(solve_out);
        for (const auto& N : load_inputs(solve_neck, solve_in, solve_k)) {
            Witness w = N.k == 2 ? min_cuts_two(N) : min_cuts_exact(N);
            out.stream() << to_json(w).dump() << "\n";
        }
    });

    // fold
    auto* fold = app.add_subcommand("fold", "minimum elementary foldings (equals the cut minimum)");
    int fold_k = 2;
    std::string fold_neck, fold_in, fold_out, fold_format = "csv";
    fold->add_option("--k", fold_k, "thief count for --necklace input")->default_val(2);
    auto* fn = fold->add_option("--necklace", fold_neck, "bead array");
    auto* fi = fold->add_option("--in", fold_in, "JSONL file of necklaces");
    fn->excludes(fi);
    fold->add_option("--out", fold_out, "output file (default stdout)");
    fold->add_option("--format", fold_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    fold->callback([&] {
        if (fold_neck.empty() && fold_in.empty())
            throw std::invalid_argument("fold: need --necklace or --in");
        std::cerr << "[necklace] kind=fold k=" << fold_k
                  << " input=" << (fold_in.empty() ? "literal" : fold_in) << "\n";
        Output out;
        out.open(fold_out);
        for (const auto& N : load_inputs(fold_neck, fold_in, fold_k)) {
            int v = fold_min(N);
            if (fold_format == "json")
                out.stream() << ordered_json{{"fold_min", v}}.dump() << "\n";
            else
                out.stream() << v << "\n";
        }
    });

    // prob
    auto* prob = app.add_subcommand("prob", "exact and asymptotic probability oracles");
    prob->require_subcommand(1);
    int p_k = 2, p_t = 2, p_m = 1, p_s = 1, p_q = 1;
    std::vector<int> p_comp;
    std::string prob_out;
    prob->add_option("--out", prob_out, "output file (default stdout)");
    auto emit_line = [&](const std::string& line) {
        std::cerr << "[necklace] kind=prob op=" << prob->get_subcommands().front()->get_name()
                  << "\n";
        Output out;
        out.open(prob_out);
        out.stream() << line << "\n";
    };

    auto* pe = prob->add_subcommand("exact", "P(k,t,m): a fixed balanced partition is fair");
    pe->add_option("--k", p_k)->required();
    pe->add_option("--t", p_t)->required();
    pe->add_option("--m", p_m)->required();
    pe->callback([&] { emit_line(rational_line(fair_probability_exact(p_k, p_t, p_m))); });

    auto* pa = prob->add_subcommand("asymptotic", "Stirling limit of P(k,t,m)");
    pa->add_option("--k", p_k)->required();
    pa->add_option("--t", p_t)->required();
    pa->add_option("--m", p_m)->required();
    pa->callback([&] { emit_line(double_line(fair_probability_asymptotic(p_k, p_t, p_m))); });

    auto* ps = prob->add_subcommand("scut", "n'(s,t,m): exact number of s-cut partitions");
    ps->add_option("--t", p_t)->required();
    ps->add_option("--m", p_m)->required();
    ps->add_option("--s", p_s)->required();
    ps->callback([&] { emit_line(bigint_line(s_cut_partition_count(p_t, p_m, p_s))); });

    auto* pb = prob->add_subcommand("bound", "upper bound on balanced partitions with s cuts");
    pb->add_option("--s", p_s)->required();
    pb->add_option("--k", p_k)->required();
    pb->add_option("--t", p_t)->required();
    pb->add_option("--m", p_m)->required();
    pb->callback([&] { emit_line(bigint_line(balanced_partition_count_bound(p_s, p_k, p_t, p_m))); });

    auto* py = prob->add_subcommand("ey", "E(Y) = n'(s,t,m) P(2,t,m)");
    py->add_option("--t", p_t)->required();
    py->add_option("--m", p_m)->required();
    py->add_option("--s", p_s)->required();
    py->callback([&] { emit_line(rational_line(expected_fair_scut(p_t, p_m, p_s))); });

    auto* pc = prob->add_subcommand("comp", "hypergeometric composition point mass");
    pc->add_option("--t", p_t)->required();
    pc->add_option("--m", p_m)->required();
    pc->add_option("--q", p_q)->required();
    pc->add_option("--composition", p_comp, "comma-separated parts q_1..q_t")
        ->delimiter(',')
        ->required();
    pc->callback([&] { emit_line(rational_line(composition_probability(p_t, p_m, p_q, p_comp))); });

    auto* pl = prob->add_subcommand("coll", "hypergeometric collision probability");
    pl->add_option("--t", p_t)->required();
    pl->add_option("--m", p_m)->required();
    pl->add_option("--q", p_q)->required();
    pl->callback([&] { emit_line(rational_line(collision_probability(p_t, p_m, p_q))); });

    auto* pp = prob->add_subcommand("pair", "joint fairness of two partitions at distance q");
    pp->add_option("--t", p_t)->required();
    pp->add_option("--m", p_m)->required();
    pp->add_option("--q", p_q)->required();
    pp->callback([&] { emit_line(rational_line(pair_fair_probability(p_t, p_m, p_q))); });

    auto* pn = prob->add_subcommand("entropy", "2 H^{-1}(1/2), the lower-bound slope");
    pn->callback([&] { emit_line(double_line(entropy_threshold())); });

    auto* p1 = prob->add_subcommand("m1", "P(2,t,1) in closed form");
    p1->add_option("--t", p_t)->required();
    p1->callback([&] { emit_line(rational_line(m1_fair_probability(p_t))); });

    // dist
    auto* dist = app.add_subcommand("dist", "histogram of X(k,t,m) over seeded necklaces");
    Common dist_c;
    int dist_k = 2, dist_t = 3, dist_m = 1;
    dist->add_option("--k", dist_k)->default_val(2);
    dist->add_option("--t", dist_t)->required();
    dist->add_option("--m", dist_m)->required();
    add_common(dist, dist_c);
    dist->callback([&] {
        auto res = estimate_distribution(dist_k, dist_t, dist_m, dist_c.trials, dist_c.seed,
                                         dist_c.threads);
        echo_progress(res.provenance, dist_c.threads);
        Output out;
        out.open(dist_c.out);
        emit_result(res, out, dist_c.format);
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "log-log decay of P(X(2,t,m)=s) across an m-grid");
    Common sweep_c;
    int sweep_t = 3, sweep_s = 1;
    std::vector<int> sweep_grid;
    sweep->add_option("--t", sweep_t)->required();
    sweep->add_option("--s", sweep_s)->required();
    sweep->add_option("--m-grid", sweep_grid, "comma-separated m values")->delimiter(',')->required();
    add_common(sweep, sweep_c);
    sweep->callback([&] {
        auto res = sweep_exponent(sweep_t, sweep_s, sweep_grid, sweep_c.trials, sweep_c.seed,
                                  sweep_c.threads);
        echo_progress(res.provenance, sweep_c.threads);
        Output out;
        out.open(sweep_c.out);
        emit_result(res, out, sweep_c.format);
    });

    // loglaw
    auto* loglaw = app.add_subcommand("loglaw", "P(X(2,t,m) <= (t+1)/2) * log m across an m-grid");
    Common loglaw_c;
    int loglaw_t = 3;
    std::vector<int> loglaw_grid;
    loglaw->add_option("--t", loglaw_t)->default_val(3);
    loglaw->add_option("--m-grid", loglaw_grid, "comma-separated m values")
        ->delimiter(',')
        ->required();
    add_common(loglaw, loglaw_c);
    loglaw->callback([&] {
        auto res = check_log_law(loglaw_t, loglaw_grid, loglaw_c.trials, loglaw_c.seed,
                                 loglaw_c.threads);
        echo_progress(res.provenance, loglaw_c.threads);
        Output out;
        out.open(loglaw_c.out);
        emit_result(res, out, loglaw_c.format);
    });

    // moments
    auto* moments = app.add_subcommand("moments", "empirical moments of the fair s-cut count Y");
    Common moments_c;
    int mom_t = 3, mom_m = 1, mom_s = 2;
    moments->add_option("--t", mom_t)->required();
    moments->add_option("--m", mom_m)->required();
    moments->add_option("--s", mom_s)->required();
    add_common(moments, moments_c);
    moments->get_option("--trials")->description("trial count; 0 enumerates every necklace");
    moments->callback([&] {
        auto res = moment_check(mom_t, mom_m, mom_s, moments_c.trials, moments_c.seed,
                                moments_c.threads);
        echo_progress(res.provenance, moments_c.threads);
        Output out;
        out.open(moments_c.out);
        emit_result(res, out, moments_c.format);
    });

    // lower
    auto* lower = app.add_subcommand("lower", "fraction of trials below the whp lower bound");
    Common lower_c;
    int low_k = 2, low_t = 3;
    std::vector<int> low_grid;
    lower->add_option("--k", low_k)->default_val(2);
    lower->add_option("--t", low_t)->required();
    lower->add_option("--m-grid", low_grid, "comma-separated m values")->delimiter(',')->required();
    add_common(lower, lower_c);
    lower->callback([&] {
        auto res =
            lower_bound_check(low_k, low_t, low_grid, lower_c.trials, lower_c.seed, lower_c.threads);
        echo_progress(res.provenance, lower_c.threads);
        Output out;
        out.open(lower_c.out);
        emit_result(res, out, lower_c.format);
    });

    // concentration
    auto* conc = app.add_subcommand("concentration", "std/sqrt(t) of the incremental heuristic");
    Common conc_c;
    std::vector<int> conc_grid;
    conc->add_option("--t-grid", conc_grid, "comma-separated t values")->delimiter(',')->required();
    add_common(conc, conc_c);
    conc->callback([&] {
        auto res = concentration_check(conc_grid, conc_c.trials, conc_c.seed, conc_c.threads);
        echo_progress(res.provenance, conc_c.threads);
        Output out;
        out.open(conc_c.out);
        emit_result(res, out, conc_c.format);
    });

    // heuristic
    auto* heur = app.add_subcommand("heuristic", "constructive fair partitions (m = 1)");
    Common heur_c;
    std::string heur_algo = "incremental";
    int heur_t = 8, heur_k = 2, heur_C = 4;
    heur->add_option("--algo", heur_algo, "incremental | interval")
        ->check(CLI::IsMember({"incremental", "interval"}))
        ->default_val("incremental");
    heur->add_option("--t", heur_t)->required();
    heur->add_option("--k", heur_k, "thief count (interval algorithm)")->default_val(2);
    heur->add_option("--C", heur_C, "interval length (interval algorithm)")->default_val(4);
    add_common(heur, heur_c, false);
    heur->callback([&] {
        const bool interval = heur_algo == "interval";
        const int k = interval ? heur_k : 2;
        const int C = interval ? heur_C : 0;
        std::string provenance = "kind=heuristic algo=" + heur_algo + " t=" + std::to_string(heur_t) +
                                 " k=" + std::to_string(k) + " C=" + std::to_string(C) +
                                 " trials=" + std::to_string(heur_c.trials) +
                                 " seed=" + std::to_string(heur_c.seed);
        echo_progress(provenance, 1);
        Output out;
        out.open(heur_c.out);
        auto& os = out.stream();
        if (heur_c.format == "csv") {
            os << "# " << provenance << "\n";
            os << "t,k,C,cuts_intervals,cuts_leftover,cut_count\n";
        }
        for (std::int64_t i = 0; i < heur_c.trials; ++i) {
            Necklace N = generate_uniform(k, heur_t, 1, {heur_c.seed, static_cast<std::uint64_t>(i)});
            FairSolution sol = interval ? interval_hypergraph_partition(N, heur_C)
                                        : incremental_two_thief(N);
            if (heur_c.format == "json")
                os << to_json(sol).dump() << "\n";
            else
                os << heur_t << ',' << k << ',' << C << ',' << sol.stats.cuts_intervals << ','
                   << sol.stats.cuts_leftover << ',' << sol.cut_count << "\n";
        }
    });

    // walk
    auto* walk = app.add_subcommand("walk", "random-walk non-return experiments");
    Common walk_c;
    std::string walk_mode = "pair";
    int walk_s = 2, walk_t = 3, walk_m = 4, walk_steps = 1;
    std::vector<int> walk_ngrid, walk_sgrid;
    walk->add_option("--mode", walk_mode, "pair | single | conditioned")
        ->check(CLI::IsMember({"pair", "single", "conditioned"}))
        ->default_val("pair");
    walk->add_option("--s", walk_s, "number of coupled walks (pair mode)")->default_val(2);
    walk->add_option("--t", walk_t, "type count (single/conditioned modes)")->default_val(3);
    walk->add_option("--m", walk_m, "multiplicity (conditioned mode)")->default_val(4);
    walk->add_option("--n-grid", walk_ngrid, "grid of N values (pair mode)")->delimiter(',');
    walk->add_option("--steps-grid", walk_sgrid, "grid of step counts (single mode)")->delimiter(',');
    walk->add_option("--steps", walk_steps, "step count (conditioned mode)")->default_val(1);
    add_common(walk, walk_c);
    walk->callback([&] {
        std::vector<CiRow> rows;
        std::string provenance;
        if (walk_mode == "pair") {
            if (walk_ngrid.empty()) throw std::invalid_argument("walk pair: need --n-grid");
            provenance = "kind=walk-pair s=" + std::to_string(walk_s) + " n_grid=" +
                         grid_string(walk_ngrid) + " trials=" + std::to_string(walk_c.trials) +
                         " seed=" + std::to_string(walk_c.seed);
            echo_progress(provenance, walk_c.threads);
            rows = nonreturn_probability(walk_s, walk_ngrid, walk_c.trials, {walk_c.seed, 0},
                                         walk_c.threads);
        } else if (walk_mode == "single") {
            if (walk_sgrid.empty()) throw std::invalid_argument("walk single: need --steps-grid");
            provenance = "kind=walk-single t=" + std::to_string(walk_t) + " steps_grid=" +
                         grid_string(walk_sgrid) + " trials=" + std::to_string(walk_c.trials) +
                         " seed=" + std::to_string(walk_c.seed);
            echo_progress(provenance, walk_c.threads);
            rows = single_nonreturn_grid(walk_t, walk_sgrid, walk_c.trials, {walk_c.seed, 0},
                                         walk_c.threads);
        } else {
            provenance = "kind=walk-conditioned t=" + std::to_string(walk_t) +
                         " m=" + std::to_string(walk_m) + " steps=" + std::to_string(walk_steps) +
                         " trials=" + std::to_string(walk_c.trials) +
                         " seed=" + std::to_string(walk_c.seed);
            echo_progress(provenance, walk_c.threads);
            rows.push_back(conditioned_nonreturn(walk_t, walk_m, walk_steps, walk_c.trials,
                                                 {walk_c.seed, 0}, walk_c.threads));
        }
        Output out;
        out.open(walk_c.out);
        emit_ci_rows(out, walk_c.format, provenance, "N_or_steps", rows);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const too_large_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
