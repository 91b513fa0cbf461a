#include "ksat/dimacs.hpp"
#include "ksat/experiments.hpp"
#include "ksat/hypergraph.hpp"
#include "ksat/independence.hpp"
#include "ksat/refutation.hpp"
#include "ksat/solver.hpp"
#include "ksat/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace ksat;

namespace {

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

std::string v_line(const assignment& a) {
    std::string s = "v";
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        s += ' ';
        s += std::to_string(a.bits[i] ? static_cast<int>(i + 1) : -static_cast<int>(i + 1));
    }
    s += " 0";
    return s;
}

// --m defaults to C(n,3) for the pairwise model, which fixes it anyway
std::uint64_t resolve_m(model mdl, int n, const CLI::Option* mopt, std::uint64_t m) {
    if (mopt->count() > 0) return m;
    if (mdl == model::pairwise) return triple_count(n);
    throw CLI::ValidationError("--m", "required for this model");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generators, independence checks, refutation statistics and solvers "
                 "for random 3-SAT"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);
    int exit_code = 0;

    // ---- generate ----
    struct {
        std::string model_s;
        int n = 0;
        std::uint64_t m = 0, seed = 0;
        bool emit_witness = false;
        std::string out;
    } gen;
    auto* gen_cmd = app.add_subcommand("generate", "sample an instance and emit DIMACS");
    gen_cmd->add_option("--model", gen.model_s, "ind|pairwise|threewise|univar")->required();
    gen_cmd->add_option("--n", gen.n, "variable count")->required();
    auto* gen_m = gen_cmd->add_option("--m", gen.m, "clause count (pairwise: defaults to C(n,3))");
    gen_cmd->add_option("--seed", gen.seed, "rng seed");
    gen_cmd->add_flag("--emit-witness", gen.emit_witness, "record the planted assignment, if any");
    gen_cmd->add_option("--out", gen.out, "output path (stdout when omitted)");
    gen_cmd->callback([&] {
        generator_spec spec;
        spec.mdl = model_from_name(gen.model_s);
        spec.n = gen.n;
        spec.m = resolve_m(spec.mdl, gen.n, gen_m, gen.m);
        spec.seed = gen.seed;
        gen_result r = generate(spec);
        const std::optional<assignment> witness =
            gen.emit_witness ? r.planted : std::optional<assignment>{};
        if (gen.out.empty()) write_dimacs(std::cout, r.inst, witness);
        else write_dimacs_file(gen.out, r.inst, witness);
    });

    // ---- check-independence ----
    struct {
        std::string model_s;
        int n = 0, k = 2;
        std::uint64_t m = 0, seed = 0, trials = 0;
        bool exact = false;
        std::string report;
    } chk;
    auto* chk_cmd = app.add_subcommand("check-independence",
                                       "verify k-wise uniformity of clause types");
    chk_cmd->add_option("--model", chk.model_s, "ind|pairwise|threewise|univar")->required();
    chk_cmd->add_option("--n", chk.n, "variable count")->required();
    auto* chk_m = chk_cmd->add_option("--m", chk.m, "clause count (pairwise: defaults to C(n,3))");
    chk_cmd->add_option("--seed", chk.seed, "rng seed");
    chk_cmd->add_option("--k", chk.k, "tuple size")->required();
    auto* chk_exact = chk_cmd->add_flag("--exact", chk.exact, "exact rational sweep (default)");
    auto* chk_trials =
        chk_cmd->add_option("--trials", chk.trials, "empirical chi-square with this many samples");
    chk_exact->excludes(chk_trials);
    chk_cmd->add_option("--report", chk.report, "report path (stdout when omitted)");
    chk_cmd->callback([&] {
        generator_spec spec;
        spec.mdl = model_from_name(chk.model_s);
        spec.n = chk.n;
        spec.m = resolve_m(spec.mdl, chk.n, chk_m, chk.m);
        spec.seed = chk.seed;
        independence_report rep = chk_trials->count() > 0
                                      ? test_kwise_empirical(spec, chk.k, chk.trials)
                                      : verify_kwise_exact(spec, chk.k);
        write_text(chk.report, report_to_json(rep, spec));
        std::cerr << (rep.pass ? "pass" : "FAIL") << " k=" << chk.k << '\n';
        if (!rep.pass) exit_code = 1;
    });

    // ---- refute ----
    struct {
        std::string file, method = "both", report;
    } ref;
    auto* ref_cmd = app.add_subcommand("refute", "look for an unsatisfiability certificate");
    ref_cmd->add_option("file", ref.file, "DIMACS input")->required()->check(CLI::ExistingFile);
    ref_cmd->add_option("--method", ref.method, "xi|kappa|both")
        ->check(CLI::IsMember({"xi", "kappa", "both"}));
    ref_cmd->add_option("--report", ref.report, "certificate path (stdout when omitted)");
    ref_cmd->callback([&] {
        dimacs_file in = read_dimacs_file(ref.file);
        std::optional<certificate> cert;
        if (ref.method == "xi" || ref.method == "both") cert = refute_by_xi(in.inst);
        if (!cert && (ref.method == "kappa" || ref.method == "both"))
            cert = refute_by_kappa(in.inst);
        write_text(ref.report, certificate_to_json(cert));
        if (cert) {
            std::cerr << "s UNSATISFIABLE (" << cert->statistic << " certificate)\n";
            exit_code = 20;
        } else {
            std::cerr << "c no certificate\n";
        }
    });

    // ---- certify-sat ----
    struct {
        std::string file, report;
    } cert_sat;
    auto* sat_cmd = app.add_subcommand("certify-sat",
                                       "solve by leaf elimination when the instance is forest-shaped");
    sat_cmd->add_option("file", cert_sat.file, "DIMACS input")->required()->check(CLI::ExistingFile);
    sat_cmd->add_option("--report", cert_sat.report, "certificate path (stdout when omitted)");
    sat_cmd->callback([&] {
        dimacs_file in = read_dimacs_file(cert_sat.file);
        std::optional<assignment> w = leaf_elimination_solve(in.inst);
        std::optional<certificate> cert;
        if (w) {
            certificate c;
            c.verdict = "SAT";
            c.statistic = "leaf";
            c.value = in.inst.clauses.size();
            c.m_tilde = deduplicate(in.inst).clauses.size();
            c.witness = *w;
            cert = std::move(c);
        }
        write_text(cert_sat.report, certificate_to_json(cert));
        if (w) {
            std::cout << "s SATISFIABLE\n" << v_line(*w) << '\n';
            exit_code = 10;
        } else {
            std::cout << "c no certificate (instance is not forest-shaped)\n";
        }
    });

    // ---- expected-counts ----
    struct {
        int n = 0, k = 2;
        std::uint64_t m = 0;
    } exp_args;
    auto* exp_cmd = app.add_subcommand("expected-counts",
                                       "expected path and cycle counts for independent triples");
    exp_cmd->add_option("--n", exp_args.n, "variable count")->required();
    exp_cmd->add_option("--m", exp_args.m, "clause count")->required();
    exp_cmd->add_option("--k", exp_args.k, "structure size cutoff")->required();
    exp_cmd->callback([&] {
        expected_counts_t c = expected_counts(exp_args.n, exp_args.m, exp_args.k);
        nlohmann::ordered_json j;
        j["n"] = exp_args.n;
        j["m"] = exp_args.m;
        j["k"] = exp_args.k;
        j["ordered_path_tuples"] = to_fraction_string(c.ordered_path_tuples);
        j["unordered_paths"] = to_fraction_string(c.unordered_paths);
        nlohmann::ordered_json cy = nlohmann::ordered_json::object();
        for (const auto& [len, val] : c.cycles) cy[std::to_string(len)] = to_fraction_string(val);
        j["cycles"] = std::move(cy);
        j["unsat_prob_upper"] = to_fraction_string(c.unsat_prob_upper);
        j["unsat_prob_upper_approx"] = to_double(c.unsat_prob_upper);
        std::cout << j.dump(2) << '\n';
    });

    // ---- solve ----
    struct {
        std::string file, method = "dpll";
    } sol;
    auto* sol_cmd = app.add_subcommand("solve", "decide satisfiability or count models");
    sol_cmd->add_option("file", sol.file, "DIMACS input")->required()->check(CLI::ExistingFile);
    sol_cmd->add_option("--method", sol.method, "brute|dpll|count")
        ->check(CLI::IsMember({"brute", "dpll", "count"}));
    sol_cmd->callback([&] {
        dimacs_file in = read_dimacs_file(sol.file);
        if (sol.method == "count") {
            std::uint64_t models = count_models(in.inst);
            std::cout << "c models " << models << '\n';
            std::cout << (models > 0 ? "s SATISFIABLE\n" : "s UNSATISFIABLE\n");
            exit_code = models > 0 ? 10 : 20;
            return;
        }
        solve_result r = sol.method == "brute" ? brute_force(in.inst) : dpll(in.inst);
        std::cout << "c decisions " << r.decisions << " propagations " << r.propagations << '\n';
        if (r.v == verdict::sat) {
            std::cout << "s SATISFIABLE\n" << v_line(*r.witness) << '\n';
            exit_code = 10;
        } else {
            std::cout << "s UNSATISFIABLE\n";
            exit_code = 20;
        }
    });

    // ---- experiment ----
    struct {
        std::string config, out, csv;
        int jobs = 0;
    } exp_run;
    auto* run_cmd = app.add_subcommand("experiment", "run a seeded trial batch from a JSON config");
    run_cmd->add_option("--config", exp_run.config, "config path")
        ->required()
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--out", exp_run.out, "report path (stdout when omitted)");
    run_cmd->add_option("--csv", exp_run.csv, "also write one CSV row per trial");
    run_cmd->add_option("--jobs", exp_run.jobs, "worker threads (0 = all)");
    run_cmd->callback([&] {
        std::ifstream cfg_in(exp_run.config);
        nlohmann::json cfg_json = nlohmann::json::parse(cfg_in);
        experiment_config cfg = config_from_json(cfg_json);
        std::vector<experiment_report> reports;
        if (cfg.sweep_over) {
            reports = sweep(cfg, exp_run.jobs);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(report_to_json(r));
            write_text(exp_run.out, arr.dump(2));
        } else {
            reports.push_back(run_experiment(cfg, exp_run.jobs));
            write_text(exp_run.out, report_to_json(reports.front()).dump(2));
        }
        if (!exp_run.csv.empty()) write_text(exp_run.csv, reports_to_csv(reports));
        for (const auto& r : reports)
            std::cerr << "c n=" << r.config.n << " m=" << r.config.effective_m() << " trials="
                      << r.agg.trials << " sat=" << r.agg.sat_true << " unsat=" << r.agg.sat_false
                      << " wall_ms=" << r.wall_ms << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
