#include "ksat/experiments.hpp"
#include "ksat/hypergraph.hpp"
#include "ksat/refutation.hpp"
#include "ksat/solver.hpp"
#include "ksat/stats.hpp"
#include "ksat/version.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ksat {

namespace {

// floor(x^(1/k)) with exact integer verification
std::uint64_t iroot(unsigned __int128 x, int k) {
    std::uint64_t r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(x), 1.0 / k)));
    auto pow_le = [&](std::uint64_t b) {
        unsigned __int128 p = 1;
        for (int i = 0; i < k; ++i) {
            p *= b;
            if (p > x) return false;
        }
        return p <= x;
    };
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

} // namespace

std::uint64_t experiment_config::effective_m() const {
    if (mdl == model::pairwise) return triple_count(n);
    if (m_rule) {
        // floor(n^(1-1/k) / 12) = floor(floor((n^(k-1))^(1/k)) / 12)
        unsigned __int128 p = 1;
        for (int i = 0; i < m_rule->k - 1; ++i) p *= static_cast<unsigned>(n);
        return iroot(p, m_rule->k) / 12;
    }
    return m;
}

void experiment_config::validate() const {
    if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");
    if (record.solver != "none" && record.solver != "dpll" && record.solver != "brute")
        throw std::invalid_argument("solver must be one of none, dpll, brute");
    if (record.solver == "brute" && n > 30)
        throw std::invalid_argument("brute solver handles n <= 30 only");
    if (m_rule && m_rule->k < 2) throw std::invalid_argument("m rule needs k >= 2");
    if (sweep_over) {
        if (sweep_over->param != "n" && sweep_over->param != "m")
            throw std::invalid_argument("sweep parameter must be n or m");
        if (sweep_over->values.empty()) throw std::invalid_argument("sweep needs at least one value");
        return; // per-point generator validation happens in sweep()
    }
    generator_spec g{mdl, n, effective_m(), seed, 1};
    g.validate();
}

namespace {

trial_record run_trial(const experiment_config& cfg, const generator_spec& gspec, std::uint64_t t) {
    rng_stream rng = substream(cfg.seed, t);
    gen_result g = generate_with_stream(gspec, rng);
    const record_options& o = cfg.record;

    trial_record r;
    r.trial = t;
    if (o.witness && g.planted) r.witness_ok = evaluate(g.inst, *g.planted).satisfied ? 1 : 0;
    if (o.leaf) r.leaf_sat = leaf_elimination_solve(g.inst) ? 1 : 0;
    if (o.xi) r.xi_value = static_cast<std::int64_t>(xi(g.inst));
    if (o.kappa) {
        instance d = deduplicate(g.inst);
        r.kappa_value = static_cast<std::int64_t>(kappa_serial(d));
        r.m_tilde = static_cast<std::int64_t>(d.clauses.size());
    }
    if (o.refute_xi) r.xi_cert = refute_by_xi(g.inst) ? 1 : 0;
    if (o.refute_kappa) r.kappa_cert = refute_by_kappa(g.inst) ? 1 : 0;

    if (o.solver == "dpll") {
        r.sat = dpll(g.inst).v == verdict::sat ? 1 : 0;
    } else if (o.solver == "brute") {
        r.sat = brute_force_serial(g.inst).v == verdict::sat ? 1 : 0;
    } else if (r.witness_ok == 1 || r.leaf_sat == 1) {
        r.sat = 1; // constructive evidence only; otherwise unknown
    }
    return r;
}

aggregates fold_aggregates(const std::vector<trial_record>& recs) {
    aggregates a;
    a.trials = recs.size();
    double xs = 0, xs2 = 0, ks = 0, ks2 = 0, ms = 0;
    std::uint64_t xn = 0, kn = 0, mn = 0;
    for (const auto& r : recs) {
        if (r.sat == 1) a.sat_true++;
        else if (r.sat == 0) a.sat_false++;
        else a.sat_unknown++;
        if (r.witness_ok >= 0) {
            a.witness_checked++;
            if (r.witness_ok == 1) a.witness_ok++;
        }
        if (r.leaf_sat >= 0) {
            a.leaf_run++;
            if (r.leaf_sat == 1) a.leaf_sat++;
        }
        if (r.xi_cert == 1) a.xi_certs++;
        if (r.kappa_cert == 1) a.kappa_certs++;
        if (r.xi_value >= 0) {
            xn++;
            xs += static_cast<double>(r.xi_value);
            xs2 += static_cast<double>(r.xi_value) * static_cast<double>(r.xi_value);
        }
        if (r.kappa_value >= 0) {
            kn++;
            ks += static_cast<double>(r.kappa_value);
            ks2 += static_cast<double>(r.kappa_value) * static_cast<double>(r.kappa_value);
        }
        if (r.m_tilde >= 0) {
            mn++;
            ms += static_cast<double>(r.m_tilde);
        }
    }
    std::uint64_t decided = a.sat_true + a.sat_false;
    if (decided > 0) {
        a.sat_frequency = static_cast<double>(a.sat_true) / static_cast<double>(decided);
        interval w = wilson_interval(a.sat_true, decided);
        a.sat_wilson_low = w.low;
        a.sat_wilson_high = w.high;
    }
    if (xn > 0) a.xi_mean = xs / static_cast<double>(xn);
    if (xn > 1) a.xi_var = (xs2 - xs * xs / static_cast<double>(xn)) / static_cast<double>(xn - 1);
    if (kn > 0) a.kappa_mean = ks / static_cast<double>(kn);
    if (kn > 1) a.kappa_var = (ks2 - ks * ks / static_cast<double>(kn)) / static_cast<double>(kn - 1);
    if (mn > 0) a.m_tilde_mean = ms / static_cast<double>(mn);
    return a;
}

} // namespace

experiment_report run_experiment(const experiment_config& cfg, int jobs) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    generator_spec gspec{cfg.mdl, cfg.n, cfg.effective_m(), cfg.seed, 1};
    gspec.validate();

    std::vector<trial_record> recs(cfg.trials);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 4)
    for (long long t = 0; t < static_cast<long long>(cfg.trials); ++t)
        recs[static_cast<std::size_t>(t)] = run_trial(cfg, gspec, static_cast<std::uint64_t>(t));

    experiment_report rep;
    rep.config = cfg;
    rep.agg = fold_aggregates(recs);
    rep.trials = std::move(recs);
    rep.version = version;
    rep.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
    return rep;
}

std::vector<experiment_report> sweep(const experiment_config& cfg, int jobs) {
    if (!cfg.sweep_over) throw std::invalid_argument("sweep requires a sweep specification");
    cfg.validate();
    const sweep_spec& s = *cfg.sweep_over;
    std::vector<experiment_report> out;
    out.reserve(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        experiment_config point = cfg;
        point.sweep_over.reset();
        if (s.param == "n") point.n = static_cast<int>(s.values[i]);
        else point.m = s.values[i];
        point.seed = splitmix64(cfg.seed ^ (0xA5EEDULL + i)); // decorrelate sweep points
        out.push_back(run_experiment(point, jobs));
    }
    return out;
}

nlohmann::json config_to_json(const experiment_config& cfg) {
    nlohmann::json j;
    j["model"] = model_name(cfg.mdl);
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    if (cfg.m_rule) j["m_rule"] = {{"k", cfg.m_rule->k}};
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["record"] = {{"xi", cfg.record.xi},
                   {"kappa", cfg.record.kappa},
                   {"leaf", cfg.record.leaf},
                   {"witness", cfg.record.witness},
                   {"refute_xi", cfg.record.refute_xi},
                   {"refute_kappa", cfg.record.refute_kappa},
                   {"solver", cfg.record.solver}};
    if (cfg.sweep_over) j["sweep"] = {{"param", cfg.sweep_over->param}, {"values", cfg.sweep_over->values}};
    return j;
}

experiment_config config_from_json(const nlohmann::json& j) {
    experiment_config c;
    c.mdl = model_from_name(j.value("model", std::string("ind")));
    c.n = j.value("n", 0);
    c.m = j.value("m", std::uint64_t{0});
    if (j.contains("m_rule") && !j["m_rule"].is_null()) {
        lst_rule r;
        r.k = j["m_rule"].value("k", 2);
        c.m_rule = r;
    }
    c.trials = j.value("trials", std::uint64_t{0});
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("record")) {
        const auto& r = j["record"];
        c.record.xi = r.value("xi", false);
        c.record.kappa = r.value("kappa", false);
        c.record.leaf = r.value("leaf", false);
        c.record.witness = r.value("witness", false);
        c.record.refute_xi = r.value("refute_xi", false);
        c.record.refute_kappa = r.value("refute_kappa", false);
        c.record.solver = r.value("solver", std::string("none"));
    }
    if (j.contains("sweep") && !j["sweep"].is_null()) {
        sweep_spec s;
        s.param = j["sweep"].value("param", std::string("n"));
        s.values = j["sweep"].value("values", std::vector<std::uint64_t>{});
        c.sweep_over = s;
    }
    return c;
}

nlohmann::json report_to_json(const experiment_report& rep) {
    nlohmann::json j;
    j["version"] = rep.version;
    j["config"] = config_to_json(rep.config);
    j["wall_ms"] = rep.wall_ms;
    j["aggregates"] = {{"trials", rep.agg.trials},
                       {"sat_true", rep.agg.sat_true},
                       {"sat_false", rep.agg.sat_false},
                       {"sat_unknown", rep.agg.sat_unknown},
                       {"sat_frequency", rep.agg.sat_frequency},
                       {"sat_wilson_low", rep.agg.sat_wilson_low},
                       {"sat_wilson_high", rep.agg.sat_wilson_high},
                       {"witness_checked", rep.agg.witness_checked},
                       {"witness_ok", rep.agg.witness_ok},
                       {"leaf_run", rep.agg.leaf_run},
                       {"leaf_sat", rep.agg.leaf_sat},
                       {"xi_certs", rep.agg.xi_certs},
                       {"kappa_certs", rep.agg.kappa_certs},
                       {"xi_mean", rep.agg.xi_mean},
                       {"xi_var", rep.agg.xi_var},
                       {"kappa_mean", rep.agg.kappa_mean},
                       {"kappa_var", rep.agg.kappa_var},
                       {"m_tilde_mean", rep.agg.m_tilde_mean}};
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& r : rep.trials)
        trials.push_back({{"trial", r.trial},
                          {"sat", r.sat},
                          {"witness_ok", r.witness_ok},
                          {"leaf_sat", r.leaf_sat},
                          {"xi", r.xi_value},
                          {"kappa", r.kappa_value},
                          {"m_tilde", r.m_tilde},
                          {"xi_cert", r.xi_cert},
                          {"kappa_cert", r.kappa_cert}});
    j["trials"] = std::move(trials);
    return j;
}

std::string reports_to_csv(const std::vector<experiment_report>& reports) {
    std::ostringstream os;
    os << "model,n,m,seed,trial,sat,witness_ok,leaf_sat,xi,kappa,m_tilde,xi_cert,kappa_cert\n";
    auto cell = [](std::int64_t v) { return v < 0 ? std::string() : std::to_string(v); };
    for (const auto& rep : reports)
        for (const auto& r : rep.trials)
            os << model_name(rep.config.mdl) << ',' << rep.config.n << ',' << rep.config.effective_m()
               << ',' << rep.config.seed << ',' << r.trial << ',' << cell(r.sat) << ','
               << cell(r.witness_ok) << ',' << cell(r.leaf_sat) << ',' << cell(r.xi_value) << ','
               << cell(r.kappa_value) << ',' << cell(r.m_tilde) << ',' << cell(r.xi_cert) << ','
               << cell(r.kappa_cert) << '\n';
    return os.str();
}

} // namespace ksat
