#pragma once

#include "ksat/generators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ksat {

// what to compute per trial; solver is "none", "dpll" or "brute"
struct record_options {
    bool xi = false;
    bool kappa = false;
    bool leaf = false;
    bool witness = false;
    bool refute_xi = false;
    bool refute_kappa = false;
    std::string solver = "none";
};

struct lst_rule {
    int k = 2; // m = floor(n^(1-1/k) / 12)
};

struct sweep_spec {
    std::string param; // "n" or "m"
    std::vector<std::uint64_t> values;
};

struct experiment_config {
    model mdl = model::independent;
    int n = 0;
    std::uint64_t m = 0;               // ignored for pairwise (m = C(n,3))
    std::optional<lst_rule> m_rule;    // overrides m when set
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    record_options record;
    std::optional<sweep_spec> sweep_over;

    std::uint64_t effective_m() const;
    void validate() const;
};

struct trial_record {
    std::uint64_t trial = 0;
    int sat = -1;                 // 1 / 0 / -1 unknown
    int witness_ok = -1;          // planted witness satisfies the instance
    int leaf_sat = -1;            // leaf elimination produced a verified witness
    std::int64_t xi_value = -1;
    std::int64_t kappa_value = -1;
    std::int64_t m_tilde = -1;
    int xi_cert = -1;             // refute_by_xi returned a certificate
    int kappa_cert = -1;
};

struct aggregates {
    std::uint64_t trials = 0;
    std::uint64_t sat_true = 0, sat_false = 0, sat_unknown = 0;
    double sat_frequency = 0.0;   // over decided trials
    double sat_wilson_low = 0.0, sat_wilson_high = 0.0;
    std::uint64_t witness_checked = 0, witness_ok = 0;
    std::uint64_t leaf_sat = 0, leaf_run = 0;
    std::uint64_t xi_certs = 0, kappa_certs = 0;
    double xi_mean = 0.0, xi_var = 0.0;
    double kappa_mean = 0.0, kappa_var = 0.0;
    double m_tilde_mean = 0.0;
};

struct experiment_report {
    experiment_config config;
    std::vector<trial_record> trials;
    aggregates agg;
    std::string version;
    std::uint64_t wall_ms = 0;
};

// Trial t uses substream(seed, t); records land in trial order, aggregates are
// folded serially over that order, so the report does not depend on jobs.
experiment_report run_experiment(const experiment_config& cfg, int jobs = 0);

// one report per sweep value (config.sweep_over must be set)
std::vector<experiment_report> sweep(const experiment_config& cfg, int jobs = 0);

nlohmann::json config_to_json(const experiment_config& cfg);
experiment_config config_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const experiment_report& rep);

// one row per trial; sweep reports are concatenated with their sweep value
std::string reports_to_csv(const std::vector<experiment_report>& reports);

} // namespace ksat
