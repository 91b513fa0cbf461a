// Compares the serial reference implementations against the OpenMP kernels on
// fixed workloads and checks that both sides produce identical results.
#include "ksat/experiments.hpp"
#include "ksat/independence.hpp"
#include "ksat/refutation.hpp"
#include "ksat/solver.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace ksat;

namespace {

int mismatches = 0;

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
    if (!equal) mismatches++;
    std::printf("%-34s %10.1f ms %10.1f ms %7.2fx  %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "results equal" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("threads available: %d\n", omp_get_max_threads());
    std::printf("%-34s %13s %13s %8s\n", "workload", "serial", "parallel", "speedup");

    {
        generator_spec spec{model::threewise, 6, 6, 1, 1};
        independence_report rs, rp;
        double ts = time_ms([&] { rs = verify_kwise_exact_serial(spec, 3); });
        double tp = time_ms([&] { rp = verify_kwise_exact(spec, 3); });
        row("exact 3-wise sweep (n=6, m=6)", ts, tp,
            rs.worst_deviation == rp.worst_deviation && rs.worst_tuple == rp.worst_tuple);
    }

    {
        generator_spec spec{model::independent, 40, 100000, 2, 1};
        gen_result g = generate(spec);
        std::uint64_t ks = 0, kp = 0;
        double ts = time_ms([&] { ks = kappa_serial(g.inst); });
        double tp = time_ms([&] { kp = kappa(g.inst); });
        row("kappa (n=40, m=100000)", ts, tp, ks == kp);
    }

    {
        generator_spec spec{model::independent, 24, 103, 3, 1};
        gen_result g = generate(spec);
        solve_result ss, sp;
        double ts = time_ms([&] { ss = brute_force_serial(g.inst); });
        double tp = time_ms([&] { sp = brute_force(g.inst); });
        row("brute force (n=24, m=103)", ts, tp, ss.v == sp.v && ss.witness == sp.witness);
    }

    {
        generator_spec spec{model::independent, 22, 44, 4, 1};
        gen_result g = generate(spec);
        std::uint64_t cs = 0, cp = 0;
        double ts = time_ms([&] { cs = count_models_serial(g.inst); });
        double tp = time_ms([&] { cp = count_models(g.inst); });
        row("model count (n=22, m=44)", ts, tp, cs == cp);
    }

    {
        experiment_config cfg;
        cfg.mdl = model::threewise;
        cfg.n = 30;
        cfg.m = 40;
        cfg.trials = 2000;
        cfg.seed = 5;
        cfg.record.xi = true;
        cfg.record.kappa = true;
        cfg.record.leaf = true;
        cfg.record.witness = true;
        cfg.record.solver = "dpll";
        experiment_report rs, rp;
        double ts = time_ms([&] { rs = run_experiment(cfg, 1); });
        double tp = time_ms([&] { rp = run_experiment(cfg); });
        rs.wall_ms = rp.wall_ms = 0;
        row("experiment (2000 trials, n=30)", ts, tp,
            report_to_json(rs).dump() == report_to_json(rp).dump());
    }

    if (mismatches > 0) std::printf("%d workload(s) disagreed between serial and parallel\n", mismatches);
    return mismatches;
}
