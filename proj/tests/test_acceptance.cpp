// Acceptance gate: runs the twelve release criteria in order, prints one
// PASS/FAIL line per criterion and exits with the number of failures.
#include "ksat/experiments.hpp"
#include "ksat/hypergraph.hpp"
#include "ksat/independence.hpp"
#include "ksat/refutation.hpp"
#include "ksat/solver.hpp"
#include "ksat/stats.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

using namespace ksat;

namespace {

struct gate {
    int failures = 0;
    std::array<bool, 13> passed{};

    template <typename Body>
    void run(int idx, const char* title, double limit_seconds, Body&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (limit_seconds > 0 && secs > limit_seconds) {
            ok = false;
            detail += detail.empty() ? "" : "; ";
            detail += "over time limit";
        }
        passed[static_cast<std::size_t>(idx)] = ok;
        if (!ok) failures++;
        std::printf("%s criterion %d: %s [%s] (%.1f s)\n", ok ? "PASS" : "FAIL", idx, title,
                    detail.c_str(), secs);
        std::fflush(stdout);
    }
};

std::string frac(const rational& r) { return to_fraction_string(r); }

// uniform random triples as a hypergraph, signs irrelevant
variable_hypergraph random_triples(int n, int m, rng_stream& rng) {
    variable_hypergraph h;
    h.n = n;
    const std::uint64_t N = triple_count(n);
    for (int e = 0; e < m; ++e) h.edges.push_back(triple_unrank(rng.below(N), n));
    return h;
}

// instance of m_tilde distinct clause types all satisfied by a random sigma;
// per variable triple exactly one sign word is falsified, the other seven stay
instance planted_dense(int n, std::uint64_t m_tilde, rng_stream& rng, assignment& sigma) {
    sigma.bits.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) sigma.bits[static_cast<std::size_t>(v)] = rng.coin();
    std::vector<std::uint64_t> ids;
    const std::uint64_t N = triple_count(n);
    ids.reserve(7 * N);
    for (std::uint64_t r = 0; r < N; ++r) {
        auto t = triple_unrank(r, n);
        std::uint64_t bad = 0;
        for (int i = 0; i < 3; ++i)
            if (sigma.bits[static_cast<std::size_t>(t[static_cast<std::size_t>(i)]) - 1])
                bad |= std::uint64_t{1} << i;
        for (std::uint64_t w = 0; w < 8; ++w)
            if (w != bad) ids.push_back(r * 8 + w);
    }
    instance f;
    f.n = n;
    for (std::uint64_t j = 0; j < m_tilde; ++j) {
        std::uint64_t pick = j + rng.below(ids.size() - j);
        std::swap(ids[j], ids[pick]);
        f.clauses.push_back(type_id_to_clause(ids[j], n));
    }
    return f;
}

struct corpus_stats {
    std::uint64_t instances = 0;
    std::uint64_t universal_violations = 0;
    std::uint64_t sat_instances = 0;
    std::uint64_t sat_violations = 0;
    std::uint64_t bad_slice_witnesses = 0;
};

void corpus_check(const instance& f, bool known_sat, corpus_stats& cs) {
    instance d = deduplicate(f);
    std::uint64_t kap = kappa_serial(d);
    kappa_bounds_t b = kappa_bounds(f.n, f.clauses.size(), d.clauses.size());
    cs.instances++;
    if (rational(kap) < b.universal_lower) cs.universal_violations++;
    bool is_sat = known_sat || brute_force_serial(f).v == verdict::sat;
    if (is_sat) {
        cs.sat_instances++;
        if (rational(kap) < b.sat_lower) cs.sat_violations++;
    }
}

} // namespace

int main() {
    gate g;
    corpus_stats corpus;

    g.run(1, "pairwise clause types are exactly 2-wise uniform at n=4 and n=5", 120,
          [](std::string& detail) {
              generator_spec s4{model::pairwise, 4, 4, 101, 1};
              independence_report r4 = verify_kwise_exact(s4, 2);
              generator_spec s5{model::pairwise, 5, 10, 101, 1};
              independence_report r5 = verify_kwise_exact(s5, 2);
              detail = "worst n=4 " + frac(r4.worst_deviation) + ", n=5 " + frac(r5.worst_deviation);
              return r4.pass && r4.worst_deviation == 0 && r5.pass && r5.worst_deviation == 0;
          });

    g.run(2, "threewise clause types are exactly 3-wise uniform at n=6, m=6 over 160^3 triples",
          1800, [](std::string& detail) {
              generator_spec s{model::threewise, 6, 6, 202, 1};
              independence_report r = verify_kwise_exact(s, 3);
              detail = "worst " + frac(r.worst_deviation) + " over " +
                       std::to_string(r.tuples_checked) + " tuples";
              return r.pass && r.worst_deviation == 0 && r.tuples_checked == 4096000ull;
          });

    g.run(3, "pairwise 3-tuple deviation at n=5 is exactly 9/512000", 0,
          [](std::string& detail) {
              generator_spec s{model::pairwise, 5, 10, 303, 1};
              independence_report r = verify_kwise_exact(s, 3);
              detail = "worst " + frac(r.worst_deviation);
              return !r.pass && r.worst_deviation == rational(9, 512000);
          });

    g.run(4, "planted witnesses verify and SAT frequency clears the floor (n=10 and n=12)", 0,
          [](std::string& detail) {
              const std::uint64_t trials = 1000;
              generator_spec pw{model::pairwise, 10, 120, 404, 1};
              std::uint64_t sat = 0, planted_seen = 0, witness_good = 0;
              for (std::uint64_t t = 0; t < trials; ++t) {
                  rng_stream rng = substream(pw.seed, t);
                  gen_result r = generate_with_stream(pw, rng);
                  if (r.planted) {
                      planted_seen++;
                      if (evaluate(r.inst, *r.planted).satisfied) {
                          witness_good++;
                          sat++;
                      }
                  } else if (dpll(r.inst).v == verdict::sat) {
                      sat++;
                  }
              }
              double freq = static_cast<double>(sat) / trials;
              double floor_a =
                  1.0 - 1.0 / 120 - 3.0 * wilson_interval(sat, trials).half_width();
              bool ok_a = planted_seen > 0 && witness_good == planted_seen && freq >= floor_a;

              generator_spec tw{model::threewise, 12, 38, 414, 1};
              std::uint64_t sat2 = 0;
              for (std::uint64_t t = 0; t < trials; ++t) {
                  rng_stream rng = substream(tw.seed, t);
                  gen_result r = generate_with_stream(tw, rng);
                  if (dpll(r.inst).v == verdict::sat) sat2++;
              }
              double freq2 = static_cast<double>(sat2) / trials;
              double sigma = std::sqrt(freq2 * (1.0 - freq2) / trials);
              bool ok_b = freq2 >= 2.0 / 3.0 - 3.0 * sigma;

              std::ostringstream os;
              os << "pairwise freq " << freq << " floor " << floor_a << ", witnesses "
                 << witness_good << "/" << planted_seen << "; threewise freq " << freq2;
              detail = os.str();
              return ok_a && ok_b;
          });

    g.run(5, "mean duplicate-pair count over 10^6 draws at n=4, m=9 sits within 3 sigma of 9/8",
          0, [](std::string& detail) {
              generator_spec s{model::independent, 4, 9, 505, 1};
              rng_stream rng(505);
              const std::uint64_t trials = 1000000;
              double sum = 0, sumsq = 0;
              for (std::uint64_t t = 0; t < trials; ++t) {
                  gen_result r = generate_with_stream(s, rng);
                  double x = static_cast<double>(xi(r.inst));
                  sum += x;
                  sumsq += x * x;
              }
              double mean = sum / trials;
              double var = (sumsq - sum * sum / trials) / (trials - 1);
              double se = std::sqrt(var / trials);
              std::ostringstream os;
              os << "mean " << mean << " target 1.125 se " << se;
              detail = os.str();
              return std::abs(mean - 1.125) <= 3 * se;
          });

    g.run(6, "kappa never falls below the universal bound on a 10^4-instance corpus", 0,
          [&corpus](std::string& detail) {
              rng_stream rng(606);
              // planted-dense slice: every clause satisfied by one assignment,
              // distinct types, m_tilde past the vacuity knee 6n^2
              for (int i = 0; i < 300; ++i) {
                  int n = 8 + i % 3;
                  std::uint64_t lo = 6ull * n * n + 1;
                  std::uint64_t hi = 7 * clause_type_count(n) / 8;
                  std::uint64_t mt = lo + rng.below(hi - lo + 1);
                  assignment sigma;
                  instance f = planted_dense(n, mt, rng, sigma);
                  if (!evaluate(f, sigma).satisfied) corpus.bad_slice_witnesses++;
                  corpus_check(f, true, corpus);
              }
              // random mix across the three generators
              for (int j = 0; j < 9700; ++j) {
                  generator_spec spec;
                  spec.parity = 1;
                  spec.seed = 0;
                  switch (j % 3) {
                  case 0:
                      spec.mdl = model::independent;
                      spec.n = 4 + static_cast<int>(rng.below(7));
                      spec.m = 1 + rng.below(2000);
                      break;
                  case 1:
                      spec.mdl = model::pairwise;
                      spec.n = 4 + static_cast<int>(rng.below(7));
                      spec.m = triple_count(spec.n);
                      break;
                  default:
                      spec.mdl = model::threewise;
                      spec.n = 6 + static_cast<int>(rng.below(5));
                      spec.m = 2 * (1 + rng.below(triple_count(spec.n) / 6));
                      break;
                  }
                  gen_result r = generate_with_stream(spec, rng);
                  corpus_check(r.inst, false, corpus);
              }
              std::ostringstream os;
              os << corpus.instances << " instances, " << corpus.universal_violations
                 << " universal violations";
              detail = os.str();
              return corpus.instances == 10000 && corpus.universal_violations == 0;
          });

    g.run(7, "kappa of satisfiable corpus instances never falls below the SAT bound", 0,
          [&corpus](std::string& detail) {
              std::ostringstream os;
              os << corpus.sat_instances << " satisfiable, " << corpus.sat_violations
                 << " violations, " << corpus.bad_slice_witnesses << " bad slice witnesses";
              detail = os.str();
              return corpus.sat_instances >= 300 && corpus.sat_violations == 0 &&
                     corpus.bad_slice_witnesses == 0;
          });

    g.run(8, "refutation certificates are sound on 10^4 instances and at least one fires", 0,
          [](std::string& detail) {
              rng_stream rng(808);
              std::uint64_t true_certs = 0, false_certs = 0, leaf_solved = 0, leaf_bad = 0;
              for (int i = 0; i < 10000; ++i) {
                  generator_spec spec;
                  spec.mdl = model::independent;
                  spec.seed = 0;
                  spec.parity = 1;
                  if (i % 2 == 0) {
                      spec.n = 4;
                      spec.m = 29 + rng.below(272);
                  } else {
                      spec.n = 5 + static_cast<int>(rng.below(8));
                      spec.m = 1 + rng.below(4ull * static_cast<std::uint64_t>(spec.n));
                  }
                  gen_result r = generate_with_stream(spec, rng);
                  bool fired = refute_by_xi(r.inst).has_value() ||
                               refute_by_kappa(r.inst).has_value();
                  if (fired) {
                      if (brute_force_serial(r.inst).v == verdict::unsat) true_certs++;
                      else false_certs++;
                  }
                  if (auto w = leaf_elimination_solve(r.inst)) {
                      if (evaluate(r.inst, *w).satisfied) leaf_solved++;
                      else leaf_bad++;
                  }
              }
              std::ostringstream os;
              os << true_certs << " true certificates, " << false_certs << " false, "
                 << leaf_solved << " leaf-solved, " << leaf_bad << " bad leaf witnesses";
              detail = os.str();
              return false_certs == 0 && true_certs >= 1 && leaf_bad == 0;
          });

    g.run(9, "four-clause classifier matches the generic count on 10^5 random quadruples", 0,
          [](std::string& detail) {
              rng_stream rng(909);
              const std::uint64_t M = clause_type_count(5);
              std::uint64_t mismatches = 0;
              for (int i = 0; i < 100000; ++i) {
                  std::array<clause, 4> quad;
                  for (auto& c : quad) c = type_id_to_clause(rng.below(M), 5);
                  quad_case qc = classify_four_clauses(quad); // may throw logic_error
                  std::uint64_t mapped = qc == quad_case::one ? 1 : qc == quad_case::two ? 2 : 0;
                  if (mapped != count_k22_generic(quad)) mismatches++;
              }
              detail = std::to_string(mismatches) + " mismatches";
              return mismatches == 0;
          });

    g.run(10, "cycle counts meet expectations: length 2 at (5,3), length 3 at (7,4)", 0,
          [](std::string& detail) {
              const int trials = 100000;
              rng_stream rng(1010);
              double e2 = to_double(expected_counts(5, 3, 3).cycles.at(2));
              double e3 = to_double(expected_counts(7, 4, 4).cycles.at(3));
              double s2 = 0, q2 = 0, s3 = 0, q3 = 0;
              for (int t = 0; t < trials; ++t) {
                  double c2 = static_cast<double>(count_berge_cycles(random_triples(5, 3, rng), 2));
                  s2 += c2;
                  q2 += c2 * c2;
                  double c3 = static_cast<double>(count_berge_cycles(random_triples(7, 4, rng), 3));
                  s3 += c3;
                  q3 += c3 * c3;
              }
              double m2 = s2 / trials, m3 = s3 / trials;
              double se2 = std::sqrt((q2 - s2 * s2 / trials) / (trials - 1) / trials);
              double se3 = std::sqrt((q3 - s3 * s3 / trials) / (trials - 1) / trials);
              std::ostringstream os;
              os << "length-2 mean " << m2 << " expected " << e2 << ", length-3 mean " << m3
                 << " expected " << e3;
              detail = os.str();
              return std::abs(m2 - e2) <= 4 * se2 && std::abs(m3 - e3) <= 4 * se3;
          });

    g.run(11, "sparse instances at the size rule are leaf-certified in at least 2/3 of trials",
          600, [](std::string& detail) {
              std::ostringstream os;
              bool ok = true;
              std::uint64_t seed = 1111;
              for (int k : {2, 3}) {
                  for (int n : {1000, 10000}) {
                      experiment_config cfg;
                      cfg.mdl = model::independent;
                      cfg.n = n;
                      cfg.m_rule = lst_rule{k};
                      cfg.trials = 1000;
                      cfg.seed = seed++;
                      cfg.record.leaf = true;
                      experiment_report rep = run_experiment(cfg);
                      double not_leaf =
                          1.0 - static_cast<double>(rep.agg.leaf_sat) / static_cast<double>(cfg.trials);
                      ok = ok && not_leaf <= 1.0 / 3.0;
                      os << "k=" << k << " n=" << n << " m=" << cfg.effective_m() << " miss "
                         << not_leaf << "; ";
                  }
              }
              detail = os.str();
              return ok;
          });

    g.run(12, "corpus inequalities and certificate soundness repeat on a fresh mini corpus", 0,
          [&g](std::string& detail) {
              rng_stream rng(1212);
              corpus_stats mini;
              std::uint64_t false_certs = 0;
              for (int i = 0; i < 500; ++i) {
                  generator_spec spec;
                  spec.parity = 1;
                  spec.seed = 0;
                  switch (i % 3) {
                  case 0:
                      spec.mdl = model::independent;
                      spec.n = 4 + static_cast<int>(rng.below(7));
                      spec.m = 1 + rng.below(500);
                      break;
                  case 1:
                      spec.mdl = model::pairwise;
                      spec.n = 4 + static_cast<int>(rng.below(7));
                      spec.m = triple_count(spec.n);
                      break;
                  default:
                      spec.mdl = model::threewise;
                      spec.n = 6 + static_cast<int>(rng.below(5));
                      spec.m = 2 * (1 + rng.below(triple_count(spec.n) / 6));
                      break;
                  }
                  gen_result r = generate_with_stream(spec, rng);
                  corpus_check(r.inst, false, mini);
                  auto cx = refute_by_xi(r.inst);
                  auto ck = refute_by_kappa(r.inst);
                  if ((cx || ck) && brute_force_serial(r.inst).v == verdict::sat) false_certs++;
              }
              std::ostringstream os;
              os << mini.instances << " instances, " << mini.universal_violations
                 << " universal violations, " << mini.sat_violations << " sat violations, "
                 << false_certs << " false certificates";
              detail = os.str();
              return g.passed[6] && g.passed[7] && g.passed[8] && mini.universal_violations == 0 &&
                     mini.sat_violations == 0 && false_certs == 0;
          });

    std::printf("%d of 12 criteria passed\n", 12 - g.failures);
    return g.failures;
}
