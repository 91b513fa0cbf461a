#include "ksat/independence.hpp"
#include "ksat/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ksat {

namespace {

struct rank_pattern {
    int k = 0;
    bool all_equal = false;
    bool all_distinct = false;
    bool pairable = true; // no equality class of size 3 or more
    int dup_classes = 0;  // classes of size exactly 2
    int single_classes = 0;
};

rank_pattern analyze_ranks(const std::vector<std::uint64_t>& ranks) {
    rank_pattern p;
    p.k = static_cast<int>(ranks.size());
    std::map<std::uint64_t, int> cls;
    for (auto r : ranks) cls[r]++;
    p.all_equal = cls.size() == 1;
    p.all_distinct = cls.size() == ranks.size();
    for (auto& [r, c] : cls) {
        (void)r;
        if (c == 1) p.single_classes++;
        else if (c == 2) p.dup_classes++;
        else p.pairable = false;
    }
    return p;
}

rational inv_falling(std::uint64_t space, int j) {
    bigint den = 1;
    for (int i = 0; i < j; ++i) den *= bigint(space - static_cast<std::uint64_t>(i));
    return rational(1, den);
}

// Probability that a uniform perfect matching of m positions, with each
// matched pair assigned a fresh triple (ordered distinct sample), produces
// this equality pattern on the observed positions: the dup classes must be
// matched pairs and the singles must be matched outside the observed set.
rational paired_pattern_prob(std::uint64_t m, std::uint64_t N, const rank_pattern& pat) {
    if (!pat.pairable) return rational(0);
    std::uint64_t e = static_cast<std::uint64_t>(pat.dup_classes);
    std::uint64_t s = static_cast<std::uint64_t>(pat.single_classes);
    if (2 * (e + s) > m) return rational(0);
    bigint num = 1, den = 1;
    for (std::uint64_t j = 0; j < s; ++j) num *= bigint(m - 2 * e - s - j);
    for (std::uint64_t i = 0; i < e + s; ++i) den *= bigint(m - 1 - 2 * i);
    return rational(num, den) * inv_falling(N, static_cast<int>(e + s));
}

// GF(2) system rows = variable incidence of each triple; tracks which row
// combinations vanish so right-hand-side consistency is a popcount test.
struct sign_system {
    int k = 0;
    int rank = 0;
    std::vector<std::uint32_t> null_combos;

    bool consistent(std::uint32_t rhs) const {
        for (std::uint32_t c : null_combos)
            if (std::popcount(c & rhs) % 2 != 0) return false;
        return true;
    }
};

sign_system build_sign_system(const std::vector<std::uint64_t>& ranks, int n) {
    sign_system sys;
    sys.k = static_cast<int>(ranks.size());
    std::map<int, int> col;
    std::vector<std::array<int, 3>> triples;
    triples.reserve(ranks.size());
    for (auto r : ranks) {
        auto t = triple_unrank(r, n);
        triples.push_back(t);
        for (int v : t) col.emplace(v, 0);
    }
    int c = 0;
    for (auto& [v, idx] : col) {
        (void)v;
        idx = c++;
    }
    std::map<int, std::pair<std::uint32_t, std::uint32_t>> basis; // pivot column -> (row, combo)
    for (int i = 0; i < sys.k; ++i) {
        std::uint32_t row = 0;
        for (int v : triples[static_cast<std::size_t>(i)]) row |= 1u << col[v];
        std::uint32_t combo = 1u << i;
        for (;;) {
            if (row == 0) {
                sys.null_combos.push_back(combo);
                break;
            }
            int pivot = std::countr_zero(row);
            auto it = basis.find(pivot);
            if (it == basis.end()) {
                basis.emplace(pivot, std::make_pair(row, combo));
                sys.rank++;
                break;
            }
            row ^= it->second.first;
            combo ^= it->second.second;
        }
    }
    return sys;
}

// Joint law of the triple ranks split by how signs are then drawn: the
// uniform part multiplies (1/8)^k, the planted part multiplies
// (1/4)^k * 2^-rank for right-hand sides the sign system can realize.
struct joint_law {
    rational uniform_coeff = 0;
    rational planted_coeff = 0;
};

joint_law assemble_law(const generator_spec& spec, const rank_pattern& pat, std::uint64_t N) {
    joint_law law;
    rational one_triple = pat.all_equal ? rational(1, bigint(N)) : rational(0);
    rational injective = pat.all_distinct ? inv_falling(N, pat.k) : rational(0);
    switch (spec.mdl) {
    case model::independent:
        law.uniform_coeff = rational(1, ipow(bigint(N), static_cast<unsigned>(pat.k)));
        break;
    case model::univar:
        law.uniform_coeff = one_triple;
        break;
    case model::pairwise:
        law.uniform_coeff = rational(1, bigint(N)) * one_triple;
        law.planted_coeff = (rational(1) - rational(1, bigint(N))) * injective;
        break;
    case model::threewise: {
        rational p = spec.branch_p();
        rational q = spec.branch_q();
        law.uniform_coeff = p * paired_pattern_prob(spec.m, N, pat) + q * one_triple;
        law.planted_coeff = (rational(1) - p - q) * injective;
        break;
    }
    }
    return law;
}

std::uint32_t rhs_mask(const std::vector<std::uint32_t>& sign_words, int parity) {
    std::uint32_t rhs = 0;
    for (std::size_t i = 0; i < sign_words.size(); ++i) {
        std::uint32_t b = static_cast<std::uint32_t>(parity) ^ (static_cast<std::uint32_t>(std::popcount(sign_words[i])) & 1u);
        rhs |= b << i;
    }
    return rhs;
}

void check_k(const generator_spec& spec, int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("k must be between 1 and 4");
    if (static_cast<std::uint64_t>(k) > spec.m) throw std::invalid_argument("k exceeds the clause count");
}

std::vector<std::uint64_t> decompose_tuple_id(std::uint64_t id, std::uint64_t M, int k) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = id % M;
        id /= M;
    }
    return out;
}

struct best_tuple {
    rational dev = 0;
    std::uint64_t id = 0;
    bool set = false;
};

void merge_best(best_tuple& into, const rational& dev, std::uint64_t id) {
    if (!into.set || dev > into.dev || (dev == into.dev && id < into.id)) {
        into.dev = dev;
        into.id = id;
        into.set = true;
    }
}

void merge_best(best_tuple& into, const best_tuple& other) {
    if (other.set) merge_best(into, other.dev, other.id);
}

independence_report sweep_exact(const generator_spec& spec, int k, bool parallel) {
    spec.validate();
    check_k(spec, k);
    std::uint64_t M = spec.types();
    std::uint64_t N = spec.triples();
    double cells = std::pow(static_cast<double>(M), k);
    if (cells > 1e8 + 0.5) throw std::invalid_argument("exact sweep too large: M^k exceeds 1e8");

    const rational uniform(1, ipow(bigint(M), static_cast<unsigned>(k)));
    const rational inv8k(1, ipow(bigint(8), static_cast<unsigned>(k)));
    const rational inv4k(1, ipow(bigint(4), static_cast<unsigned>(k)));

    std::uint64_t rank_tuples = 1;
    for (int i = 0; i < k; ++i) rank_tuples *= N;

    // All sign tuples of one rank tuple share one of two probabilities:
    // uniform-only for right-hand sides the planted system cannot hit, and
    // uniform plus the planted mass for the ones it can. Only the lex-least
    // sign tuple of each kind is needed to track the worst global tuple.
    auto eval_rank_tuple = [&](std::uint64_t idx, best_tuple& best) {
        std::vector<std::uint64_t> ranks(static_cast<std::size_t>(k));
        std::uint64_t t = idx;
        for (int i = k - 1; i >= 0; --i) {
            ranks[static_cast<std::size_t>(i)] = t % N;
            t /= N;
        }
        rank_pattern pat = analyze_ranks(ranks);
        joint_law law = assemble_law(spec, pat, N);
        rational base_prob = law.uniform_coeff * inv8k;
        std::uint64_t base_id = 0;
        for (int i = 0; i < k; ++i) base_id = base_id * M + ranks[static_cast<std::size_t>(i)] * 8;

        if (law.planted_coeff == 0) {
            merge_best(best, abs(base_prob - uniform), base_id);
            return;
        }
        sign_system sys = build_sign_system(ranks, spec.n);
        rational planted_prob = base_prob + law.planted_coeff * inv4k *
                                                rational(1, ipow(bigint(2), static_cast<unsigned>(sys.rank)));
        rational dev_hit = abs(planted_prob - uniform);
        rational dev_miss = abs(base_prob - uniform);

        // the id-least sign tuple realizing parity pattern v uses sign word
        // b in {0,1} per position, so scanning v in increasing order scans
        // candidate ids in increasing order
        bool seen_hit = false, seen_miss = false;
        for (std::uint32_t v = 0; v < (1u << k) && !(seen_hit && seen_miss); ++v) {
            std::uint32_t rhs = 0;
            std::uint64_t id = base_id;
            std::uint64_t place = 1;
            for (int i = k - 1; i >= 0; --i) {
                std::uint32_t b = (v >> (k - 1 - i)) & 1u;
                rhs |= (static_cast<std::uint32_t>(spec.parity) ^ b) << i;
                id += b * place;
                place *= M;
            }
            if (sys.consistent(rhs)) {
                if (!seen_hit) {
                    merge_best(best, dev_hit, id);
                    seen_hit = true;
                }
            } else if (!seen_miss) {
                merge_best(best, dev_miss, id);
                seen_miss = true;
            }
        }
    };

    best_tuple global;
    if (parallel) {
#pragma omp parallel
        {
            best_tuple local;
#pragma omp for schedule(dynamic, 64) nowait
            for (long long idx = 0; idx < static_cast<long long>(rank_tuples); ++idx)
                eval_rank_tuple(static_cast<std::uint64_t>(idx), local);
#pragma omp critical
            merge_best(global, local);
        }
    } else {
        for (std::uint64_t idx = 0; idx < rank_tuples; ++idx) eval_rank_tuple(idx, global);
    }

    independence_report rep;
    rep.k = k;
    rep.exact = true;
    rep.tuples_checked = static_cast<std::uint64_t>(cells);
    for (int i = 0; i < k; ++i) rep.positions.push_back(static_cast<std::size_t>(i));
    rep.worst_deviation = global.dev;
    rep.worst_tuple = decompose_tuple_id(global.id, M, k);
    rep.pass = global.dev == 0;
    return rep;
}

} // namespace

rational exact_joint_probability(const generator_spec& spec,
                                 std::span<const std::size_t> positions,
                                 std::span<const std::uint64_t> targets) {
    spec.validate();
    std::size_t k = positions.size();
    if (k != targets.size()) throw std::invalid_argument("positions and targets differ in length");
    if (k < 1 || k > 4) throw std::invalid_argument("k must be between 1 and 4");
    for (std::size_t i = 0; i < k; ++i) {
        if (positions[i] >= spec.m) throw std::invalid_argument("position out of range");
        for (std::size_t j = i + 1; j < k; ++j)
            if (positions[i] == positions[j]) throw std::invalid_argument("positions must be distinct");
    }
    std::uint64_t M = spec.types();
    std::uint64_t N = spec.triples();
    std::vector<std::uint64_t> ranks(k);
    std::vector<std::uint32_t> signs(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (targets[i] >= M) throw std::invalid_argument("target type id out of range");
        ranks[i] = targets[i] / 8;
        signs[i] = static_cast<std::uint32_t>(targets[i] % 8);
    }
    rank_pattern pat = analyze_ranks(ranks);
    joint_law law = assemble_law(spec, pat, N);
    rational prob = law.uniform_coeff * rational(1, ipow(bigint(8), static_cast<unsigned>(k)));
    if (law.planted_coeff != 0) {
        sign_system sys = build_sign_system(ranks, spec.n);
        if (sys.consistent(rhs_mask(signs, spec.parity)))
            prob += law.planted_coeff * rational(1, ipow(bigint(4), static_cast<unsigned>(k))) *
                    rational(1, ipow(bigint(2), static_cast<unsigned>(sys.rank)));
    }
    return prob;
}

independence_report verify_kwise_exact(const generator_spec& spec, int k, bool parallel) {
    return sweep_exact(spec, k, parallel);
}

independence_report verify_kwise_exact_serial(const generator_spec& spec, int k) {
    return sweep_exact(spec, k, false);
}

independence_report test_kwise_empirical(const generator_spec& spec, int k,
                                         std::uint64_t trials, double significance) {
    spec.validate();
    check_k(spec, k);
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    std::uint64_t M = spec.types();
    double cells_d = std::pow(static_cast<double>(M), k);
    if (cells_d > 2e7 + 0.5) throw std::invalid_argument("empirical histogram too large: M^k exceeds 2e7");
    std::uint64_t cells = ipow_u64(M, static_cast<unsigned>(k));

    std::vector<std::uint64_t> hist(cells, 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
        rng_stream rng = substream(spec.seed, static_cast<std::uint64_t>(t));
        gen_result g = generate_with_stream(spec, rng);
        std::uint64_t cell = 0;
        for (int i = 0; i < k; ++i)
            cell = cell * M + clause_to_type_id(g.inst.clauses[static_cast<std::size_t>(i)], spec.n);
#pragma omp atomic
        hist[cell]++;
    }

    double expected = static_cast<double>(trials) / static_cast<double>(cells);
    double chi = 0.0;
    double worst = 0.0;
    std::uint64_t worst_cell = 0;
    for (std::uint64_t c = 0; c < cells; ++c) {
        double obs = static_cast<double>(hist[c]);
        double d = obs - expected;
        chi += d * d / expected;
        double dev = std::abs(obs / static_cast<double>(trials) - 1.0 / static_cast<double>(cells));
        if (dev > worst) {
            worst = dev;
            worst_cell = c;
        }
    }

    independence_report rep;
    rep.k = k;
    rep.exact = false;
    rep.tuples_checked = cells;
    for (int i = 0; i < k; ++i) rep.positions.push_back(static_cast<std::size_t>(i));
    rep.trials = trials;
    rep.chi_square = chi;
    rep.p_value = chi_square_pvalue(chi, cells - 1);
    rep.significance = significance;
    rep.worst_deviation_empirical = worst;
    rep.worst_tuple = decompose_tuple_id(worst_cell, M, k);
    rep.pass = rep.p_value >= significance;
    return rep;
}

std::string report_to_json(const independence_report& rep, const generator_spec& spec) {
    nlohmann::ordered_json j;
    j["mode"] = rep.exact ? "exact" : "empirical";
    j["model"] = model_name(spec.mdl);
    j["n"] = spec.n;
    j["m"] = spec.m;
    j["seed"] = spec.seed;
    j["parity"] = spec.parity;
    j["k"] = rep.k;
    j["positions"] = rep.positions;
    j["tuples_checked"] = rep.tuples_checked;
    j["pass"] = rep.pass;
    if (rep.exact) {
        j["worst_deviation"] = to_fraction_string(rep.worst_deviation);
        j["worst_tuple"] = rep.worst_tuple;
    } else {
        j["trials"] = rep.trials;
        j["chi_square"] = rep.chi_square;
        j["p_value"] = rep.p_value;
        j["significance"] = rep.significance;
        j["worst_deviation_empirical"] = rep.worst_deviation_empirical;
        j["worst_tuple"] = rep.worst_tuple;
    }
    return j.dump(2);
}

} // namespace ksat
