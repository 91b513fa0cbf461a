#include "ksat/generators.hpp"

#include <stdexcept>
#include <unordered_map>

namespace ksat {

std::string model_name(model m) {
    switch (m) {
    case model::independent: return "ind";
    case model::pairwise: return "pairwise";
    case model::threewise: return "threewise";
    case model::univar: return "univar";
    }
    return "?";
}

model model_from_name(const std::string& s) {
    if (s == "ind" || s == "independent") return model::independent;
    if (s == "pairwise") return model::pairwise;
    if (s == "threewise") return model::threewise;
    if (s == "univar") return model::univar;
    throw std::invalid_argument("unknown model: " + s);
}

std::uint64_t generator_spec::triples() const { return triple_count(n); }
std::uint64_t generator_spec::types() const { return clause_type_count(n); }

rational generator_spec::branch_p() const {
    bigint N = triples();
    return rational(bigint(m - 1) * (N - 1), N * N);
}

rational generator_spec::branch_q() const {
    bigint N = triples();
    return rational(1, N * N);
}

void generator_spec::validate() const {
    if (n < 3) throw std::invalid_argument("generator_spec: n must be at least 3");
    if (parity != 0 && parity != 1) throw std::invalid_argument("generator_spec: parity must be 0 or 1");
    std::uint64_t N = triples();
    switch (mdl) {
    case model::independent:
    case model::univar:
        if (m < 1) throw std::invalid_argument("generator_spec: m must be positive");
        break;
    case model::pairwise:
        if (m != N) throw std::invalid_argument("generator_spec: pairwise model requires m = C(n,3)");
        if (N > 20'000'000) throw std::invalid_argument("generator_spec: pairwise model materializes all C(n,3) triples; n too large");
        break;
    case model::threewise:
        if (m < 2 || m % 2 != 0) throw std::invalid_argument("generator_spec: threewise model requires even m >= 2");
        if (3 * m > N) throw std::invalid_argument("generator_spec: threewise model requires m <= C(n,3)/3");
        break;
    }
}

std::array<bool, 3> sample_parity_signs(const std::array<bool, 3>& sigma, int parity, rng_stream& rng) {
    // number of negations = parity + sigma[0]+sigma[1]+sigma[2]  (mod 2)
    bool n0 = rng.coin();
    bool n1 = rng.coin();
    bool target = (parity != 0) ^ sigma[0] ^ sigma[1] ^ sigma[2];
    bool n2 = target ^ n0 ^ n1;
    return {n0, n1, n2};
}

namespace {

assignment random_assignment(int n, rng_stream& rng) {
    assignment a;
    a.bits.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a.bits[i] = rng.coin();
    return a;
}

clause clause_from_rank_and_signs(std::uint64_t rank, int n, std::uint64_t sign_word) {
    return type_id_to_clause(rank * 8 + sign_word, n);
}

clause planted_clause(std::uint64_t rank, int n, const assignment& sigma, int parity, rng_stream& rng) {
    auto vars = triple_unrank(rank, n);
    std::array<bool, 3> bits{sigma.bits[static_cast<std::size_t>(vars[0]) - 1],
                             sigma.bits[static_cast<std::size_t>(vars[1]) - 1],
                             sigma.bits[static_cast<std::size_t>(vars[2]) - 1]};
    auto negs = sample_parity_signs(bits, parity, rng);
    return clause{{literal{vars[0], negs[0]}, literal{vars[1], negs[1]}, literal{vars[2], negs[2]}}};
}

// uniform ordered sample of `count` distinct values from [0, space) without
// materializing the space (sparse Fisher-Yates)
std::vector<std::uint64_t> sample_distinct(std::uint64_t count, std::uint64_t space, rng_stream& rng) {
    std::unordered_map<std::uint64_t, std::uint64_t> moved;
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t j = i + rng.below(space - i);
        auto it_i = moved.find(i);
        std::uint64_t vi = it_i == moved.end() ? i : it_i->second;
        auto it_j = moved.find(j);
        std::uint64_t vj = it_j == moved.end() ? j : it_j->second;
        moved[j] = vi;
        out.push_back(vj);
    }
    return out;
}

} // namespace

gen_result gen_independent(int n, std::uint64_t m, rng_stream& rng) {
    std::uint64_t M = clause_type_count(n);
    gen_result r;
    r.inst.n = n;
    r.inst.clauses.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) r.inst.clauses.push_back(type_id_to_clause(rng.below(M), n));
    return r;
}

gen_result gen_univar(int n, std::uint64_t m, rng_stream& rng) {
    std::uint64_t rank = rng.below(triple_count(n));
    gen_result r;
    r.inst.n = n;
    r.inst.clauses.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i)
        r.inst.clauses.push_back(clause_from_rank_and_signs(rank, n, rng.below(8)));
    return r;
}

gen_result gen_pairwise(int n, rng_stream& rng, int parity) {
    std::uint64_t N = triple_count(n);
    // with probability 1/N collapse to the one-triple model, otherwise plant
    if (rng.below(N) == 0) return gen_univar(n, N, rng);

    std::vector<std::uint64_t> ranks(N);
    for (std::uint64_t i = 0; i < N; ++i) ranks[i] = i;
    for (std::uint64_t i = 0; i + 1 < N; ++i) { // Fisher-Yates
        std::uint64_t j = i + rng.below(N - i);
        std::swap(ranks[i], ranks[j]);
    }
    assignment sigma = random_assignment(n, rng);
    gen_result r;
    r.inst.n = n;
    r.inst.clauses.reserve(N);
    for (std::uint64_t i = 0; i < N; ++i)
        r.inst.clauses.push_back(planted_clause(ranks[i], n, sigma, parity, rng));
    r.planted = std::move(sigma);
    return r;
}

gen_result gen_threewise(int n, std::uint64_t m, rng_stream& rng, int parity) {
    using u128 = unsigned __int128;
    std::uint64_t N = triple_count(n);
    // branch weights over the common denominator N^2:
    //   1          -> one-triple model
    //   (m-1)(N-1) -> paired triples with independent signs
    //   rest       -> distinct triples with planted-parity signs
    u128 den = static_cast<u128>(N) * N;
    u128 draw = rng.below128(den);
    if (draw < 1) return gen_univar(n, m, rng);

    if (draw < 1 + static_cast<u128>(m - 1) * (N - 1)) {
        std::vector<std::uint64_t> ranks = sample_distinct(m / 2, N, rng);
        std::vector<std::uint64_t> pos(m);
        for (std::uint64_t i = 0; i < m; ++i) pos[i] = i;
        for (std::uint64_t i = 0; i + 1 < m; ++i) {
            std::uint64_t j = i + rng.below(m - i);
            std::swap(pos[i], pos[j]);
        }
        gen_result r;
        r.inst.n = n;
        r.inst.clauses.resize(m);
        for (std::uint64_t pair = 0; pair < m / 2; ++pair) {
            r.inst.clauses[pos[2 * pair]] = clause_from_rank_and_signs(ranks[pair], n, rng.below(8));
            r.inst.clauses[pos[2 * pair + 1]] = clause_from_rank_and_signs(ranks[pair], n, rng.below(8));
        }
        return r;
    }

    std::vector<std::uint64_t> ranks = sample_distinct(m, N, rng);
    assignment sigma = random_assignment(n, rng);
    gen_result r;
    r.inst.n = n;
    r.inst.clauses.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i)
        r.inst.clauses.push_back(planted_clause(ranks[i], n, sigma, parity, rng));
    r.planted = std::move(sigma);
    return r;
}

gen_result generate_with_stream(const generator_spec& spec, rng_stream& rng) {
    switch (spec.mdl) {
    case model::independent: return gen_independent(spec.n, spec.m, rng);
    case model::univar: return gen_univar(spec.n, spec.m, rng);
    case model::pairwise: return gen_pairwise(spec.n, rng, spec.parity);
    case model::threewise: return gen_threewise(spec.n, spec.m, rng, spec.parity);
    }
    throw std::logic_error("generate: unreachable");
}

gen_result generate(const generator_spec& spec) {
    spec.validate();
    rng_stream rng = substream(spec.seed, 0);
    return generate_with_stream(spec, rng);
}

} // namespace ksat
