#pragma once

#include "ksat/core.hpp"
#include "ksat/rational.hpp"
#include "ksat/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ksat {

enum class model { independent, pairwise, threewise, univar };

std::string model_name(model m);
model model_from_name(const std::string& s); // accepts ind|pairwise|threewise|univar

// parity selects the planted-sign coset: the number of negations plus the
// planted bits of the clause's variables must equal parity mod 2. parity = 1
// makes the planted assignment satisfy every clause (odd number of true
// literals); the independence properties hold for either value, which is
// exactly what the flipped-parity test checks.
struct generator_spec {
    model mdl = model::independent;
    int n = 0;
    std::uint64_t m = 0;
    std::uint64_t seed = 0;
    int parity = 1;

    std::uint64_t triples() const; // C(n,3)
    std::uint64_t types() const;   // M = 8*C(n,3)

    // mixture weights of the three-wise construction:
    //   q = 1/N^2 matches the probability that three i.i.d. uniform clauses
    //       land on one triple;
    //   p = (m-1)(N-1)/N^2 makes the shared-pair pattern come out to exactly
    //       1/M^3 (two positions are paired with probability 1/(m-1), and the
    //       pair plus the third position occupy an ordered distinct triple
    //       pair with probability 1/(N(N-1))).
    rational branch_p() const;
    rational branch_q() const;

    void validate() const; // throws std::invalid_argument on bad parameters
};

struct gen_result {
    instance inst;
    std::optional<assignment> planted; // only for the planted-parity branches
};

// negation flags for a clause on variables with planted bits sigma[0..2],
// uniform over the four sign triples in the parity coset
std::array<bool, 3> sample_parity_signs(const std::array<bool, 3>& sigma, int parity, rng_stream& rng);

gen_result gen_independent(int n, std::uint64_t m, rng_stream& rng);
gen_result gen_univar(int n, std::uint64_t m, rng_stream& rng);
gen_result gen_pairwise(int n, rng_stream& rng, int parity = 1);
gen_result gen_threewise(int n, std::uint64_t m, rng_stream& rng, int parity = 1);

// dispatch on spec.mdl using substream(spec.seed, 0)
gen_result generate(const generator_spec& spec);

// same dispatch with caller-provided randomness (per-trial substreams)
gen_result generate_with_stream(const generator_spec& spec, rng_stream& rng);

} // namespace ksat
