#pragma once

#include "ksat/generators.hpp"
#include "ksat/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ksat {

struct independence_report {
    int k = 0;
    bool exact = true;
    bool pass = false;
    std::uint64_t tuples_checked = 0;
    std::vector<std::size_t> positions;

    // exact mode
    rational worst_deviation = 0;        // max |P[tuple] - M^-k|
    std::vector<std::uint64_t> worst_tuple;

    // empirical mode
    std::uint64_t trials = 0;
    double chi_square = 0.0;
    double p_value = 0.0;
    double significance = 0.0;
    double worst_deviation_empirical = 0.0;
};

// Exact probability that the clauses at the given (distinct) positions carry
// exactly the given type ids, marginalized over all generator randomness.
// k = positions.size() = targets.size(), 1 <= k <= 4.
rational exact_joint_probability(const generator_spec& spec,
                                 std::span<const std::size_t> positions,
                                 std::span<const std::uint64_t> targets);

// Sweeps every k-tuple of targets at positions {0..k-1} (the models are
// position-exchangeable; a property test checks that before this shortcut is
// trusted) and compares against M^-k in exact arithmetic.
// Guard: M^k <= 1e8. pass <=> worst deviation is exactly zero.
independence_report verify_kwise_exact(const generator_spec& spec, int k, bool parallel = true);
independence_report verify_kwise_exact_serial(const generator_spec& spec, int k);

// Chi-square goodness of fit of sampled k-tuples at positions {0..k-1}
// against the uniform law on M^k cells. pass <=> p_value >= significance.
independence_report test_kwise_empirical(const generator_spec& spec, int k,
                                         std::uint64_t trials, double significance = 1e-3);

std::string report_to_json(const independence_report& rep, const generator_spec& spec);

} // namespace ksat
