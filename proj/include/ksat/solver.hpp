#pragma once

#include "ksat/core.hpp"

#include <cstdint>
#include <optional>

namespace ksat {

enum class verdict { sat, unsat };

struct solve_result {
    verdict v = verdict::unsat;
    std::optional<assignment> witness;     // set iff sat
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
};

// Exhaustive scan, n <= 30. Returns the lexicographically first satisfying
// assignment (variable 1 most significant, false < true).
solve_result brute_force(const instance& f);
solve_result brute_force_serial(const instance& f);

// Unit propagation + pure-literal elimination, branching on the variable with
// the most occurrences in active clauses (ties: lowest index, true first).
solve_result dpll(const instance& f);

// exact model count, n <= 26
std::uint64_t count_models(const instance& f);
std::uint64_t count_models_serial(const instance& f);

} // namespace ksat
