#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace ksat {

// A literal is a 1-based variable index plus a negation flag.
struct literal {
    int var = 0;
    bool neg = false;

    friend bool operator==(const literal&, const literal&) = default;
};

// Clause over exactly three distinct variables, kept canonical:
// literals sorted by ascending variable index.
struct clause {
    std::array<literal, 3> lit{};

    friend bool operator==(const clause&, const clause&) = default;
};

// Multiset of clauses; duplicates are allowed and meaningful.
struct instance {
    int n = 0;
    std::vector<clause> clauses;
};

struct assignment {
    std::vector<bool> bits; // bits[v-1] = value of variable v

    friend bool operator==(const assignment&, const assignment&) = default;
};

inline constexpr std::size_t no_clause = std::numeric_limits<std::size_t>::max();

struct eval_result {
    bool satisfied = false;
    std::size_t first_unsat = no_clause;
};

// ---- variable-triple codec (colex rank over C(n,3) sorted triples) ----

std::uint64_t triple_count(int n);                          // C(n,3)
std::uint64_t triple_rank(int v1, int v2, int v3);          // sorted 1-based vars
std::array<int, 3> triple_unrank(std::uint64_t rank, int n);

// ---- clause-type codec ----
// type id = triple_rank * 8 + sign word; sign word bit i is 1 iff the i-th
// literal (ascending variable order) is negated.

std::uint64_t clause_type_count(int n);                     // M = 8*C(n,3)
clause canonicalize(literal a, literal b, literal c);       // throws on repeated variable
std::uint64_t clause_to_type_id(const clause& c, int n);
clause type_id_to_clause(std::uint64_t id, int n);

// ---- evaluation and dedup ----

bool literal_true(literal l, const assignment& a);
eval_result evaluate(const instance& f, const assignment& a);
instance deduplicate(const instance& f);                    // keeps first occurrences, stable order

void validate_instance(const instance& f);                  // throws unless canonical and in range

} // namespace ksat
