#pragma once

#include "ksat/core.hpp"
#include "ksat/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ksat {

// ---- collision statistic xi ----

// number of unordered clause pairs with identical type: sum_t C(d_t, 2)
std::uint64_t xi(const instance& f);

rational xi_expectation(int n, std::uint64_t m);          // m(m-1)/(2M) under i.i.d. uniform clauses
rational xi_universal_lower_bound(int n, std::uint64_t m); // m(m/M - 1)/2, any instance
rational xi_sat_threshold(int n, std::uint64_t m);         // m((8/7)(m/M) - 1)/2, lower bound when satisfiable

// ---- bipartite literal graph and K2,2 counting ----

// Left vertices: unordered pairs of literals on distinct variables.
// Right vertices: literals. Every clause {l1,l2,l3} contributes the three
// edges {l1,l2}-l3, {l1,l3}-l2, {l2,l3}-l1; an edge determines its clause
// type uniquely, so parallel edges come only from duplicate clauses.
struct literal_graph {
    int n = 0;
    std::uint64_t edge_instances = 0; // 3m counting multiplicity
    // left pair key -> (right literal code, multiplicity), codes are 2(var-1)+neg
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj;

    static std::uint32_t literal_code(literal l) {
        return static_cast<std::uint32_t>(2 * (l.var - 1) + (l.neg ? 1 : 0));
    }
    static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }
};

literal_graph build_literal_graph(const instance& f);

// K2,2 count of the simple graph of the deduplicated instance:
// sum over right pairs (v,v') of C(|common neighborhood|, 2)
std::uint64_t kappa(const instance& f);
std::uint64_t kappa_serial(const instance& f);

// multigraph count: sum over left and right pairs of the product of the four
// edge multiplicities; equals the sum of per-4-subset counts over positions
std::uint64_t kappa_multigraph(const instance& f);

// Four distinct clause types span either one K2,2 (two disjoint literal pairs
// sharing the same third-literal pair), two (all four through one common
// literal), or none. Repeated types always give quad_case::none.
enum class quad_case { one, two, none };
quad_case classify_four_clauses(const std::array<clause, 4>& quad);

// independent oracle: enumerate K2,2 subgraphs of the simple union graph of
// the four clauses directly (12 edges when the types are distinct)
std::uint64_t count_k22_generic(const std::array<clause, 4>& quad);

struct kappa_bounds_t {
    rational expectation_upper; // 81 m^4/(64 n^6) + 729 m^3/(32 n^4)
    rational universal_lower;   // 81 mt^4/(64 n^6) - 27 mt^3/(8 n^4)
    rational sat_lower;         // 82 mt^4/(64 n^6) - 123 mt^3/(16 n^4)
    bool universal_vacuous = false; // mt <= 8n^2/3
    bool sat_vacuous = false;       // mt <= 6n^2
};
kappa_bounds_t kappa_bounds(int n, std::uint64_t m, std::uint64_t m_tilde);

struct kappa_terms_t {
    rational p1_upper; // 4! * (9/(8C(n,3))) * (1/(8C(n,3))) * (1/4)
    rational p2_upper; // (4!/4) * (3*4C(n-1,2)/(8C(n,3))) * (4/(8C(n,3))) * (1/(8C(n,3)))
};
kappa_terms_t kappa_expectation_terms(int n); // throws std::domain_error for n < 10

struct moment_bound_t {
    rational lower;      // m^4 - (125/6) m^3 n^2 <= E[(distinct-type count)^4]
    bool in_regime = false; // m <= sqrt(10) n^(5/2)
};
moment_bound_t tilde_m_moment_bound(int n, std::uint64_t m);

// ---- certificates ----

struct certificate {
    std::string verdict;   // "UNSAT" or "SAT"
    std::string statistic; // "xi", "kappa" or "leaf"
    std::uint64_t value = 0;
    std::optional<rational> threshold;
    std::uint64_t m_tilde = 0;
    std::optional<assignment> witness;
};

// UNSAT certificate when xi < m((8/7)(m/M)-1)/2: a satisfiable instance uses
// at most 7M/8 types, so convexity forces xi at least that large.
std::optional<certificate> refute_by_xi(const instance& f);

// UNSAT certificate when kappa of the deduplicated instance falls below the
// satisfiable lower bound (exact rational comparison).
std::optional<certificate> refute_by_kappa(const instance& f);

std::string certificate_to_json(const std::optional<certificate>& cert);

} // namespace ksat
