#pragma once

#include "ksat/core.hpp"
#include "ksat/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ksat {

// 3-uniform hypergraph of the variable triples, one hyperedge per clause
// (duplicates preserved)
struct variable_hypergraph {
    int n = 0;
    std::vector<std::array<int, 3>> edges; // sorted 1-based variable triples
};

variable_hypergraph to_hypergraph(const instance& f);

struct berge_cycle {
    std::vector<std::size_t> edges; // hyperedge indices in cyclic order
    std::vector<int> vertices;      // connector vertices, vertices[i] in edges[i] & edges[i+1]
};

// Any cycle of the bipartite vertex/hyperedge incidence graph, returned as the
// hyperedge indices along it; nullopt iff the incidence graph is a forest.
std::optional<std::vector<std::size_t>> find_incidence_cycle(const variable_hypergraph& h);

// Repeatedly pick a clause owning a private variable (appearing in no other
// remaining clause), satisfy it through that variable, and remove it.
// Succeeds on every forest-shaped instance; the returned assignment is
// verified against the instance before being handed out.
std::optional<assignment> leaf_elimination_solve(const instance& f);

// Simple Berge structures: consecutive hyperedges share exactly one vertex,
// all other pairs are disjoint, connector vertices are pairwise distinct;
// length-2 cycle = two hyperedges sharing at least two vertices.
std::uint64_t count_berge_paths(const variable_hypergraph& h, int length);  // unordered, length >= 2
std::uint64_t count_berge_cycles(const variable_hypergraph& h, int length); // unordered, length >= 2
std::vector<berge_cycle> enumerate_berge_cycles(const variable_hypergraph& h, int length);

// Expected counts for m i.i.d. uniform triples, exact rationals:
//   ordered_path_tuples(k) = k! C(m,k) (3C(n-3,2)/N) prod_{t=3}^{k} (2C(n-2t+1,2)/N)
//   unordered_paths = ordered/2
//   cycles[2] = C(m,2) (3(n-3)+1)/N
//   cycles[l] = (l! C(m,l)/(2l)) (3C(n-3,2)/N) prod_{t=3}^{l-1}(2C(n-2t+1,2)/N) (4(n-2l+1)/N)
// plus the closed-form tail bound on the probability that no length-<k
// structure certifies anything:
//   unsat_prob_upper = (2/3)(6m)^k/n^(k-1) + (3m/n)^2 + (1/6) sum_{l=3}^{k-1} (6m/n)^l
struct expected_counts_t {
    rational ordered_path_tuples;
    rational unordered_paths;
    std::map<int, rational> cycles; // keys 2..k-1
    rational unsat_prob_upper;
};
expected_counts_t expected_counts(int n, std::uint64_t m, int k); // k >= 2

} // namespace ksat
