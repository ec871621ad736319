#pragma once

#include "symlie/cohomology.hpp"

namespace symlie {

/// Odd-valent connected multigraph with typed vertices: alt3 (valence 3,
/// alternating role) or sym(m) (odd valence m >= 3, symmetric role).
struct OddVertex {
  bool alt = false;
  int valence = 3;
  bool operator==(const OddVertex&) const = default;
};

struct OddGraph {
  std::vector<OddVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // unordered; loops allowed
};

/// Valence counts, connectivity, odd valences, alt3 valence 3.
void validate_graph(const OddGraph& g);

struct Bidegree {
  int d = 0;  // cohomological degree = vertex count
  int n = 0;  // weight = v3a + 3 v3s + 5 v5 + ...
};
/// Also validates the identity n + 2 v3a = 2 #edges.
Bidegree bidegree(const OddGraph& g);

/// Canonical encoding under type-preserving vertex relabeling.
std::string canonical_form(const OddGraph& g);

/// Connected isomorphism classes with d <= d_max and n <= n_max, in a
/// deterministic canonical order.
std::vector<OddGraph> enumerate_graphs(int d_max, int n_max);

/// The cochain Phi(Gamma): alt3 vertices receive degree-1 arguments through
/// the U-projected tau_1, sym(m) vertices degree-m arguments through
/// trace(m); edges contract slots with omega, summed over all slot matchings.
Cochain phi_cochain(const OddGraph& graph, int g, long long cap = kDefaultCap);

}  // namespace symlie
