#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "digwin/digraph.hpp"
#include "digwin/partition.hpp"
#include "digwin/window.hpp"

namespace digwin {

// Optional restrictions on an isomorphism search. Pinned pairs force
// images; colors must be preserved (same length as the vertex counts).
struct IsoConstraints {
  std::vector<std::pair<VertexId, VertexId>> pinned;
  std::vector<std::uint64_t> colors1;
  std::vector<std::uint64_t> colors2;
};

struct IsoResult {
  std::optional<std::vector<VertexId>> mapping;  // g1 -> g2 when isomorphic
  std::size_t nodes_explored = 0;
  bool isomorphic() const { return mapping.has_value(); }
};

// Exact isomorphism via iterated in/out-neighbourhood colour refinement and
// adjacency-checked backtracking. Every returned mapping is re-verified
// edge-by-edge. Throws when either graph exceeds `cap` vertices.
IsoResult is_isomorphic(const Digraph& g1, const Digraph& g2,
                        const IsoConstraints& constraints = {},
                        std::size_t cap = 64);

// Verified automorphism generators together with the exact vertex and edge
// orbits of the full automorphism group (orbit maximality is certified by
// failed pinned searches, not by the generator set alone).
struct OrbitStructure {
  std::vector<std::vector<VertexId>> generators;
  Partition vertex_orbits;
  EdgePartition edge_orbits;
  std::size_t nodes_explored = 0;
};

OrbitStructure automorphism_orbits(const Digraph& g,
                                   const std::vector<std::uint64_t>& colors = {},
                                   std::size_t cap = 64);

// True iff the automorphism group is transitive on edges.
bool check_edge_transitive(const Digraph& g, std::size_t cap = 64);

// True iff for every s >= 0 the group is transitive on ordered pairs at
// exact arc-distance s (shortest s-arc, no shorter arc).
bool check_distance_transitive(const Digraph& g, std::size_t cap = 64);

// Orbit count per layer of a rooted window under automorphisms that fix the
// root and respect interior flags. Purely a window diagnostic: these
// automorphisms are unrelated to those of the modelled infinite object.
std::vector<std::size_t> layer_transitivity_diagnostic(const Window& rooted,
                                                       std::size_t cap = 64);

}  // namespace digwin
