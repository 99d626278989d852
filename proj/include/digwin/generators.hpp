#pragma once

#include <cstdint>
#include <vector>

#include "digwin/window.hpp"

namespace digwin {

// C(n,k); throws on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n, int k);

// Safety cap shared by the deterministic constructors.
inline constexpr std::size_t kDefaultVertexCap = 2'000'000;

// Family over a base tree of out-valency 1 and in-valency C(M,m): the window
// is the full in-tree of depth `levels` above a sink. Each base-tree vertex
// carries M vertices; the in-neighbours of a base vertex correspond
// one-to-one to the m-subsets of {0..M-1} in lex order, and a carried vertex
// points to exactly its subset's m vertices above the parent.
// Interior: fibres at base-tree depths 1..levels-1. level = levels - depth.
Window make_dmm_window(int m, int M, int levels,
                       std::size_t cap = kDefaultVertexCap);

// Fixed alternet-shaped bipartite digraph: sinks Y = one copy of {0..M-1};
// sources X = C(M,m) blocks of M vertices, block i wired completely onto the
// i-th m-subset of Y.
struct SigmaBipartite {
  Window window;  // levels 0 (X) and 1 (Y); all interior
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;
  std::vector<std::vector<VertexId>> source_blocks;
};
SigmaBipartite make_sigma(int m, int M);

// Rooted tree of out-valency b to depth d. Interior: depths 0..d-1. level = depth.
Window make_out_tree_window(int b, int d, std::size_t cap = kDefaultVertexCap);

// Ball of radius r in the regular directed tree with the given out- and
// in-valency, centred on an interior vertex. Interior: distance < r.
Window make_regular_tree_window(int out_valency, int in_valency, int radius,
                                std::size_t cap = kDefaultVertexCap);

// Directed path 0 -> 1 -> ... -> length (window of the two-way infinite line).
Window make_line_window(int length);

// Sub-window of make_dmm_window(m, M, levels) induced on the descendant set
// of a directed line through the lexicographically first in-neighbour ray of
// the base tree. The ray is extended above the window through first
// in-neighbours, so the top fibre is cut to the first m coordinates.
// Interior flags are recomputed by restriction.
Window make_desc_of_line_window(int m, int M, int levels,
                                std::size_t cap = kDefaultVertexCap);

// Seeded layered DAG: `levels` layers of `width` vertices; each edge between
// consecutive layers present independently with probability edge_prob.
// Isolated vertices are pruned. A finite object: all vertices interior.
Window make_random_layered_dag(int levels, int width, double edge_prob,
                               std::uint64_t seed);

// splitmix64, the PRNG behind make_random_layered_dag. 64-bit state;
// identical sequences for identical seeds on every platform.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

}  // namespace digwin
