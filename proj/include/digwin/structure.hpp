#pragma once

#include <optional>
#include <string>
#include <vector>

#include "digwin/window.hpp"

namespace digwin {

// A closed walk in the underlying graph whose forward and backward edge
// counts differ; such a walk rules out any integer labelling that grows by
// one along every edge.
struct ConflictWitness {
  struct Step {
    Edge edge;
    bool forward;  // traversed tail -> head
  };
  std::vector<Step> walk;
  std::size_t forward_count = 0;
  std::size_t backward_count = 0;
};

// Level labelling f with f(head) = f(tail) + 1 on every edge, or the
// conflict witness proving none exists. Computed per connected component of
// the underlying graph; `labeled` means every component is labelled.
// A labelling is exact for the window and necessary-condition evidence for
// the modelled infinite object.
struct ZLabeling {
  bool labeled = false;
  std::vector<int> f;  // valid when labeled
  std::size_t component_count = 0;
  std::optional<ConflictWitness> conflict;
};
ZLabeling z_labeling(const Window& w);

// Gradedness of a rooted window: arc-layers pairwise disjoint and interior
// out-valency uniform.
struct P0Report {
  bool holds = false;
  std::size_t out_valency = 0;  // m, when uniform
  struct LayerOverlap {
    VertexId v;
    int first_layer, second_layer;
  };
  std::optional<LayerOverlap> overlap;
  std::optional<std::pair<VertexId, VertexId>> valency_witness;
};
P0Report check_p0(const Window& rooted);

// Depth-limited self-similarity: the depth-d truncation rooted at each
// sampled interior vertex is isomorphic to the root's truncation.
struct P1Report {
  enum class Verdict { Holds, Fails, Partial };
  Verdict verdict = Verdict::Holds;
  int depth = 0;
  std::vector<VertexId> tested;
  std::optional<VertexId> witness;  // failing vertex
};
P1Report check_p1(const Window& rooted, int depth, std::size_t budget = 32);

// Split of the first out-neighbourhood of x into parts with disjoint
// descendant sets, out to depth d. Splits are generated by the connected
// components of the descendant window of x with x removed; a window where
// the components merge cannot carry a disjoint split.
struct ConditionCReport {
  bool disjoint = false;
  std::vector<VertexId> part_u, part_v;  // when disjoint
  int depth = 0;
  struct MergeWitness {
    VertexId a, b;
    VertexId common_descendant;
  };
  std::optional<MergeWitness> witness;  // when splits exist but all intersect
  bool no_split_possible = false;       // fewer than two out-neighbours
};
ConditionCReport condition_c(const Window& rooted, VertexId x, int depth);

// Blocks in the first layer: grouping of the root's out-neighbours by the
// connected components of the rooted window with the root deleted.
std::vector<std::vector<VertexId>> block_system(const Window& rooted);

// Consistency of the measured window structure against the predicted
// structure when the out-valency is a product of two primes p <= q and the
// relevant equal-descendant relation is trivial: for p = q a tree; for
// p < q and not a tree, p blocks of size q and in-valencies 1,...,1,p,p,...
struct PqReport {
  enum class Verdict { Consistent, Inconsistent, Inapplicable };
  Verdict verdict = Verdict::Inapplicable;
  std::string detail;
  bool measured_tree = false;
};
PqReport pq_consistency(const Window& rooted, int p, int q);

}  // namespace digwin
