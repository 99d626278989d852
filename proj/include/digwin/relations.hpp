#pragma once

#include <optional>
#include <vector>

#include "digwin/partition.hpp"
#include "digwin/window.hpp"

namespace digwin {

// Classes of equal n-step descendant sets over `domain`. A vertex is only
// classified when its cone is exact in the window (layers 0..n-1 interior);
// the rest are excluded and reported.
struct DeltaResult {
  Partition partition;
  std::vector<VertexId> excluded;
};
DeltaResult delta_partition(const Window& w, int n,
                            const std::vector<VertexId>& domain);

// Checks that vertices with equal n-step descendant sets also have equal
// (n+1)-step sets. A violation would be a window bug, not mathematics.
struct MonotonicityReport {
  bool ok = true;
  std::optional<std::pair<VertexId, VertexId>> violation;
  std::vector<VertexId> excluded;
};
MonotonicityReport delta_monotonicity_check(const Window& w, int n,
                                            const std::vector<VertexId>& domain);

// Smallest k >= 1 such that, for every tested layer l in [k, depth-1], all
// descendants of a layer-l vertex share its first-layer ancestor set.
// A missing k is window-relative evidence only.
struct G3Result {
  std::optional<int> k;
  int depth = 0;
  // Witness table: per vertex of the rooted window, its ancestors in layer 1.
  std::vector<std::vector<VertexId>> first_layer_ancestors;
};
G3Result find_g3_k(const Window& rooted);

struct RhoContext {
  int k = 1;       // the common-ancestry constant
  int layer = 1;   // l >= k; the layer being partitioned
};

// Partition of layer l by equality of ancestor sets in layer l-k+1.
Partition rho_partition(const Window& rooted, const RhoContext& ctx);

// Quotient of the descendant set of one layer-(2k-1) class by the relation
// above: records whether it is a tree out to the window edge and the
// out-valency multiset of its interior classes.
struct RhoQuotientReport {
  bool is_tree_to_window = false;
  std::vector<std::size_t> out_valencies;          // interior classes only
  std::optional<std::size_t> constant_out_valency;  // s, when uniform
  std::size_t class_count = 0;
};
RhoQuotientReport rho_quotient_tree_check(const Window& rooted, int k);

// Classes of vertices sharing both the alternet they are sinks of and the
// alternet they are sources of; computed from complete alternets only.
struct RPartitionResult {
  Partition partition;
  std::vector<VertexId> excluded;  // interior vertices with no complete pair
};
RPartitionResult r_partition(const Window& w);

}  // namespace digwin
