#pragma once

#include <optional>
#include <vector>

#include "digwin/window.hpp"

namespace digwin {

struct ReachSet {
  std::vector<VertexId> verts;  // sorted
  // True when some vertex expanded on the way (any frontier before the last)
  // is a boundary vertex, so the set may be incomplete for the modelled object.
  bool window_limited = false;
};

// Endpoints of s-arcs from u: directed walks of length s whose steps never
// immediately backtrack (u_{i-1} != u_{i+1}).
ReachSet descendants_at(const Window& w, VertexId u, int s);
// Mirror: vertices with an s-arc into u.
ReachSet ancestors_at(const Window& w, VertexId u, int s);

// Union of descendants_at for 0..s.
ReachSet descendants_up_to(const Window& w, VertexId u, int s);

// The rooted sub-window on all descendants of `root` out to depth d.
// Requires layers 0..d-1 fully interior; the layer-d rim may be boundary.
// Result levels are the layer indices; interior = original interior at
// depth < d; root recorded.
Window descendant_window(const Window& w, VertexId root, int d);

enum class P3Verdict { HoldsToDepth, FailsAt, Inconclusive };

// Layer statistics of a rooted window: sizes |layer_i|, the common in-valency
// r_i of each layer inside the window, the stabilization index N of the r
// sequence (only declared with >= 2 trailing repeats against the window
// edge), and the strict-growth verdict.
struct LayerProfile {
  int depth = 0;                             // deepest computed layer
  std::size_t out_valency = 0;               // m, from the root
  std::vector<std::size_t> layer_sizes;      // index 0..depth
  std::vector<std::size_t> in_valencies;     // r_i at index i-1, i in 1..depth
  std::optional<int> stabilization_index;    // N
  std::optional<std::size_t> ultimate_in_valency;  // r_N
  P3Verdict p3 = P3Verdict::Inconclusive;
  int p3_fails_at = 0;  // meaningful when p3 == FailsAt

  struct Refutation {  // two same-layer vertices with different in-valency
    int layer;
    VertexId a, b;
    std::size_t valency_a, valency_b;
  };
  std::optional<Refutation> refutation;
};

LayerProfile layer_profile(const Window& rooted);

}  // namespace digwin
