#include "digwin/descent.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "digwin/error.hpp"

namespace digwin {

namespace {

// One layer step of s-arc reachability. States are (vertex, predecessor);
// the predecessor exclusion implements the no-immediate-backtrack rule.
using State = std::pair<VertexId, std::int64_t>;

std::vector<State> expand(const Digraph& g, const std::vector<State>& frontier,
                          bool forward) {
  std::set<State> next;
  for (const auto& [v, prev] : frontier) {
    auto nbrs = forward ? g.out(v) : g.in(v);
    for (VertexId w : nbrs) {
      if ((std::int64_t)w == prev) continue;
      next.insert({w, (std::int64_t)v});
    }
  }
  return {next.begin(), next.end()};
}

ReachSet arc_layer(const Window& w, VertexId u, int s, bool forward) {
  if (!w.graph.has_vertex(u)) {
    throw Error("unknown vertex " + std::to_string(u));
  }
  if (s < 0) throw Error("arc length must be >= 0");
  ReachSet out;
  std::vector<State> frontier{{u, -1}};
  for (int i = 0; i < s; ++i) {
    for (const auto& [v, prev] : frontier) {
      (void)prev;
      if (!w.is_interior(v)) out.window_limited = true;
    }
    frontier = expand(w.graph, frontier, forward);
  }
  std::set<VertexId> verts;
  for (const auto& [v, prev] : frontier) verts.insert(v);
  out.verts.assign(verts.begin(), verts.end());
  return out;
}

}  // namespace

ReachSet descendants_at(const Window& w, VertexId u, int s) {
  return arc_layer(w, u, s, true);
}

ReachSet ancestors_at(const Window& w, VertexId u, int s) {
  return arc_layer(w, u, s, false);
}

ReachSet descendants_up_to(const Window& w, VertexId u, int s) {
  ReachSet out;
  std::set<VertexId> all;
  for (int i = 0; i <= s; ++i) {
    ReachSet layer = descendants_at(w, u, i);
    out.window_limited = out.window_limited || layer.window_limited;
    all.insert(layer.verts.begin(), layer.verts.end());
  }
  out.verts.assign(all.begin(), all.end());
  return out;
}

Window descendant_window(const Window& w, VertexId root, int d) {
  if (d < 1) throw Error("descendant window depth must be >= 1");
  if (!w.graph.has_vertex(root)) {
    throw Error("unknown vertex " + std::to_string(root));
  }
  std::vector<std::vector<VertexId>> layers;
  std::vector<State> frontier{{root, -1}};
  std::set<VertexId> seen;
  std::vector<std::int64_t> first_layer(w.vertex_count(), -1);
  for (int i = 0; i <= d; ++i) {
    std::vector<VertexId> layer;
    for (const auto& [v, prev] : frontier) {
      (void)prev;
      if (first_layer[v] < 0) {
        first_layer[v] = i;
        layer.push_back(v);
      }
    }
    std::sort(layer.begin(), layer.end());
    if (i < d) {
      for (VertexId v : layer) {
        if (!w.is_interior(v)) {
          throw Error("window too small for depth " + std::to_string(d) +
                      ": boundary vertex " + std::to_string(v) +
                      " in layer " + std::to_string(i));
        }
      }
    }
    layers.push_back(std::move(layer));
    if (i < d) frontier = expand(w.graph, frontier, true);
  }

  std::vector<VertexId> verts;
  for (const auto& layer : layers) verts.insert(verts.end(), layer.begin(), layer.end());
  std::sort(verts.begin(), verts.end());

  auto sub = induced_subdigraph(w.graph, verts);
  Window out;
  out.graph = std::move(sub.graph);
  out.interior.resize(sub.original_id.size());
  out.level.emplace(sub.original_id.size());
  if (!w.labels.empty()) out.labels.resize(sub.original_id.size());
  for (std::size_t i = 0; i < sub.original_id.size(); ++i) {
    VertexId orig = sub.original_id[i];
    int layer = (int)first_layer[orig];
    (*out.level)[i] = layer;
    out.interior[i] = (layer < d && w.interior[orig]) ? 1 : 0;
    if (!w.labels.empty()) out.labels[i] = w.labels[orig];
  }
  auto it = std::lower_bound(sub.original_id.begin(), sub.original_id.end(), root);
  out.root = (VertexId)(it - sub.original_id.begin());
  out.meta = w.meta;
  out.meta["derived"] = "descendant_window";
  out.meta["depth"] = std::to_string(d);
  // Layer indices serve as levels only when the result is graded.
  for (const auto& [a, b] : out.graph.edges()) {
    if ((*out.level)[b] != (*out.level)[a] + 1) {
      out.level.reset();
      break;
    }
  }
  return out;
}

LayerProfile layer_profile(const Window& rooted) {
  if (!rooted.root) throw Error("layer_profile requires a rooted window");
  VertexId root = *rooted.root;
  const Digraph& g = rooted.graph;

  // Recompute layers from the root; they must tile the window.
  std::vector<std::int64_t> layer_of(g.vertex_count(), -1);
  std::vector<std::vector<VertexId>> layers;
  std::vector<State> frontier{{root, -1}};
  int depth = -1;
  for (int i = 0; !frontier.empty(); ++i) {
    std::vector<VertexId> layer;
    for (const auto& [v, prev] : frontier) {
      (void)prev;
      if (layer_of[v] < 0) {
        layer_of[v] = i;
        layer.push_back(v);
      }
    }
    if (layer.empty()) break;
    std::sort(layer.begin(), layer.end());
    layers.push_back(std::move(layer));
    depth = i;
    if ((std::size_t)i > g.vertex_count()) break;  // cyclic input guard
    frontier = expand(g, frontier, true);
  }

  LayerProfile p;
  p.depth = depth;
  p.out_valency = g.out(root).size();
  for (const auto& layer : layers) p.layer_sizes.push_back(layer.size());

  for (int i = 1; i <= depth; ++i) {
    std::size_t r = g.in(layers[i].front()).size();
    for (VertexId v : layers[i]) {
      std::size_t rv = g.in(v).size();
      if (rv != r && !p.refutation) {
        p.refutation = LayerProfile::Refutation{
            i, layers[i].front(), v, r, rv};
      }
    }
    p.in_valencies.push_back(r);
  }

  // Strict growth check, first failure indexed by the higher layer.
  p.p3 = depth >= 1 ? P3Verdict::HoldsToDepth : P3Verdict::Inconclusive;
  for (int i = 1; i <= depth; ++i) {
    if (p.layer_sizes[i] <= p.layer_sizes[i - 1]) {
      p.p3 = P3Verdict::FailsAt;
      p.p3_fails_at = i;
      break;
    }
  }

  // N: the r sequence must hold its final value for >= 2 entries through the
  // window edge; otherwise the window cannot witness stabilization.
  if (!p.refutation && depth >= 2) {
    int last_change = 1;
    for (int i = 2; i <= depth; ++i) {
      if (p.in_valencies[i - 1] != p.in_valencies[i - 2]) last_change = i;
    }
    if (depth - last_change + 1 >= 2) {
      p.stabilization_index = last_change;
      p.ultimate_in_valency = p.in_valencies[last_change - 1];
    }
  }
  return p;
}

}  // namespace digwin
