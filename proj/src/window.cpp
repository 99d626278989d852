#include "digwin/window.hpp"

#include <algorithm>
#include <set>

#include "digwin/error.hpp"

namespace digwin {

void Window::validate() const {
  std::size_t n = graph.vertex_count();
  if (interior.size() != n) throw Error("window: interior flag count mismatch");
  if (level && level->size() != n) throw Error("window: level count mismatch");
  if (!labels.empty() && labels.size() != n)
    throw Error("window: label count mismatch");
  if (root && !graph.has_vertex(*root)) throw Error("window: root not a vertex");
  if (level) {
    const auto& lv = *level;
    for (const auto& [u, v] : graph.edges()) {
      if (lv[v] != lv[u] + 1) {
        throw Error("window: level contract violated on edge (" +
                    std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
}

Window induced_window(const Window& w, const std::vector<VertexId>& subset) {
  auto sub = induced_subdigraph(w.graph, subset);
  Window out;
  out.graph = std::move(sub.graph);
  out.interior.resize(sub.original_id.size());
  if (w.level) out.level.emplace(sub.original_id.size());
  if (!w.labels.empty()) out.labels.resize(sub.original_id.size());
  for (std::size_t i = 0; i < sub.original_id.size(); ++i) {
    VertexId orig = sub.original_id[i];
    out.interior[i] = w.interior[orig];
    if (w.level) (*out.level)[i] = (*w.level)[orig];
    if (!w.labels.empty()) out.labels[i] = w.labels[orig];
  }
  if (w.root) {
    auto it = std::lower_bound(sub.original_id.begin(), sub.original_id.end(),
                               *w.root);
    if (it != sub.original_id.end() && *it == *w.root) {
      out.root = (VertexId)(it - sub.original_id.begin());
    }
  }
  out.meta = w.meta;
  return out;
}

QuotientResult quotient_by(const Digraph& g, const Partition& p) {
  auto idx = p.class_of(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (idx[v] < 0) {
      throw Error("quotient: partition domain does not cover vertex " +
                  std::to_string(v));
    }
  }
  QuotientResult out;
  out.classes = p;
  out.class_map = idx;
  std::set<Edge> qedges;
  for (const auto& [u, v] : g.edges()) {
    auto a = (VertexId)idx[u];
    auto b = (VertexId)idx[v];
    if (a == b) {
      ++out.dropped_self_edges;
      continue;
    }
    qedges.insert({a, b});
  }
  out.graph = Digraph::from_edges(
      p.size(), std::vector<Edge>(qedges.begin(), qedges.end()));
  return out;
}

}  // namespace digwin
