#include "digwin/digraph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "digwin/error.hpp"

namespace digwin {

Digraph Digraph::from_edges(std::size_t vertex_count,
                            const std::vector<Edge>& edges) {
  Digraph g;
  g.out_.resize(vertex_count);
  g.in_.resize(vertex_count);

  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto [u, v] = sorted[i];
    if (u >= vertex_count || v >= vertex_count) {
      throw Error("edge endpoint out of range: (" + std::to_string(u) + "," +
                  std::to_string(v) + ") with vertex_count " +
                  std::to_string(vertex_count));
    }
    if (u == v) {
      throw Error("loop edge rejected: (" + std::to_string(u) + "," +
                  std::to_string(v) + ")");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      ++g.duplicates_;
      continue;
    }
    g.edges_.push_back(sorted[i]);
    g.out_[u].push_back(v);
    g.in_[v].push_back(u);
  }
  for (auto& nbrs : g.in_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

bool Digraph::has_edge(VertexId u, VertexId v) const {
  if (u >= out_.size() || v >= out_.size()) return false;
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::optional<std::size_t> Digraph::edge_index(VertexId u, VertexId v) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  if (it == edges_.end() || *it != Edge{u, v}) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

InducedSubdigraph induced_subdigraph(const Digraph& g,
                                     const std::vector<VertexId>& subset) {
  std::vector<VertexId> verts = subset;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (VertexId v : verts) {
    if (!g.has_vertex(v)) {
      throw Error("induced_subdigraph: unknown vertex " + std::to_string(v));
    }
  }
  std::vector<std::int64_t> new_id(g.vertex_count(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) new_id[verts[i]] = (std::int64_t)i;

  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (new_id[u] >= 0 && new_id[v] >= 0) {
      edges.push_back({(VertexId)new_id[u], (VertexId)new_id[v]});
    }
  }
  return {Digraph::from_edges(verts.size(), edges), std::move(verts)};
}

std::vector<std::vector<VertexId>> components_after_removal(
    const Digraph& g, const std::vector<VertexId>& removed) {
  std::vector<char> gone(g.vertex_count(), 0);
  for (VertexId v : removed) {
    if (!g.has_vertex(v)) {
      throw Error("components_after_removal: unknown vertex " +
                  std::to_string(v));
    }
    gone[v] = 1;
  }
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::vector<VertexId>> comps;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (gone[s] || seen[s]) continue;
    std::vector<VertexId> comp;
    std::queue<VertexId> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      comp.push_back(v);
      auto visit = [&](VertexId w) {
        if (!gone[w] && !seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
      };
      for (VertexId w : g.out(v)) visit(w);
      for (VertexId w : g.in(v)) visit(w);
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

}  // namespace digwin
