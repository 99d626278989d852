#include "digwin/reachability.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "digwin/error.hpp"
#include "digwin/symmetry.hpp"

namespace digwin {

EdgePartition reach_partition(const Window& w) {
  const Digraph& g = w.graph;
  const auto& edges = g.edges();
  DisjointSet uf(edges.size());
  // All out-edges of a vertex share its tail; all in-edges share its head.
  constexpr std::size_t kNone = SIZE_MAX;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::size_t prev = kNone;
    for (VertexId u : g.out(v)) {
      std::size_t e = *g.edge_index(v, u);
      if (prev != kNone) uf.unite(prev, e);
      prev = e;
    }
    prev = kNone;
    for (VertexId u : g.in(v)) {
      std::size_t e = *g.edge_index(u, v);
      if (prev != kNone) uf.unite(prev, e);
      prev = e;
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t e = 0; e < edges.size(); ++e) groups[uf.find(e)].push_back(e);
  EdgePartition p;
  for (auto& [root, es] : groups) p.classes.push_back(es);
  std::sort(p.classes.begin(), p.classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

namespace {

std::optional<TwoArcWitness> find_two_arc(const Window& w,
                                          const EdgePartition& p) {
  const Digraph& g = w.graph;
  auto cls = p.class_of(g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId u : g.in(v)) {
      auto e = g.edge_index(u, v);
      for (VertexId x : g.out(v)) {
        if (x == u) continue;  // immediate backtrack is not a 2-arc
        auto f = g.edge_index(v, x);
        if (cls[*e] == cls[*f]) return TwoArcWitness{u, v, x};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AlternetsResult alternets(const Window& w) {
  EdgePartition p = reach_partition(w);
  AlternetsResult out;
  const auto& edges = w.graph.edges();
  for (const auto& cls : p.classes) {
    Alternet a;
    a.edges = cls;
    std::set<VertexId> xs, ys;
    for (std::size_t e : cls) {
      xs.insert(edges[e].first);
      ys.insert(edges[e].second);
    }
    a.sources.assign(xs.begin(), xs.end());
    a.sinks.assign(ys.begin(), ys.end());
    a.complete = true;
    for (VertexId v : a.sources) a.complete = a.complete && w.is_interior(v);
    for (VertexId v : a.sinks) a.complete = a.complete && w.is_interior(v);
    std::vector<VertexId> both;
    std::set_intersection(a.sources.begin(), a.sources.end(), a.sinks.begin(),
                          a.sinks.end(), std::back_inserter(both));
    a.bipartite = both.empty();
    out.items.push_back(std::move(a));
  }
  out.universality = find_two_arc(w, p);
  return out;
}

UniversalitySignal universality_signal(const Window& w) {
  return {find_two_arc(w, reach_partition(w))};
}

AlternetGraph alternet_graph(const Window& w) {
  return alternet_graph(w, alternets(w));
}

AlternetGraph alternet_graph(const Window& w, const AlternetsResult& alts) {
  (void)w;
  AlternetGraph out;
  for (std::size_t i = 0; i < alts.items.size(); ++i) {
    if (alts.items[i].complete) {
      out.alternet_index.push_back(i);
    } else {
      ++out.excluded_incomplete;
    }
  }
  for (std::size_t a = 0; a < out.alternet_index.size(); ++a) {
    const auto& A = alts.items[out.alternet_index[a]];
    for (std::size_t b = 0; b < out.alternet_index.size(); ++b) {
      if (a == b) continue;
      const auto& B = alts.items[out.alternet_index[b]];
      std::vector<VertexId> inter;
      std::set_intersection(A.sinks.begin(), A.sinks.end(), B.sources.begin(),
                            B.sources.end(), std::back_inserter(inter));
      if (!inter.empty()) {
        out.arcs.push_back({a, b, inter.size()});
        if (inter.size() > 1) out.loosely_attached = false;
      }
    }
  }
  return out;
}

ClassCReport class_c_membership(const Window& w, const Alternet& alt,
                                std::size_t cap) {
  if (!alt.complete) {
    throw Error("class membership requires a complete alternet");
  }
  if (!alt.bipartite) {
    throw Error("class membership requires a bipartite alternet");
  }
  ClassCReport rep;
  rep.sink_count = alt.sinks.size();

  // The subdigraph spanned by the class: its edges only, on X ∪ Y.
  std::vector<VertexId> verts;
  verts.insert(verts.end(), alt.sources.begin(), alt.sources.end());
  verts.insert(verts.end(), alt.sinks.begin(), alt.sinks.end());
  std::sort(verts.begin(), verts.end());
  std::map<VertexId, VertexId> local;
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = (VertexId)i;
  std::vector<Edge> ledges;
  for (std::size_t e : alt.edges) {
    auto [u, v] = w.graph.edges()[e];
    ledges.push_back({local[u], local[v]});
  }
  Digraph span = Digraph::from_edges(verts.size(), ledges);

  rep.edge_transitive = check_edge_transitive(span, cap);

  // Equal out-neighbourhood classes on the sources.
  std::map<std::vector<VertexId>, std::vector<VertexId>> by_outs;
  for (VertexId x : alt.sources) {
    VertexId lx = local[x];
    std::vector<VertexId> outs(span.out(lx).begin(), span.out(lx).end());
    by_outs[outs].push_back(x);
  }
  bool all_match = true;
  for (auto& [outs, xs] : by_outs) {
    rep.delta_class_sizes.push_back(xs.size());
    if (xs.size() > 1) rep.delta_nontrivial = true;
    if (xs.size() != rep.sink_count) all_match = false;
  }
  std::sort(rep.delta_class_sizes.begin(), rep.delta_class_sizes.end());
  rep.member = !alt.sources.empty() && !alt.sinks.empty() &&
               rep.edge_transitive && rep.delta_nontrivial && all_match;
  return rep;
}

}  // namespace digwin
