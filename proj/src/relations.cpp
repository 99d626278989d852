#include "digwin/relations.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "digwin/descent.hpp"
#include "digwin/error.hpp"
#include "digwin/reachability.hpp"

namespace digwin {

namespace {

std::uint64_t fnv1a(const std::vector<VertexId>& vs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (VertexId v : vs) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

bool cone_interior(const Window& w, VertexId u, int n) {
  for (int i = 0; i < n; ++i) {
    auto layer = descendants_at(w, u, i);
    for (VertexId v : layer.verts) {
      if (!w.is_interior(v)) return false;
    }
  }
  return true;
}

Partition group_by_sets(const std::vector<std::pair<VertexId, std::vector<VertexId>>>& items) {
  // Hash signatures into buckets, then split buckets by exact comparison.
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < items.size(); ++i) {
    buckets[fnv1a(items[i].second)].push_back(i);
  }
  std::vector<std::vector<VertexId>> classes;
  for (auto& [h, idxs] : buckets) {
    std::vector<std::vector<std::size_t>> split;
    for (std::size_t i : idxs) {
      bool placed = false;
      for (auto& grp : split) {
        if (items[grp.front()].second == items[i].second) {
          grp.push_back(i);
          placed = true;
          break;
        }
      }
      if (!placed) split.push_back({i});
    }
    for (auto& grp : split) {
      std::vector<VertexId> cls;
      for (std::size_t i : grp) cls.push_back(items[i].first);
      classes.push_back(std::move(cls));
    }
  }
  return Partition::from_classes(std::move(classes));
}

}  // namespace

DeltaResult delta_partition(const Window& w, int n,
                            const std::vector<VertexId>& domain) {
  if (n < 1) throw Error("delta index must be >= 1");
  std::vector<VertexId> dom = domain;
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());

  DeltaResult res;
  std::vector<std::pair<VertexId, std::vector<VertexId>>> items;
  for (VertexId u : dom) {
    if (!w.graph.has_vertex(u)) throw Error("unknown vertex " + std::to_string(u));
    if (!cone_interior(w, u, n)) {
      res.excluded.push_back(u);
      continue;
    }
    items.push_back({u, descendants_at(w, u, n).verts});
  }
  res.partition = group_by_sets(items);
  return res;
}

MonotonicityReport delta_monotonicity_check(const Window& w, int n,
                                            const std::vector<VertexId>& domain) {
  MonotonicityReport rep;
  std::vector<VertexId> eligible;
  for (VertexId u : domain) {
    if (cone_interior(w, u, n + 1)) {
      eligible.push_back(u);
    } else {
      rep.excluded.push_back(u);
    }
  }
  auto dn = delta_partition(w, n, eligible);
  auto dn1 = delta_partition(w, n + 1, eligible);
  if (!dn.partition.refines(dn1.partition)) {
    rep.ok = false;
    auto idx = dn1.partition.class_of(w.vertex_count());
    for (const auto& cls : dn.partition.classes) {
      for (std::size_t i = 1; i < cls.size(); ++i) {
        if (idx[cls[i]] != idx[cls[0]]) {
          rep.violation = {cls[0], cls[i]};
          return rep;
        }
      }
    }
  }
  return rep;
}

namespace {

struct Layered {
  std::vector<std::int64_t> layer;  // -1 outside
  std::vector<std::vector<VertexId>> layers;
  std::vector<VertexId> topo;  // topological order, root first
};

Layered layering(const Window& rooted) {
  if (!rooted.root) throw Error("operation requires a rooted window");
  const Digraph& g = rooted.graph;
  Layered out;
  out.layer.assign(g.vertex_count(), -1);
  std::vector<VertexId> frontier{*rooted.root};
  out.layer[*rooted.root] = 0;
  int depth = 0;
  out.layers.push_back(frontier);
  while (!frontier.empty()) {
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId u : g.out(v)) {
        if (out.layer[u] < 0) {
          out.layer[u] = depth + 1;
          next.push_back(u);
        }
      }
    }
    ++depth;
    std::sort(next.begin(), next.end());
    if (!next.empty()) out.layers.push_back(next);
    frontier = std::move(next);
  }
  // Kahn order restricted to the reachable set; rejects cyclic windows.
  std::vector<std::size_t> indeg(g.vertex_count(), 0);
  std::size_t reachable = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (out.layer[v] < 0) continue;
    ++reachable;
    for (VertexId u : g.out(v)) {
      if (out.layer[u] >= 0) ++indeg[u];
    }
  }
  std::set<VertexId> ready;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (out.layer[v] >= 0 && indeg[v] == 0) ready.insert(v);
  }
  while (!ready.empty()) {
    VertexId v = *ready.begin();
    ready.erase(ready.begin());
    out.topo.push_back(v);
    for (VertexId u : g.out(v)) {
      if (out.layer[u] >= 0 && --indeg[u] == 0) ready.insert(u);
    }
  }
  if (out.topo.size() != reachable) {
    throw Error("rooted window contains a directed cycle");
  }
  return out;
}

// Per-vertex sorted ancestor sets within a fixed layer, by forward DP.
std::vector<std::vector<VertexId>> ancestors_in_layer(const Window& rooted,
                                                      const Layered& lay,
                                                      int target_layer) {
  const Digraph& g = rooted.graph;
  std::vector<std::vector<VertexId>> anc(g.vertex_count());
  for (VertexId v : lay.topo) {
    if (lay.layer[v] == target_layer) {
      anc[v] = {v};
      continue;
    }
    if (lay.layer[v] < target_layer) continue;
    std::set<VertexId> acc;
    for (VertexId u : g.in(v)) {
      if (lay.layer[u] >= 0) acc.insert(anc[u].begin(), anc[u].end());
    }
    anc[v].assign(acc.begin(), acc.end());
  }
  return anc;
}

}  // namespace

G3Result find_g3_k(const Window& rooted) {
  Layered lay = layering(rooted);
  G3Result res;
  res.depth = (int)lay.layers.size() - 1;
  res.first_layer_ancestors = ancestors_in_layer(rooted, lay, 1);
  if (res.depth < 1) return res;

  const Digraph& g = rooted.graph;
  const auto& anc1 = res.first_layer_ancestors;
  // prop(v): every window descendant of v shares v's first-layer ancestors.
  std::vector<char> prop(g.vertex_count(), 1);
  for (auto it = lay.topo.rbegin(); it != lay.topo.rend(); ++it) {
    VertexId v = *it;
    for (VertexId u : g.out(v)) {
      if (lay.layer[u] < 0) continue;
      if (!prop[u] || anc1[u] != anc1[v]) {
        prop[v] = 0;
        break;
      }
    }
  }
  for (int k = 1; k <= res.depth - 1; ++k) {
    bool ok = true;
    for (int l = k; l <= res.depth - 1 && ok; ++l) {
      for (VertexId v : lay.layers[(std::size_t)l]) {
        if (!prop[v]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      res.k = k;
      break;
    }
  }
  return res;
}

Partition rho_partition(const Window& rooted, const RhoContext& ctx) {
  if (ctx.k < 1) throw Error("rho: k must be >= 1");
  if (ctx.layer < ctx.k) throw Error("rho: layer must be >= k");
  Layered lay = layering(rooted);
  int depth = (int)lay.layers.size() - 1;
  if (ctx.layer > depth) {
    throw Error("rho: layer " + std::to_string(ctx.layer) +
                " out of range (depth " + std::to_string(depth) + ")");
  }
  int j = ctx.layer - ctx.k + 1;
  // The ancestor chains j..layer-1 must be exact.
  for (int l = j; l <= ctx.layer - 1; ++l) {
    for (VertexId v : lay.layers[(std::size_t)l]) {
      if (!rooted.is_interior(v)) {
        throw Error("rho: layer " + std::to_string(l) +
                    " touches the window boundary");
      }
    }
  }
  auto anc = ancestors_in_layer(rooted, lay, j);
  std::vector<std::pair<VertexId, std::vector<VertexId>>> items;
  for (VertexId v : lay.layers[(std::size_t)ctx.layer]) items.push_back({v, anc[v]});
  return group_by_sets(items);
}

RhoQuotientReport rho_quotient_tree_check(const Window& rooted, int k) {
  if (k < 1) throw Error("rho: k must be >= 1");
  Layered lay = layering(rooted);
  int depth = (int)lay.layers.size() - 1;
  int l0 = 2 * k - 1;
  if (l0 > depth) {
    throw Error("rho quotient: window depth " + std::to_string(depth) +
                " below layer " + std::to_string(l0));
  }
  // Classes per layer l0..depth, each tagged (layer, index-within-layer).
  std::vector<Partition> per_layer;
  for (int l = l0; l <= depth; ++l) {
    per_layer.push_back(rho_partition(rooted, {k, l}));
  }
  // Quotient of the descendant set of the first class in layer l0.
  const auto& base = per_layer.front().classes.front();
  std::set<VertexId> in_desc(base.begin(), base.end());
  std::vector<VertexId> frontier(base.begin(), base.end());
  while (!frontier.empty()) {
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId u : rooted.graph.out(v)) {
        if (in_desc.insert(u).second) next.push_back(u);
      }
    }
    frontier = std::move(next);
  }

  struct Node {
    int layer;
    std::vector<VertexId> members;
  };
  std::vector<Node> nodes;
  std::vector<std::int64_t> node_of(rooted.vertex_count(), -1);
  for (int l = l0; l <= depth; ++l) {
    for (const auto& cls : per_layer[(std::size_t)(l - l0)].classes) {
      std::vector<VertexId> members;
      for (VertexId v : cls) {
        if (in_desc.count(v)) members.push_back(v);
      }
      if (members.empty()) continue;
      for (VertexId v : members) node_of[v] = (std::int64_t)nodes.size();
      nodes.push_back({l, std::move(members)});
    }
  }

  RhoQuotientReport rep;
  rep.class_count = nodes.size();
  std::vector<std::set<std::size_t>> parents(nodes.size()), children(nodes.size());
  for (const auto& [u, v] : rooted.graph.edges()) {
    if (node_of[u] < 0 || node_of[v] < 0) continue;
    if (node_of[u] == node_of[v]) continue;
    parents[(std::size_t)node_of[v]].insert((std::size_t)node_of[u]);
    children[(std::size_t)node_of[u]].insert((std::size_t)node_of[v]);
  }
  rep.is_tree_to_window = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    bool is_base = nodes[i].layer == l0;
    if (!is_base && parents[i].size() != 1) rep.is_tree_to_window = false;
    if (is_base && !parents[i].empty()) rep.is_tree_to_window = false;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].layer >= depth) continue;  // rim classes lack children data
    bool interior = true;
    for (VertexId v : nodes[i].members) interior = interior && rooted.is_interior(v);
    if (!interior) continue;
    rep.out_valencies.push_back(children[i].size());
  }
  std::sort(rep.out_valencies.begin(), rep.out_valencies.end());
  if (!rep.out_valencies.empty() &&
      rep.out_valencies.front() == rep.out_valencies.back()) {
    rep.constant_out_valency = rep.out_valencies.front();
  }
  return rep;
}

RPartitionResult r_partition(const Window& w) {
  AlternetsResult alts = alternets(w);
  std::vector<std::int64_t> sink_alt(w.vertex_count(), -1);
  std::vector<std::int64_t> source_alt(w.vertex_count(), -1);
  for (std::size_t i = 0; i < alts.items.size(); ++i) {
    if (!alts.items[i].complete) continue;
    for (VertexId v : alts.items[i].sinks) sink_alt[v] = (std::int64_t)i;
    for (VertexId v : alts.items[i].sources) source_alt[v] = (std::int64_t)i;
  }
  RPartitionResult res;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<VertexId>> groups;
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (!w.is_interior(v)) continue;
    if (sink_alt[v] >= 0 && source_alt[v] >= 0) {
      groups[{sink_alt[v], source_alt[v]}].push_back(v);
    } else {
      res.excluded.push_back(v);
    }
  }
  std::vector<std::vector<VertexId>> classes;
  for (auto& [key, vs] : groups) classes.push_back(vs);
  res.partition = Partition::from_classes(std::move(classes));
  return res;
}

}  // namespace digwin
