#include "digwin/symmetry.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "digwin/error.hpp"

namespace digwin {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// One round of colour refinement. The signature of a vertex folds its own
// colour with the sorted colour lists of its out- and in-neighbourhoods.
std::vector<std::uint64_t> refine_once(const Digraph& g,
                                       const std::vector<std::uint64_t>& c) {
  std::vector<std::uint64_t> next(g.vertex_count());
  std::vector<std::uint64_t> buf;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::uint64_t h = mix(0x243f6a8885a308d3ULL, c[v]);
    buf.clear();
    for (VertexId w : g.out(v)) buf.push_back(c[w]);
    std::sort(buf.begin(), buf.end());
    for (std::uint64_t x : buf) h = mix(h, x ^ 0x517cc1b727220a95ULL);
    h = mix(h, 0xdeadbeefULL);
    buf.clear();
    for (VertexId w : g.in(v)) buf.push_back(c[w]);
    std::sort(buf.begin(), buf.end());
    for (std::uint64_t x : buf) h = mix(h, x ^ 0x2545f4914f6cdd1dULL);
    next[v] = h;
  }
  return next;
}

std::size_t distinct_count(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return (std::size_t)(std::unique(v.begin(), v.end()) - v.begin());
}

// Iterate refinement to a stable partition (bounded by n rounds).
std::vector<std::uint64_t> refine(const Digraph& g,
                                  std::vector<std::uint64_t> c) {
  std::size_t classes = distinct_count(c);
  for (std::size_t round = 0; round < g.vertex_count() + 1; ++round) {
    auto next = refine_once(g, c);
    std::size_t next_classes = distinct_count(next);
    c = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return c;
}

bool verify_mapping(const Digraph& g1, const Digraph& g2,
                    const std::vector<VertexId>& map) {
  if (map.size() != g1.vertex_count()) return false;
  if (g1.vertex_count() != g2.vertex_count()) return false;
  if (g1.edge_count() != g2.edge_count()) return false;
  std::vector<char> hit(g2.vertex_count(), 0);
  for (VertexId v : map) {
    if (v >= g2.vertex_count() || hit[v]) return false;
    hit[v] = 1;
  }
  for (const auto& [u, v] : g1.edges()) {
    if (!g2.has_edge(map[u], map[v])) return false;
  }
  return true;
}

struct Searcher {
  const Digraph& g1;
  const Digraph& g2;
  std::vector<std::uint64_t> c1, c2;
  std::vector<VertexId> order;           // g1 vertices, most constrained first
  std::vector<std::vector<VertexId>> candidates;  // per order slot
  std::size_t nodes = 0;
  std::size_t node_budget;

  Searcher(const Digraph& a, const Digraph& b, std::size_t budget)
      : g1(a), g2(b), node_budget(budget) {}

  // Returns false when the colour multisets already distinguish the graphs.
  bool prepare(const IsoConstraints& cons) {
    std::vector<std::uint64_t> base1(g1.vertex_count(), 1);
    std::vector<std::uint64_t> base2(g2.vertex_count(), 1);
    if (!cons.colors1.empty()) base1 = cons.colors1;
    if (!cons.colors2.empty()) base2 = cons.colors2;
    std::uint64_t pin_tag = 0x9d39247e33776d41ULL;
    for (const auto& [a, b] : cons.pinned) {
      pin_tag = mix(pin_tag, 0x5bd1e995ULL);
      base1[a] = mix(base1[a], pin_tag);
      base2[b] = mix(base2[b], pin_tag);
    }
    c1 = refine(g1, std::move(base1));
    c2 = refine(g2, std::move(base2));
    auto s1 = c1, s2 = c2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;

    std::map<std::uint64_t, std::vector<VertexId>> by_color;
    for (VertexId v = 0; v < g2.vertex_count(); ++v) by_color[c2[v]].push_back(v);

    order.resize(g1.vertex_count());
    for (VertexId v = 0; v < g1.vertex_count(); ++v) order[v] = v;
    std::map<std::uint64_t, std::size_t> class_size;
    for (auto& [col, vs] : by_color) class_size[col] = vs.size();
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      auto sa = class_size[c1[a]], sb = class_size[c1[b]];
      if (sa != sb) return sa < sb;
      return c1[a] < c1[b];
    });
    candidates.clear();
    for (VertexId v : order) candidates.push_back(by_color[c1[v]]);
    return true;
  }

  bool compatible(const std::vector<std::int64_t>& map, VertexId a, VertexId b) {
    // a -> b must agree with every already mapped vertex in both directions.
    for (VertexId u : g1.out(a)) {
      if (map[u] >= 0 && !g2.has_edge(b, (VertexId)map[u])) return false;
    }
    for (VertexId u : g1.in(a)) {
      if (map[u] >= 0 && !g2.has_edge((VertexId)map[u], b)) return false;
    }
    // Non-edges: counts per colour already match; check reverse images.
    for (VertexId u = 0; u < g1.vertex_count(); ++u) {
      if (map[u] < 0) continue;
      bool e1 = g1.has_edge(a, u), e2 = g2.has_edge(b, (VertexId)map[u]);
      if (e1 != e2) return false;
      bool f1 = g1.has_edge(u, a), f2 = g2.has_edge((VertexId)map[u], b);
      if (f1 != f2) return false;
    }
    return true;
  }

  std::optional<std::vector<VertexId>> search(const IsoConstraints& cons) {
    std::vector<std::int64_t> map(g1.vertex_count(), -1);
    std::vector<char> used(g2.vertex_count(), 0);
    for (const auto& [a, b] : cons.pinned) {
      if (map[a] >= 0 && map[a] != (std::int64_t)b) return std::nullopt;
      if (map[a] < 0 && used[b]) return std::nullopt;
      if (c1[a] != c2[b]) return std::nullopt;
      if (!compatible(map, a, b)) return std::nullopt;
      map[a] = b;
      used[b] = 1;
    }
    if (dfs(0, map, used)) {
      std::vector<VertexId> out(map.size());
      for (std::size_t i = 0; i < map.size(); ++i) out[i] = (VertexId)map[i];
      if (!verify_mapping(g1, g2, out)) return std::nullopt;  // hash collision
      return out;
    }
    return std::nullopt;
  }

  bool dfs(std::size_t slot, std::vector<std::int64_t>& map,
           std::vector<char>& used) {
    while (slot < order.size() && map[order[slot]] >= 0) ++slot;
    if (slot == order.size()) return true;
    VertexId a = order[slot];
    for (VertexId b : candidates[slot]) {
      if (used[b]) continue;
      ++nodes;
      if (nodes > node_budget) {
        throw Error("isomorphism search budget exceeded (" +
                    std::to_string(node_budget) + " nodes)");
      }
      if (!compatible(map, a, b)) continue;
      map[a] = b;
      used[b] = 1;
      if (dfs(slot + 1, map, used)) return true;
      map[a] = -1;
      used[b] = 0;
    }
    return false;
  }
};

constexpr std::size_t kNodeBudget = 20'000'000;

void check_cap(const Digraph& g, std::size_t cap, const char* who) {
  if (g.vertex_count() > cap) {
    throw Error(std::string(who) + ": vertex count " +
                std::to_string(g.vertex_count()) + " exceeds cap " +
                std::to_string(cap));
  }
}

}  // namespace

IsoResult is_isomorphic(const Digraph& g1, const Digraph& g2,
                        const IsoConstraints& constraints, std::size_t cap) {
  check_cap(g1, cap, "is_isomorphic");
  check_cap(g2, cap, "is_isomorphic");
  IsoResult res;
  if (g1.vertex_count() != g2.vertex_count() ||
      g1.edge_count() != g2.edge_count()) {
    return res;
  }
  Searcher s(g1, g2, kNodeBudget);
  if (!s.prepare(constraints)) {
    res.nodes_explored = s.nodes;
    return res;
  }
  res.mapping = s.search(constraints);
  res.nodes_explored = s.nodes;
  return res;
}

namespace {

// Shared engine: exact orbits of vertices and of ordered vertex pairs under
// the full automorphism group. A pinned search that fails is a proof that
// the pinned images lie in different orbits; successes contribute verified
// generators whose closure merges everything else.
struct OrbitEngine {
  const Digraph& g;
  std::vector<std::uint64_t> colors;
  std::vector<std::vector<VertexId>> generators;
  std::size_t nodes = 0;

  OrbitEngine(const Digraph& graph, std::vector<std::uint64_t> cols)
      : g(graph), colors(std::move(cols)) {
    if (colors.empty()) colors.assign(g.vertex_count(), 1);
  }

  std::optional<std::vector<VertexId>> pinned_auto(
      const std::vector<std::pair<VertexId, VertexId>>& pins) {
    IsoConstraints cons;
    cons.pinned = pins;
    cons.colors1 = colors;
    cons.colors2 = colors;
    IsoResult r = is_isomorphic(g, g, cons, g.vertex_count());
    nodes += r.nodes_explored;
    return r.mapping;
  }

  Partition vertex_orbits() {
    std::size_t n = g.vertex_count();
    DisjointSet uf(n);
    auto apply_gens = [&]() {
      for (const auto& p : generators)
        for (VertexId v = 0; v < n; ++v) uf.unite(v, p[v]);
    };
    apply_gens();
    auto refined = refine(g, colors);
    std::map<std::uint64_t, std::vector<VertexId>> by_color;
    for (VertexId v = 0; v < n; ++v) by_color[refined[v]].push_back(v);
    for (auto& [col, vs] : by_color) {
      std::vector<VertexId> reps;
      for (VertexId v : vs) {
        bool merged = false;
        for (VertexId r : reps) {
          if (uf.find(v) == uf.find(r)) {
            merged = true;
            break;
          }
          if (auto p = pinned_auto({{r, v}})) {
            generators.push_back(*p);
            for (VertexId w = 0; w < n; ++w) uf.unite(w, (*p)[w]);
            merged = true;
            break;
          }
        }
        if (!merged) reps.push_back(v);
      }
    }
    std::map<std::size_t, std::vector<VertexId>> groups;
    for (VertexId v = 0; v < n; ++v) groups[uf.find(v)].push_back(v);
    std::vector<std::vector<VertexId>> classes;
    for (auto& [root, vs] : groups) classes.push_back(vs);
    return Partition::from_classes(std::move(classes));
  }

  // Orbits of a family of ordered pairs (closed under the group action on
  // the family, e.g. all edges, or all pairs at one arc-distance).
  std::vector<std::vector<std::size_t>> pair_orbits(
      const std::vector<Edge>& pairs) {
    std::map<Edge, std::size_t> index;
    for (std::size_t i = 0; i < pairs.size(); ++i) index[pairs[i]] = i;
    DisjointSet uf(pairs.size());
    auto apply_gen = [&](const std::vector<VertexId>& p) {
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        Edge img{p[pairs[i].first], p[pairs[i].second]};
        auto it = index.find(img);
        if (it != index.end()) uf.unite(i, it->second);
      }
    };
    for (const auto& p : generators) apply_gen(p);

    auto refined = refine(g, colors);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::size_t>>
        by_color;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      by_color[{refined[pairs[i].first], refined[pairs[i].second]}].push_back(i);
    }
    for (auto& [col, idxs] : by_color) {
      std::vector<std::size_t> reps;
      for (std::size_t i : idxs) {
        bool merged = false;
        for (std::size_t r : reps) {
          if (uf.find(i) == uf.find(r)) {
            merged = true;
            break;
          }
          if (auto p = pinned_auto({{pairs[r].first, pairs[i].first},
                                    {pairs[r].second, pairs[i].second}})) {
            generators.push_back(*p);
            apply_gen(*p);
            merged = true;
            break;
          }
        }
        if (!merged) reps.push_back(i);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < pairs.size(); ++i) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> classes;
    for (auto& [root, is] : groups) classes.push_back(is);
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
  }
};

}  // namespace

OrbitStructure automorphism_orbits(const Digraph& g,
                                   const std::vector<std::uint64_t>& colors,
                                   std::size_t cap) {
  check_cap(g, cap, "automorphism_orbits");
  OrbitEngine eng(g, colors);
  OrbitStructure out;
  out.vertex_orbits = eng.vertex_orbits();
  out.edge_orbits.classes = eng.pair_orbits(g.edges());
  out.generators = eng.generators;
  out.nodes_explored = eng.nodes;
  // Generators were verified inside the search; re-verify defensively.
  for (const auto& p : out.generators) {
    if (!verify_mapping(g, g, p)) throw Error("internal: unverified generator");
  }
  return out;
}

bool check_edge_transitive(const Digraph& g, std::size_t cap) {
  check_cap(g, cap, "check_edge_transitive");
  if (g.edge_count() <= 1) return true;
  OrbitEngine eng(g, {});
  return eng.pair_orbits(g.edges()).size() == 1;
}

bool check_distance_transitive(const Digraph& g, std::size_t cap) {
  check_cap(g, cap, "check_distance_transitive");
  std::size_t n = g.vertex_count();
  // Exact arc-distance = BFS depth in the state space (vertex, predecessor),
  // where steps may not immediately backtrack.
  std::map<int, std::vector<Edge>> by_distance;
  for (VertexId u = 0; u < n; ++u) {
    std::vector<std::int64_t> first(n, -1);
    // State id: v * (n+1) + (prev+1), prev = n encodes "none".
    std::vector<char> seen_state(n * (n + 1), 0);
    std::vector<std::pair<VertexId, std::int64_t>> frontier{{u, -1}};
    seen_state[u * (n + 1) + 0] = 1;
    first[u] = 0;
    by_distance[0].push_back({u, u});
    for (int s = 1; !frontier.empty(); ++s) {
      std::vector<std::pair<VertexId, std::int64_t>> next;
      for (const auto& [v, prev] : frontier) {
        for (VertexId w : g.out(v)) {
          if ((std::int64_t)w == prev) continue;
          std::size_t sid = (std::size_t)w * (n + 1) + (std::size_t)(v + 1);
          if (seen_state[sid]) continue;
          seen_state[sid] = 1;
          next.push_back({w, (std::int64_t)v});
          if (first[w] < 0) {
            first[w] = s;
            by_distance[s].push_back({u, w});
          }
        }
      }
      frontier = std::move(next);
    }
  }
  OrbitEngine eng(g, {});
  for (auto& [s, pairs] : by_distance) {
    std::sort(pairs.begin(), pairs.end());
    if (eng.pair_orbits(pairs).size() != 1) return false;
  }
  return true;
}

std::vector<std::size_t> layer_transitivity_diagnostic(const Window& rooted,
                                                       std::size_t cap) {
  if (!rooted.root) throw Error("layer diagnostic requires a rooted window");
  check_cap(rooted.graph, cap, "layer_transitivity_diagnostic");
  std::size_t n = rooted.vertex_count();
  std::vector<std::uint64_t> colors(n, 1);
  for (VertexId v = 0; v < n; ++v) {
    if (rooted.is_interior(v)) colors[v] = mix(colors[v], 0xabcdULL);
  }
  colors[*rooted.root] = mix(colors[*rooted.root], 0x1234567ULL);

  OrbitEngine eng(rooted.graph, colors);
  Partition orbits = eng.vertex_orbits();
  auto orbit_of = orbits.class_of(n);

  // Layers from the root, as in layer_profile.
  std::vector<std::int64_t> layer(n, -1);
  std::vector<VertexId> frontier{*rooted.root};
  layer[*rooted.root] = 0;
  std::vector<std::size_t> counts;
  int depth = 0;
  while (!frontier.empty()) {
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId u : rooted.graph.out(v)) {
        if (layer[u] < 0) {
          layer[u] = depth + 1;
          next.push_back(u);
        }
      }
    }
    ++depth;
    frontier = std::move(next);
  }
  int max_layer = 0;
  for (VertexId v = 0; v < n; ++v) max_layer = std::max(max_layer, (int)layer[v]);
  counts.assign((std::size_t)max_layer + 1, 0);
  for (int l = 0; l <= max_layer; ++l) {
    std::vector<std::int64_t> seen;
    for (VertexId v = 0; v < n; ++v) {
      if (layer[v] == l) seen.push_back(orbit_of[v]);
    }
    std::sort(seen.begin(), seen.end());
    counts[(std::size_t)l] =
        (std::size_t)(std::unique(seen.begin(), seen.end()) - seen.begin());
  }
  return counts;
}

}  // namespace digwin
