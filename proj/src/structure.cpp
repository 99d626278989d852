#include "digwin/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "digwin/descent.hpp"
#include "digwin/error.hpp"
#include "digwin/relations.hpp"
#include "digwin/symmetry.hpp"

namespace digwin {

ZLabeling z_labeling(const Window& w) {
  const Digraph& g = w.graph;
  std::size_t n = g.vertex_count();
  ZLabeling out;
  out.f.assign(n, 0);
  std::vector<char> seen(n, 0);
  // BFS parents for witness reconstruction.
  std::vector<std::int64_t> parent(n, -1);
  std::vector<ConflictWitness::Step> parent_step(n);

  auto path_from_root = [&](VertexId x) {
    std::vector<ConflictWitness::Step> steps;
    while (parent[x] >= 0) {
      steps.push_back(parent_step[x]);
      x = (VertexId)parent[x];
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  for (VertexId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++out.component_count;
    seen[s] = 1;
    // Anchor each component to the window level when one is present.
    out.f[s] = w.level ? (*w.level)[s] : 0;
    std::vector<VertexId> queue{s};
    std::size_t head = 0;
    while (head < queue.size()) {
      VertexId v = queue[head++];
      auto relax = [&](VertexId u, bool forward) -> std::optional<VertexId> {
        int want = forward ? out.f[v] + 1 : out.f[v] - 1;
        if (!seen[u]) {
          seen[u] = 1;
          out.f[u] = want;
          parent[u] = (std::int64_t)v;
          parent_step[u] = {forward ? Edge{v, u} : Edge{u, v}, forward};
          queue.push_back(u);
          return std::nullopt;
        }
        if (out.f[u] != want) return u;
        return std::nullopt;
      };
      for (VertexId u : g.out(v)) {
        if (auto bad = relax(u, true)) {
          // Closed walk: root -> v, edge (v,u), then u -> root reversed.
          ConflictWitness wit;
          wit.walk = path_from_root(v);
          wit.walk.push_back({Edge{v, u}, true});
          auto back = path_from_root(u);
          std::reverse(back.begin(), back.end());
          for (auto& st : back) {
            st.forward = !st.forward;
            wit.walk.push_back(st);
          }
          for (const auto& st : wit.walk) {
            (st.forward ? wit.forward_count : wit.backward_count) += 1;
          }
          out.conflict = std::move(wit);
          out.labeled = false;
          return out;
        }
      }
      for (VertexId u : g.in(v)) {
        if (auto bad = relax(u, false)) {
          ConflictWitness wit;
          wit.walk = path_from_root(v);
          wit.walk.push_back({Edge{u, v}, false});
          auto back = path_from_root(u);
          std::reverse(back.begin(), back.end());
          for (auto& st : back) {
            st.forward = !st.forward;
            wit.walk.push_back(st);
          }
          for (const auto& st : wit.walk) {
            (st.forward ? wit.forward_count : wit.backward_count) += 1;
          }
          out.conflict = std::move(wit);
          out.labeled = false;
          return out;
        }
      }
    }
  }
  out.labeled = true;
  return out;
}

P0Report check_p0(const Window& rooted) {
  if (!rooted.root) throw Error("check_p0 requires a rooted window");
  const Digraph& g = rooted.graph;
  std::size_t n = g.vertex_count();
  P0Report rep;

  std::vector<std::int64_t> first(n, -1);
  std::vector<char> seen_state(n * (n + 1), 0);
  std::vector<std::pair<VertexId, std::int64_t>> frontier{{*rooted.root, -1}};
  seen_state[(std::size_t)*rooted.root * (n + 1)] = 1;
  first[*rooted.root] = 0;
  for (int s = 1; !frontier.empty(); ++s) {
    std::vector<std::pair<VertexId, std::int64_t>> next;
    std::set<VertexId> layer_verts;
    for (const auto& [v, prev] : frontier) {
      for (VertexId u : g.out(v)) {
        if ((std::int64_t)u == prev) continue;
        std::size_t sid = (std::size_t)u * (n + 1) + (std::size_t)(v + 1);
        if (seen_state[sid]) continue;
        seen_state[sid] = 1;
        next.push_back({u, (std::int64_t)v});
        layer_verts.insert(u);
      }
    }
    for (VertexId u : layer_verts) {
      if (first[u] < 0) {
        first[u] = s;
      } else if (first[u] != s && !rep.overlap) {
        rep.overlap = P0Report::LayerOverlap{u, (int)first[u], s};
      }
    }
    if (rep.overlap) break;
    frontier = std::move(next);
  }

  std::optional<std::size_t> m;
  for (VertexId v = 0; v < n; ++v) {
    if (!rooted.is_interior(v)) continue;
    std::size_t d = g.out(v).size();
    if (!m) {
      m = d;
    } else if (*m != d && !rep.valency_witness) {
      for (VertexId u = 0; u < v; ++u) {
        if (rooted.is_interior(u) && g.out(u).size() == *m) {
          rep.valency_witness = {u, v};
          break;
        }
      }
    }
  }
  rep.out_valency = m.value_or(0);
  rep.holds = !rep.overlap && !rep.valency_witness && rep.out_valency > 0;
  return rep;
}

P1Report check_p1(const Window& rooted, int depth, std::size_t budget) {
  if (!rooted.root) throw Error("check_p1 requires a rooted window");
  P1Report rep;
  rep.depth = depth;
  Window ref = descendant_window(rooted, *rooted.root, depth);

  auto level_colors = [](const Window& win) {
    std::vector<std::uint64_t> cols(win.vertex_count(), 1);
    for (VertexId v = 0; v < win.vertex_count(); ++v) {
      cols[v] = 0x9e3779b97f4a7c15ULL * (std::uint64_t)((*win.level)[v] + 2);
    }
    return cols;
  };

  for (VertexId u = 0; u < rooted.vertex_count(); ++u) {
    if (!rooted.is_interior(u)) continue;
    if (rep.tested.size() >= budget) {
      rep.verdict = P1Report::Verdict::Partial;
      return rep;
    }
    Window cone;
    try {
      cone = descendant_window(rooted, u, depth);
    } catch (const Error&) {
      continue;  // cone does not fit the window interior
    }
    if (!cone.level || !ref.level) continue;
    rep.tested.push_back(u);
    IsoConstraints cons;
    cons.pinned = {{*cone.root, *ref.root}};
    cons.colors1 = level_colors(cone);
    cons.colors2 = level_colors(ref);
    IsoResult iso =
        is_isomorphic(cone.graph, ref.graph, cons,
                      std::max(cone.vertex_count(), ref.vertex_count()));
    if (!iso.isomorphic()) {
      rep.verdict = P1Report::Verdict::Fails;
      rep.witness = u;
      return rep;
    }
  }
  return rep;
}

ConditionCReport condition_c(const Window& rooted, VertexId x, int depth) {
  ConditionCReport rep;
  rep.depth = depth;
  if (!rooted.graph.has_vertex(x)) throw Error("unknown vertex " + std::to_string(x));

  // Depth-d descendant ball of x, layers < depth required interior.
  std::set<VertexId> ball{x};
  std::vector<VertexId> frontier{x};
  for (int i = 0; i < depth; ++i) {
    for (VertexId v : frontier) {
      if (!rooted.is_interior(v)) {
        throw Error("window too small for depth " + std::to_string(depth) +
                    ": boundary vertex " + std::to_string(v) + " in layer " +
                    std::to_string(i));
      }
    }
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId u : rooted.graph.out(v)) {
        if (ball.insert(u).second) next.push_back(u);
      }
    }
    frontier = std::move(next);
  }

  std::vector<VertexId> first(rooted.graph.out(x).begin(),
                              rooted.graph.out(x).end());
  if (first.size() < 2) {
    rep.no_split_possible = true;
    return rep;
  }

  // Components of the ball minus x, in the underlying undirected graph.
  std::map<VertexId, std::int64_t> comp_of;
  std::int64_t comp_count = 0;
  for (VertexId s : ball) {
    if (s == x || comp_of.count(s)) continue;
    std::int64_t c = comp_count++;
    std::vector<VertexId> stack{s};
    comp_of[s] = c;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      auto visit = [&](VertexId u) {
        if (u != x && ball.count(u) && !comp_of.count(u)) {
          comp_of[u] = c;
          stack.push_back(u);
        }
      };
      for (VertexId u : rooted.graph.out(v)) visit(u);
      for (VertexId u : rooted.graph.in(v)) visit(u);
    }
  }
  std::set<std::int64_t> first_comps;
  for (VertexId v : first) first_comps.insert(comp_of[v]);
  if (first_comps.size() >= 2) {
    std::int64_t u_comp = *first_comps.begin();
    for (VertexId v : first) {
      (comp_of[v] == u_comp ? rep.part_u : rep.part_v).push_back(v);
    }
    rep.disjoint = true;
    return rep;
  }
  // All out-neighbours in one component: exhibit a common descendant for the
  // canonical split {first[0]} vs rest.
  auto desc_set = [&](VertexId v) {
    std::set<VertexId> acc;
    std::vector<VertexId> stack{v};
    acc.insert(v);
    while (!stack.empty()) {
      VertexId a = stack.back();
      stack.pop_back();
      for (VertexId b : rooted.graph.out(a)) {
        if (ball.count(b) && acc.insert(b).second) stack.push_back(b);
      }
    }
    return acc;
  };
  auto du = desc_set(first[0]);
  for (std::size_t i = 1; i < first.size(); ++i) {
    auto dv = desc_set(first[i]);
    std::vector<VertexId> inter;
    std::set_intersection(du.begin(), du.end(), dv.begin(), dv.end(),
                          std::back_inserter(inter));
    if (!inter.empty()) {
      rep.witness = ConditionCReport::MergeWitness{first[0], first[i], inter.front()};
      return rep;
    }
  }
  // Components merged only through longer undirected paths; search all
  // bipartitions when the first layer is small.
  if (first.size() <= 6) {
    std::size_t k = first.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << k); ++mask) {
      std::set<VertexId> du2, dv2;
      for (std::size_t i = 0; i < k; ++i) {
        auto d = desc_set(first[i]);
        if (mask & (std::size_t(1) << i)) {
          du2.insert(d.begin(), d.end());
        } else {
          dv2.insert(d.begin(), d.end());
        }
      }
      std::vector<VertexId> inter;
      std::set_intersection(du2.begin(), du2.end(), dv2.begin(), dv2.end(),
                            std::back_inserter(inter));
      if (inter.empty()) {
        for (std::size_t i = 0; i < k; ++i) {
          ((mask >> i) & 1 ? rep.part_u : rep.part_v).push_back(first[i]);
        }
        rep.disjoint = true;
        return rep;
      }
    }
  }
  return rep;
}

std::vector<std::vector<VertexId>> block_system(const Window& rooted) {
  if (!rooted.root) throw Error("block_system requires a rooted window");
  VertexId root = *rooted.root;
  auto comps = components_after_removal(rooted.graph, {root});
  std::vector<std::int64_t> comp_of(rooted.vertex_count(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (VertexId v : comps[c]) comp_of[v] = (std::int64_t)c;
  }
  std::map<std::int64_t, std::vector<VertexId>> groups;
  for (VertexId v : rooted.graph.out(root)) groups[comp_of[v]].push_back(v);
  std::vector<std::vector<VertexId>> blocks;
  for (auto& [c, vs] : groups) {
    std::sort(vs.begin(), vs.end());
    blocks.push_back(vs);
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return blocks;
}

namespace {

bool is_prime(int x) {
  if (x < 2) return false;
  for (int d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

}  // namespace

PqReport pq_consistency(const Window& rooted, int p, int q) {
  if (!is_prime(p) || !is_prime(q) || p > q) {
    throw Error("pq_consistency needs primes p <= q");
  }
  PqReport rep;
  LayerProfile prof = layer_profile(rooted);
  if (prof.out_valency != (std::size_t)p * (std::size_t)q) {
    throw Error("out-valency " + std::to_string(prof.out_valency) +
                " is not p*q = " + std::to_string(p * q));
  }
  if (prof.refutation) {
    rep.detail = "non-uniform in-valency in layer " +
                 std::to_string(prof.refutation->layer);
    return rep;
  }
  if (prof.p3 == P3Verdict::FailsAt) {
    rep.detail = "P3 fails";
    return rep;
  }
  if (prof.p3 == P3Verdict::Inconclusive) {
    rep.detail = "window too small for a P3 verdict";
    return rep;
  }
  if (!prof.stabilization_index) {
    rep.detail = "in-valency stabilization not witnessed";
    return rep;
  }
  int N = *prof.stabilization_index;
  if (N >= 2) {
    std::vector<VertexId> domain;
    for (VertexId v = 0; v < rooted.vertex_count(); ++v) {
      if (rooted.is_interior(v)) domain.push_back(v);
    }
    DeltaResult d = delta_partition(rooted, N - 1, domain);
    if (d.partition.classes.empty()) {
      rep.detail = "window too small to test the order-" + std::to_string(N - 1) +
                   " equal-descendant relation";
      return rep;
    }
    if (!d.partition.trivial()) {
      rep.detail = "delta_{N-1} non-trivial";
      return rep;
    }
  }
  rep.measured_tree = true;
  for (std::size_t r : prof.in_valencies) rep.measured_tree &= (r == 1);

  if (p == q) {
    rep.verdict = rep.measured_tree ? PqReport::Verdict::Consistent
                                    : PqReport::Verdict::Inconsistent;
    rep.detail = rep.measured_tree ? "p = q: tree, as predicted"
                                   : "p = q but the window is not a tree";
    return rep;
  }
  if (rep.measured_tree) {
    rep.verdict = PqReport::Verdict::Consistent;
    rep.detail = "p < q: tree branch";
    return rep;
  }
  auto blocks = block_system(rooted);
  if (blocks.size() != (std::size_t)p) {
    rep.verdict = PqReport::Verdict::Inconsistent;
    rep.detail = "expected " + std::to_string(p) + " first-layer blocks, found " +
                 std::to_string(blocks.size());
    return rep;
  }
  for (const auto& b : blocks) {
    if (b.size() != (std::size_t)q) {
      rep.verdict = PqReport::Verdict::Inconsistent;
      rep.detail = "expected blocks of size " + std::to_string(q);
      return rep;
    }
  }
  for (int i = 1; i <= prof.depth; ++i) {
    std::size_t want = i <= N - 1 ? 1 : (std::size_t)p;
    if (prof.in_valencies[(std::size_t)i - 1] != want) {
      rep.verdict = PqReport::Verdict::Inconsistent;
      rep.detail = "in-valency pattern mismatch at layer " + std::to_string(i);
      return rep;
    }
  }
  rep.verdict = PqReport::Verdict::Consistent;
  rep.detail = "p < q non-tree branch";
  return rep;
}

}  // namespace digwin
