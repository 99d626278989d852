#include <doctest.h>

#include <set>

#include "digwin/descent.hpp"
#include "digwin/error.hpp"
#include "digwin/generators.hpp"
#include "digwin/relations.hpp"
#include "oracles.hpp"

using namespace digwin;

TEST_SUITE_BEGIN("relations");

namespace {

VertexId deepest_interior(const Window& w) {
  REQUIRE(w.level.has_value());
  VertexId best = 0;
  bool found = false;
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (!w.is_interior(v)) continue;
    if (!found || (*w.level)[v] < (*w.level)[best]) {
      best = v;
      found = true;
    }
  }
  REQUIRE(found);
  return best;
}

std::vector<VertexId> interior_of(const Window& w) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (w.is_interior(v)) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("a single vertex forms one singleton class") {
  auto w = make_out_tree_window(2, 3);
  auto d = delta_partition(w, 1, {0});
  CHECK(d.partition.classes == std::vector<std::vector<VertexId>>{{0}});
  CHECK(d.excluded.empty());
}

TEST_CASE("two sibling fibres of the (2,3) window form two classes of three") {
  auto w = make_dmm_window(2, 3, 3);
  // Two distinct interior fibres: group interior vertices by equal
  // out-neighbourhoods using labels is cheating; instead take the first six
  // interior vertices at the deepest interior level, which make up two
  // whole fibres under the deterministic layout.
  auto interior = interior_of(w);
  REQUIRE(w.level.has_value());
  int lvl = (*w.level)[deepest_interior(w)];
  std::vector<VertexId> domain;
  for (VertexId v : interior) {
    if ((*w.level)[v] == lvl && domain.size() < 6) domain.push_back(v);
  }
  REQUIRE(domain.size() == 6);
  auto d = delta_partition(w, 1, domain);
  REQUIRE(d.partition.size() == 2);
  CHECK(d.partition.classes[0].size() == 3);
  CHECK(d.partition.classes[1].size() == 3);
}

TEST_CASE("tree vertices have pairwise distinct child sets") {
  auto w = make_out_tree_window(2, 3);
  auto d = delta_partition(w, 1, interior_of(w));
  CHECK(d.partition.trivial());
}

TEST_CASE("vertices whose cone leaves the window are excluded and reported") {
  auto w = make_dmm_window(2, 3, 3);
  auto interior = interior_of(w);
  auto d2 = delta_partition(w, 2, interior);
  // Depth-2 cones only fit below the deepest interior level.
  CHECK_FALSE(d2.excluded.empty());
  for (VertexId v : d2.excluded) CHECK(w.is_interior(v));
}

TEST_CASE("classes match pairwise definitional comparison on a seeded corpus") {
  int tested = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto w = make_random_layered_dag(3 + (int)(seed % 2), 2 + (int)(seed % 3),
                                     0.6, seed);
    if (w.vertex_count() > 12) continue;
    ++tested;
    std::vector<VertexId> all(w.vertex_count());
    for (VertexId v = 0; v < w.vertex_count(); ++v) all[v] = v;
    for (int n : {1, 2}) {
      auto mine = delta_partition(w, n, all);
      CHECK(mine.excluded.empty());
      CHECK(mine.partition.classes ==
            oracles::naive_delta_classes(w.graph, n, all));
    }
  }
  CHECK(tested >= 20);
}

TEST_CASE("equal n-step sets imply equal (n+1)-step sets") {
  auto w23 = make_dmm_window(2, 3, 3);
  auto rep = delta_monotonicity_check(w23, 1, interior_of(w23));
  CHECK(rep.ok);

  // Hand-built digraph with a genuine order-1 class: 0 and 1 share {2,3}.
  Window h = oracles::as_window(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {3, 5}});
  auto hrep = delta_monotonicity_check(h, 1, {0, 1, 2, 3});
  CHECK(hrep.ok);

  // Trivial domain passes vacuously.
  auto t = make_out_tree_window(2, 3);
  CHECK(delta_monotonicity_check(t, 1, {0}).ok);
}

TEST_CASE("common-ancestry constant of trees and fibre descents") {
  auto tree = make_out_tree_window(2, 4);
  auto g3t = find_g3_k(tree);
  REQUIRE(g3t.k.has_value());
  CHECK(*g3t.k == 1);

  auto w = make_dmm_window(2, 3, 6);
  auto gamma = descendant_window(w, deepest_interior(w), 4);
  auto g3 = find_g3_k(gamma);
  REQUIRE(g3.k.has_value());
  CHECK(*g3.k == 2);
  // Layer-1 ancestor sets: both layer-1 vertices reach everything deeper.
  REQUIRE(gamma.level.has_value());
  for (VertexId v = 0; v < gamma.vertex_count(); ++v) {
    if ((*gamma.level)[v] >= 2) CHECK(g3.first_layer_ancestors[v].size() == 2);
  }

  auto path = make_dmm_window(1, 1, 4);
  for (VertexId v = 0; v < path.vertex_count(); ++v) {
    if (path.graph.in(v).empty()) path.root = v;
  }
  auto g3p = find_g3_k(path);
  REQUIRE(g3p.k.has_value());
  CHECK(*g3p.k == 1);
}

TEST_CASE("shared-ancestor classes per layer") {
  auto tree = make_out_tree_window(2, 4);
  auto p = rho_partition(tree, {1, 2});
  CHECK(p.trivial());  // distinct parents all the way up

  auto w = make_dmm_window(2, 3, 6);
  auto gamma = descendant_window(w, deepest_interior(w), 4);
  auto p3 = rho_partition(gamma, {2, 3});
  REQUIRE(p3.size() == 1);
  CHECK(p3.classes[0].size() == 2);

  CHECK_THROWS_AS(rho_partition(gamma, {2, 1}), Error);   // layer < k
  CHECK_THROWS_AS(rho_partition(gamma, {2, 99}), Error);  // out of range
}

TEST_CASE("no shared-ancestor class spans two layers") {
  auto w = make_dmm_window(2, 3, 6);
  auto gamma = descendant_window(w, deepest_interior(w), 4);
  REQUIRE(gamma.level.has_value());
  for (int l = 2; l <= 4; ++l) {
    auto p = rho_partition(gamma, {2, l});
    for (const auto& cls : p.classes) {
      for (VertexId v : cls) CHECK((*gamma.level)[v] == l);
    }
  }
}

TEST_CASE("descendants of a class are unions of classes") {
  auto w = make_dmm_window(2, 3, 6);
  auto gamma = descendant_window(w, deepest_interior(w), 4);
  auto p = rho_partition(gamma, {2, 3});
  const auto& cls = p.classes.front();
  std::set<VertexId> desc(cls.begin(), cls.end());
  std::vector<VertexId> frontier(cls.begin(), cls.end());
  while (!frontier.empty()) {
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId u : gamma.graph.out(v)) {
        if (desc.insert(u).second) next.push_back(u);
      }
    }
    frontier = std::move(next);
  }
  auto p4 = rho_partition(gamma, {2, 4});
  for (const auto& c4 : p4.classes) {
    bool any = false, all = true;
    for (VertexId v : c4) {
      any = any || desc.count(v);
      all = all && desc.count(v);
    }
    CHECK(any == all);  // each deeper class is inside or outside, never split
  }
}

TEST_CASE("quotient by shared ancestors: trees stay trees, fibres become lines") {
  auto tree = make_out_tree_window(2, 4);
  auto rt = rho_quotient_tree_check(tree, 1);
  CHECK(rt.is_tree_to_window);
  REQUIRE(rt.constant_out_valency.has_value());
  CHECK(*rt.constant_out_valency == 2);

  auto w = make_dmm_window(2, 3, 7);
  auto gamma = descendant_window(w, deepest_interior(w), 5);
  auto rq = rho_quotient_tree_check(gamma, 2);
  CHECK(rq.is_tree_to_window);
  REQUIRE(rq.constant_out_valency.has_value());
  CHECK(*rq.constant_out_valency == 1);  // a directed line in the quotient

  auto path = make_dmm_window(1, 1, 4);
  for (VertexId v = 0; v < path.vertex_count(); ++v) {
    if (path.graph.in(v).empty()) path.root = v;
  }
  auto rp = rho_quotient_tree_check(path, 1);
  CHECK(rp.is_tree_to_window);
  CHECK(*rp.constant_out_valency == 1);
}

TEST_CASE("sink-and-source classes of the fibre windows are whole fibres") {
  auto w = make_dmm_window(2, 3, 4);
  auto r = r_partition(w);
  REQUIRE(r.partition.size() == 9);  // depth-2 fibres
  for (const auto& cls : r.partition.classes) CHECK(cls.size() == 3);

  auto w22 = make_dmm_window(2, 2, 4);
  auto r22 = r_partition(w22);
  REQUIRE(r22.partition.size() == 1);
  CHECK(r22.partition.classes[0].size() == 2);

  // A single alternet has no alternet pair, so no classes at all.
  auto s = make_sigma(2, 3);
  auto rs = r_partition(s.window);
  CHECK(rs.partition.size() == 0);
  CHECK_FALSE(rs.excluded.empty());
}

TEST_CASE("every sink-and-source class is a union of equal-out-neighbour classes") {
  auto w = make_dmm_window(2, 3, 4);
  auto r = r_partition(w);
  auto d = delta_partition(w, 1, interior_of(w));
  auto didx = d.partition.class_of(w.vertex_count());
  for (const auto& cls : r.partition.classes) {
    // Collect the order-1 classes met by this class; each must lie inside.
    std::set<std::int64_t> met;
    for (VertexId v : cls) {
      if (didx[v] >= 0) met.insert(didx[v]);
    }
    std::set<VertexId> members(cls.begin(), cls.end());
    for (std::int64_t ci : met) {
      for (VertexId v : d.partition.classes[(std::size_t)ci]) {
        CHECK(members.count(v));
      }
    }
  }
}

TEST_SUITE_END();
