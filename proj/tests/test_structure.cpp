#include <doctest.h>

#include <set>

#include "digwin/descent.hpp"
#include "digwin/error.hpp"
#include "digwin/generators.hpp"
#include "digwin/reachability.hpp"
#include "digwin/relations.hpp"
#include "digwin/structure.hpp"
#include "digwin/symmetry.hpp"
#include "oracles.hpp"

using namespace digwin;

TEST_SUITE_BEGIN("structure");

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

}  // namespace

TEST_CASE("level labelling of labelled windows reproduces the levels") {
  auto w = make_dmm_window(2, 3, 3);
  auto z = z_labeling(w);
  REQUIRE(z.labeled);
  CHECK(z.component_count == 1);
  REQUIRE(w.level.has_value());
  for (VertexId v = 0; v < w.vertex_count(); ++v) CHECK(z.f[v] == (*w.level)[v]);
}

TEST_CASE("a single edge labels 0 and 1") {
  Window w = oracles::as_window(2, {{0, 1}});
  auto z = z_labeling(w);
  REQUIRE(z.labeled);
  CHECK(z.f[0] == 0);
  CHECK(z.f[1] == 1);
}

TEST_CASE("conflicting paths produce a verified unbalanced closed walk") {
  // a=0 -> b=1, a -> c=2, c -> d=3, d -> b: two a-to-b paths of lengths 1, 3.
  Window w = oracles::as_window(4, {{0, 1}, {0, 2}, {2, 3}, {3, 1}});
  auto z = z_labeling(w);
  REQUIRE_FALSE(z.labeled);
  REQUIRE(z.conflict.has_value());
  const auto& c = *z.conflict;
  CHECK(c.forward_count != c.backward_count);
  // The steps really form a closed walk in the underlying graph.
  REQUIRE_FALSE(c.walk.empty());
  VertexId at = c.walk.front().forward ? c.walk.front().edge.first
                                       : c.walk.front().edge.second;
  VertexId start = at;
  for (const auto& st : c.walk) {
    CHECK(w.graph.has_edge(st.edge.first, st.edge.second));
    CHECK(at == (st.forward ? st.edge.first : st.edge.second));
    at = st.forward ? st.edge.second : st.edge.first;
  }
  CHECK(at == start);
}

TEST_CASE("disconnected input labels per component with a note") {
  Window w = oracles::as_window(4, {{0, 1}, {2, 3}});
  auto z = z_labeling(w);
  CHECK(z.labeled);
  CHECK(z.component_count == 2);
}

TEST_CASE("a labelled window with a two-arc-in-class is impossible") {
  // The universality witness digraph is exactly a label conflict.
  Window w = oracles::as_window(4, {{0, 1}, {0, 2}, {2, 1}, {1, 3}});
  CHECK(universality_signal(w).two_arc.has_value());
  CHECK_FALSE(z_labeling(w).labeled);
}

TEST_CASE("gradedness holds on trees and fibre descents") {
  auto tree = make_out_tree_window(2, 3);
  auto p0 = check_p0(tree);
  CHECK(p0.holds);
  CHECK(p0.out_valency == 2);

  auto w = make_dmm_window(2, 3, 4);
  auto gamma = descendant_window(w, deepest_interior(w), 3);
  auto g0 = check_p0(gamma);
  CHECK(g0.holds);
  CHECK(g0.out_valency == 2);
}

TEST_CASE("a reachable directed cycle breaks gradedness with a witness") {
  // Root 0 -> 1 -> 2 -> 3 -> 1: vertex 1 appears in layers 1 and 4.
  Window w = oracles::as_window(4, {{0, 1}, {1, 2}, {2, 3}, {3, 1}});
  w.root = 0;
  auto p0 = check_p0(w);
  CHECK_FALSE(p0.holds);
  REQUIRE(p0.overlap.has_value());
  CHECK(p0.overlap->v == 1);
  CHECK(p0.overlap->first_layer == 1);
  CHECK(p0.overlap->second_layer == 4);
}

TEST_CASE("self-similarity holds on regular trees and the m = M window") {
  auto tree = make_out_tree_window(2, 4);
  auto p1 = check_p1(tree, 2);
  CHECK(p1.verdict == P1Report::Verdict::Holds);
  CHECK_FALSE(p1.tested.empty());

  auto w = make_dmm_window(2, 2, 5);
  auto gamma = descendant_window(w, deepest_interior(w), 4);
  auto g1 = check_p1(gamma, 2);
  CHECK(g1.verdict == P1Report::Verdict::Holds);
}

TEST_CASE("self-similarity fails with a witness on a lopsided tree") {
  // Binary tree with an extra third child under vertex 1.
  auto tree = make_out_tree_window(2, 3);
  std::vector<Edge> edges = tree.graph.edges();
  auto extra = (VertexId)tree.vertex_count();
  edges.push_back({1, extra});
  Window w;
  w.graph = Digraph::from_edges(tree.vertex_count() + 1, edges);
  w.interior = tree.interior;
  w.interior.push_back(0);
  w.root = 0;
  auto p1 = check_p1(w, 1);
  CHECK(p1.verdict == P1Report::Verdict::Fails);
  REQUIRE(p1.witness.has_value());
  CHECK(*p1.witness == 1);
}

TEST_CASE("self-similarity respects the sampling budget") {
  auto tree = make_out_tree_window(2, 4);
  auto p1 = check_p1(tree, 2, 3);
  CHECK(p1.verdict == P1Report::Verdict::Partial);
  CHECK(p1.tested.size() == 3);
}

TEST_CASE("first-layer splits: trees split, fibre descents do not") {
  auto tree = make_out_tree_window(2, 3);
  auto cc = condition_c(tree, 0, 2);
  CHECK(cc.disjoint);
  CHECK(cc.part_u.size() + cc.part_v.size() == 2);

  auto w = make_dmm_window(2, 3, 4);
  auto gamma = descendant_window(w, deepest_interior(w), 3);
  auto gc = condition_c(gamma, *gamma.root, 3);
  CHECK_FALSE(gc.disjoint);
  CHECK_FALSE(gc.no_split_possible);
  REQUIRE(gc.witness.has_value());
  // The witness is a common descendant of both out-neighbours.
  auto reaches = [&](VertexId from, VertexId target) {
    std::set<VertexId> seen{from};
    std::vector<VertexId> stack{from};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      if (v == target) return true;
      for (VertexId u : gamma.graph.out(v)) {
        if (seen.insert(u).second) stack.push_back(u);
      }
    }
    return false;
  };
  CHECK(reaches(gc.witness->a, gc.witness->common_descendant));
  CHECK(reaches(gc.witness->b, gc.witness->common_descendant));

  auto path = make_out_tree_window(1, 4);
  auto pc = condition_c(path, 0, 3);
  CHECK_FALSE(pc.disjoint);
  CHECK(pc.no_split_possible);
}

TEST_CASE("block systems in the first layer") {
  auto b3 = make_out_tree_window(3, 2);
  auto blocks = block_system(b3);
  CHECK(blocks.size() == 3);
  for (const auto& b : blocks) CHECK(b.size() == 1);

  auto w = make_dmm_window(2, 3, 4);
  auto gamma = descendant_window(w, deepest_interior(w), 3);
  auto gb = block_system(gamma);
  REQUIRE(gb.size() == 1);
  CHECK(gb[0].size() == 2);
}

TEST_CASE("blocks are preserved by window automorphisms") {
  auto check_blocks = [](const Window& gamma) {
    auto blocks = block_system(gamma);
    auto orbits = automorphism_orbits(gamma.graph, {}, gamma.vertex_count());
    for (const auto& p : orbits.generators) {
      if (p[*gamma.root] != *gamma.root) continue;  // only root-fixing maps
      for (const auto& b : blocks) {
        std::set<VertexId> image;
        for (VertexId v : b) image.insert(p[v]);
        bool any_match = false;
        for (const auto& b2 : blocks) {
          if (std::set<VertexId>(b2.begin(), b2.end()) == image) any_match = true;
        }
        CHECK(any_match);
      }
    }
  };
  check_blocks(make_out_tree_window(2, 3));
  auto w = make_dmm_window(2, 2, 4);
  check_blocks(descendant_window(w, deepest_interior(w), 3));
}

TEST_CASE("prime-product check: square trees and mixed trees are consistent") {
  auto quad = make_out_tree_window(4, 3);
  auto rep4 = pq_consistency(quad, 2, 2);
  CHECK(rep4.verdict == PqReport::Verdict::Consistent);
  CHECK(rep4.measured_tree);

  auto six = make_out_tree_window(6, 3);
  auto rep6 = pq_consistency(six, 2, 3);
  CHECK(rep6.verdict == PqReport::Verdict::Consistent);
  CHECK(rep6.measured_tree);
}

TEST_CASE("prime-product check: constant-layer windows are inapplicable") {
  auto w = make_dmm_window(6, 6, 3);
  auto gamma = descendant_window(w, deepest_interior(w), 2);
  auto rep = pq_consistency(gamma, 2, 3);
  CHECK(rep.verdict == PqReport::Verdict::Inapplicable);
  CHECK(rep.detail == "P3 fails");
}

TEST_CASE("prime-product check validates its inputs") {
  auto quad = make_out_tree_window(4, 2);
  CHECK_THROWS_AS(pq_consistency(quad, 2, 3), Error);  // m != p q
  CHECK_THROWS_AS(pq_consistency(quad, 4, 1), Error);  // not primes
}

TEST_CASE("case-one bundle on the fibre windows") {
  // Non-degenerate fibre windows: non-trivial order-1 classes, stalled layer
  // growth, a level labelling, and no two-arc inside a class.
  for (auto [m, M] : {std::pair<int, int>{1, 2}, {2, 2}, {2, 3}, {3, 4}}) {
    auto w = make_dmm_window(m, M, 3);
    CHECK(z_labeling(w).labeled);
    CHECK_FALSE(universality_signal(w).two_arc.has_value());
    std::vector<VertexId> interior;
    for (VertexId v = 0; v < w.vertex_count(); ++v) {
      if (w.is_interior(v)) interior.push_back(v);
    }
    auto d = delta_partition(w, 1, interior);
    CHECK_FALSE(d.partition.trivial());
    auto gamma = descendant_window(w, deepest_interior(w), 2);
    auto prof = layer_profile(gamma);
    CHECK(prof.p3 == P3Verdict::FailsAt);
    CHECK(prof.p3_fails_at == (m == 1 ? 1 : 2));
  }
}

TEST_SUITE_END();
