#include <doctest.h>

#include <map>
#include <set>

#include "digwin/error.hpp"
#include "digwin/generators.hpp"
#include "digwin/json_io.hpp"

using namespace digwin;

TEST_SUITE_BEGIN("generators");

namespace {

std::map<int, std::vector<VertexId>> by_level(const Window& w) {
  std::map<int, std::vector<VertexId>> out;
  REQUIRE(w.level.has_value());
  for (VertexId v = 0; v < w.vertex_count(); ++v) out[(*w.level)[v]].push_back(v);
  return out;
}

}  // namespace

TEST_CASE("binomial and subset enumeration") {
  CHECK(binomial(3, 2) == 3);
  CHECK(binomial(4, 3) == 4);
  CHECK(binomial(2, 2) == 1);
  CHECK(binomial(60, 30) > 0);
  CHECK_THROWS_AS(binomial(200, 100), Error);
  auto subs = subsets_lex(3, 2);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0] == std::vector<int>{0, 1});
  CHECK(subs[1] == std::vector<int>{0, 2});
  CHECK(subs[2] == std::vector<int>{1, 2});
}

TEST_CASE("fibre window with m = M = 2 is a complete bipartite chain") {
  auto w = make_dmm_window(2, 2, 2);
  CHECK(w.vertex_count() == 6);  // 3 fibre levels of 2
  CHECK(w.graph.edge_count() == 8);
  auto levels = by_level(w);
  CHECK(levels.size() == 3);
  for (auto& [lvl, vs] : levels) CHECK(vs.size() == 2);
  // All 4 edges between consecutive levels.
  for (int lvl = 0; lvl < 2; ++lvl) {
    for (VertexId u : levels[lvl]) {
      for (VertexId v : levels[lvl + 1]) CHECK(w.graph.has_edge(u, v));
    }
  }
}

TEST_CASE("fibre window with m = M = 1 is a directed path") {
  auto w = make_dmm_window(1, 1, 3);
  CHECK(w.vertex_count() == 4);
  CHECK(w.graph.edge_count() == 3);
  for (VertexId v = 0; v + 1 < 4; ++v) CHECK(w.graph.out(v).size() <= 1);
}

TEST_CASE("fibre window (2,3,2): counts and interior valencies") {
  auto w = make_dmm_window(2, 3, 2);
  // Base-tree layer sizes 1, 3, 9 ; fibres of size 3.
  CHECK(w.vertex_count() == 39);
  std::size_t interior = 0;
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (!w.is_interior(v)) continue;
    ++interior;
    CHECK(w.graph.out(v).size() == 2);
  }
  CHECK(interior == 9);  // the depth-1 fibres: 3 base vertices x 3
}

TEST_CASE("fibre window (2,3,3): interior in-valency and level contract") {
  auto w = make_dmm_window(2, 3, 3);
  CHECK(w.vertex_count() == 120);  // (1+3+9+27) x 3
  w.validate();                    // level contract
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (!w.is_interior(v)) continue;
    CHECK(w.graph.out(v).size() == 2);
    // Each element lies in C(M-1,m-1)=2 subsets; each of those in-fibres
    // contributes M=3 in-edges.
    CHECK(w.graph.in(v).size() == 6);
  }
}

TEST_CASE("edge counting identity per interior level pair") {
  for (auto [m, M] : {std::pair<int, int>{2, 2}, {2, 3}, {3, 4}}) {
    auto w = make_dmm_window(m, M, 3);
    auto levels = by_level(w);
    for (auto& [lvl, sources] : levels) {
      if (!levels.count(lvl + 1)) continue;
      bool all_interior = true;
      for (VertexId v : sources) all_interior &= w.is_interior(v);
      for (VertexId v : levels[lvl + 1]) all_interior &= w.is_interior(v);
      if (!all_interior) continue;
      std::size_t edge_total = 0;
      for (VertexId v : sources) edge_total += w.graph.out(v).size();
      std::size_t sink_in = w.graph.in(levels[lvl + 1].front()).size();
      for (VertexId v : levels[lvl + 1]) CHECK(w.graph.in(v).size() == sink_in);
      CHECK(edge_total == sources.size() * (std::size_t)m);
      CHECK(edge_total == levels[lvl + 1].size() * sink_in);
    }
  }
}

TEST_CASE("bad fibre parameters are rejected") {
  CHECK_THROWS_AS(make_dmm_window(3, 2, 2), Error);
  CHECK_THROWS_AS(make_dmm_window(2, 3, 12), Error);  // cap
}

TEST_CASE("sigma(2,2) is the complete bipartite digraph on 2+2") {
  auto s = make_sigma(2, 2);
  CHECK(s.sources.size() == 2);
  CHECK(s.sinks.size() == 2);
  CHECK(s.window.graph.edge_count() == 4);
  for (VertexId x : s.sources) {
    for (VertexId y : s.sinks) CHECK(s.window.graph.has_edge(x, y));
  }
}

TEST_CASE("sigma(2,3): sizes, in-valency, and block structure") {
  auto s = make_sigma(2, 3);
  CHECK(s.sources.size() == 9);
  CHECK(s.sinks.size() == 3);
  CHECK(s.window.graph.edge_count() == 18);
  for (VertexId y : s.sinks) CHECK(s.window.graph.in(y).size() == 6);
  // |X| * m = |Y| * r
  CHECK(9 * 2 == 3 * 6);
  // Blocks are exactly the equal-out-neighbourhood classes, each of size M.
  CHECK(s.source_blocks.size() == 3);
  std::map<std::vector<VertexId>, std::set<VertexId>> by_outs;
  for (VertexId x : s.sources) {
    std::vector<VertexId> outs(s.window.graph.out(x).begin(),
                               s.window.graph.out(x).end());
    by_outs[outs].insert(x);
  }
  CHECK(by_outs.size() == 3);
  for (auto& [outs, xs] : by_outs) CHECK(xs.size() == 3);
}

TEST_CASE("sigma(1,2): two blocks of two sources with one out-edge each") {
  auto s = make_sigma(1, 2);
  CHECK(s.sources.size() == 4);
  CHECK(s.sinks.size() == 2);
  for (VertexId x : s.sources) CHECK(s.window.graph.out(x).size() == 1);
}

TEST_CASE("rooted out-trees") {
  auto path = make_out_tree_window(1, 5);
  CHECK(path.vertex_count() == 6);
  auto b2 = make_out_tree_window(2, 3);
  CHECK(b2.vertex_count() == 15);
  auto levels = by_level(b2);
  CHECK(levels[0].size() == 1);
  CHECK(levels[1].size() == 2);
  CHECK(levels[2].size() == 4);
  CHECK(levels[3].size() == 8);
  auto b3 = make_out_tree_window(3, 2);
  CHECK(b3.vertex_count() == 13);
}

TEST_CASE("regular tree ball has the advertised valencies inside") {
  auto w = make_regular_tree_window(2, 3, 3);
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (!w.is_interior(v)) continue;
    CHECK(w.graph.out(v).size() == 2);
    CHECK(w.graph.in(v).size() == 3);
  }
  w.validate();
  auto line = make_regular_tree_window(1, 1, 3);
  CHECK(line.vertex_count() == 7);  // a path through the centre
}

TEST_CASE("descendants of a line: m = M gives back the whole window") {
  auto f = make_desc_of_line_window(2, 2, 3);
  auto w = make_dmm_window(2, 2, 3);
  CHECK(f.graph == w.graph);
  CHECK(f.interior == w.interior);
  CHECK(*f.level == *w.level);
}

TEST_CASE("descendants of a line: m < M gives a strict sub-window of in-valency m") {
  auto f = make_desc_of_line_window(2, 3, 3);
  CHECK(f.vertex_count() == 8);  // 2 per level, 4 levels
  std::size_t interior = 0;
  for (VertexId v = 0; v < f.vertex_count(); ++v) {
    if (!f.is_interior(v)) continue;
    ++interior;
    CHECK(f.graph.in(v).size() == 2);
    CHECK(f.graph.out(v).size() == 2);
  }
  CHECK(interior == 4);
  f.validate();
}

TEST_CASE("descendants of a line in a tree of out-valency 1 is a path") {
  auto f = make_desc_of_line_window(1, 2, 3);
  CHECK(f.vertex_count() == 4);
  CHECK(f.graph.edge_count() == 3);
}

TEST_CASE("random layered DAG: degenerate and complete cases") {
  auto single = make_random_layered_dag(2, 1, 1.0, 7);
  CHECK(single.vertex_count() == 2);
  CHECK(single.graph.edge_count() == 1);
  auto complete = make_random_layered_dag(3, 4, 1.0, 99);
  CHECK(complete.graph.edge_count() == 32);
  CHECK_THROWS_AS(make_random_layered_dag(1, 3, 0.5, 1), Error);
  CHECK_THROWS_AS(make_random_layered_dag(3, 3, 0.0, 1), Error);
}

TEST_CASE("random layered DAG is seed-deterministic, byte for byte") {
  auto a = make_random_layered_dag(4, 3, 0.5, 12345);
  auto b = make_random_layered_dag(4, 3, 0.5, 12345);
  CHECK(write_window_json(a) == write_window_json(b));
  auto c = make_random_layered_dag(4, 3, 0.5, 12346);
  CHECK(write_window_json(a) != write_window_json(c));
}

TEST_CASE("all deterministic generators serialize identically across calls") {
  CHECK(write_window_json(make_dmm_window(2, 3, 2)) ==
        write_window_json(make_dmm_window(2, 3, 2)));
  CHECK(write_window_json(make_sigma(2, 3).window) ==
        write_window_json(make_sigma(2, 3).window));
  CHECK(write_window_json(make_out_tree_window(3, 3)) ==
        write_window_json(make_out_tree_window(3, 3)));
  CHECK(write_window_json(make_desc_of_line_window(2, 3, 3)) ==
        write_window_json(make_desc_of_line_window(2, 3, 3)));
}

TEST_SUITE_END();
