#include "digwin/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "digwin/error.hpp"

namespace digwin {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::uint64_t num = n - k + i;
    // r * num / i, watching for overflow before the division rebalances.
    if (r > UINT64_MAX / num) throw Error("binomial: 64-bit overflow");
    r = r * num / i;
  }
  return r;
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace {

void check_dmm_params(int m, int M, int levels) {
  if (m < 1) throw Error("m must be >= 1");
  if (M < m) throw Error("M < m");
  if (levels < 1) throw Error("levels must be >= 1");
}

struct BaseTree {
  // In-tree above a sink: vertex 0 is the sink; every vertex of depth < levels
  // has C(M,m) in-neighbours (children), one per m-subset in lex order.
  std::vector<int> depth;
  std::vector<int> subset_index;            // which m-subset this vertex carries
  std::vector<std::int64_t> parent;         // out-neighbour; -1 for the sink
  std::vector<std::vector<VertexId>> children;  // in-neighbours, subset order
};

BaseTree build_base_tree(std::uint64_t fanout, int levels, std::uint64_t max_m,
                         std::size_t cap) {
  BaseTree t;
  t.depth.push_back(0);
  t.subset_index.push_back(-1);
  t.parent.push_back(-1);
  t.children.emplace_back();
  std::size_t head = 0;
  while (head < t.depth.size()) {
    std::size_t v = head++;
    if (t.depth[v] >= levels) continue;
    for (std::uint64_t s = 0; s < fanout; ++s) {
      if ((t.depth.size() + 1) * max_m > cap) {
        throw Error("vertex cap exceeded: base tree needs more than " +
                    std::to_string(cap) + " carried vertices");
      }
      auto child = (VertexId)t.depth.size();
      t.depth.push_back(t.depth[v] + 1);
      t.subset_index.push_back((int)s);
      t.parent.push_back((std::int64_t)v);
      t.children.emplace_back();
      t.children[v].push_back(child);
    }
  }
  return t;
}

}  // namespace

Window make_dmm_window(int m, int M, int levels, std::size_t cap) {
  check_dmm_params(m, M, levels);
  std::uint64_t k = binomial((std::uint64_t)M, (std::uint64_t)m);
  // Fibre count grows as k^levels; bail out before materialising.
  long double projected = 1.0L;
  for (int i = 1; i <= levels; ++i) projected = projected * (long double)k + 1.0L;
  if (projected * M > (long double)cap) {
    throw Error("vertex cap exceeded: C(" + std::to_string(M) + "," +
                std::to_string(m) + ")=" + std::to_string(k) + " with " +
                std::to_string(levels) + " levels needs > " +
                std::to_string(cap) + " vertices");
  }
  BaseTree t = build_base_tree(k, levels, (std::uint64_t)M, cap);
  auto subsets = subsets_lex(M, m);

  std::size_t n = t.depth.size() * (std::size_t)M;
  auto vid = [&](std::size_t base_vertex, int w) {
    return (VertexId)(base_vertex * M + (std::size_t)w);
  };
  std::vector<Edge> edges;
  for (std::size_t b = 1; b < t.depth.size(); ++b) {
    const auto& sub = subsets[(std::size_t)t.subset_index[b]];
    auto parent = (std::size_t)t.parent[b];
    for (int c = 0; c < M; ++c) {
      for (int a : sub) edges.push_back({vid(b, c), vid(parent, a)});
    }
  }

  Window w;
  w.graph = Digraph::from_edges(n, edges);
  w.interior.assign(n, 0);
  w.level.emplace(n);
  w.labels.resize(n);
  for (std::size_t b = 0; b < t.depth.size(); ++b) {
    int d = t.depth[b];
    for (int c = 0; c < M; ++c) {
      VertexId v = vid(b, c);
      w.interior[v] = (d >= 1 && d <= levels - 1) ? 1 : 0;
      (*w.level)[v] = levels - d;
      w.labels[v] = "(" + std::to_string(b) + "," + std::to_string(c) + ")";
    }
  }
  w.meta = {{"family", "dmm"},
            {"m", std::to_string(m)},
            {"M", std::to_string(M)},
            {"levels", std::to_string(levels)}};
  w.validate();
  return w;
}

SigmaBipartite make_sigma(int m, int M) {
  check_dmm_params(m, M, 1);
  std::uint64_t k = binomial((std::uint64_t)M, (std::uint64_t)m);
  if ((k + 1) * (std::uint64_t)M > kDefaultVertexCap) {
    throw Error("vertex cap exceeded for sigma(" + std::to_string(m) + "," +
                std::to_string(M) + ")");
  }
  auto subsets = subsets_lex(M, m);

  SigmaBipartite s;
  std::size_t n = ((std::size_t)k + 1) * (std::size_t)M;
  std::vector<Edge> edges;
  // Sources first: block i occupies ids [i*M, (i+1)*M); sinks at the end.
  auto sink_id = [&](int a) { return (VertexId)(k * M + (std::uint64_t)a); };
  for (std::uint64_t i = 0; i < k; ++i) {
    std::vector<VertexId> block;
    for (int c = 0; c < M; ++c) {
      auto x = (VertexId)(i * M + (std::uint64_t)c);
      block.push_back(x);
      s.sources.push_back(x);
      for (int a : subsets[i]) edges.push_back({x, sink_id(a)});
    }
    s.source_blocks.push_back(std::move(block));
  }
  for (int a = 0; a < M; ++a) s.sinks.push_back(sink_id(a));

  Window w;
  w.graph = Digraph::from_edges(n, edges);
  w.interior.assign(n, 1);
  w.level.emplace(n, 0);
  for (VertexId y : s.sinks) (*w.level)[y] = 1;
  w.labels.resize(n);
  for (std::uint64_t i = 0; i < k; ++i)
    for (int c = 0; c < M; ++c)
      w.labels[i * M + (std::uint64_t)c] =
          "x" + std::to_string(i) + ":" + std::to_string(c);
  for (int a = 0; a < M; ++a) w.labels[sink_id(a)] = "y" + std::to_string(a);
  w.meta = {{"family", "sigma"},
            {"m", std::to_string(m)},
            {"M", std::to_string(M)}};
  w.validate();
  s.window = std::move(w);
  return s;
}

Window make_out_tree_window(int b, int d, std::size_t cap) {
  if (b < 1 || d < 1) throw Error("tree parameters must be >= 1");
  std::vector<Edge> edges;
  std::vector<int> depth{0};
  std::size_t head = 0;
  while (head < depth.size()) {
    std::size_t v = head++;
    if (depth[v] >= d) continue;
    for (int i = 0; i < b; ++i) {
      if (depth.size() + 1 > cap) throw Error("vertex cap exceeded for tree");
      auto child = (VertexId)depth.size();
      depth.push_back(depth[v] + 1);
      edges.push_back({(VertexId)v, child});
    }
  }
  Window w;
  w.graph = Digraph::from_edges(depth.size(), edges);
  w.interior.resize(depth.size());
  w.level.emplace(depth.size());
  for (std::size_t v = 0; v < depth.size(); ++v) {
    w.interior[v] = depth[v] < d ? 1 : 0;
    (*w.level)[v] = depth[v];
  }
  w.root = 0;
  w.meta = {{"family", "tree"},
            {"b", std::to_string(b)},
            {"depth", std::to_string(d)}};
  w.validate();
  return w;
}

Window make_regular_tree_window(int out_valency, int in_valency, int radius,
                                std::size_t cap) {
  if (out_valency < 1 || in_valency < 1 || radius < 1)
    throw Error("regular tree parameters must be >= 1");
  // Grow the underlying tree outwards from the centre; each vertex owes
  // out_valency out-slots and in_valency in-slots, one of which may be
  // consumed by the edge it was discovered through.
  struct Todo {
    VertexId v;
    int dist;
    bool has_parent_out;  // an out-slot already used
    bool has_parent_in;   // an in-slot already used
  };
  std::vector<Edge> edges;
  std::vector<int> dist{0};
  std::vector<int> flevel{0};
  std::vector<Todo> queue{{0, 0, false, false}};
  std::size_t head = 0;
  while (head < queue.size()) {
    Todo t = queue[head++];
    if (t.dist >= radius) continue;
    int outs = out_valency - (t.has_parent_out ? 1 : 0);
    int ins = in_valency - (t.has_parent_in ? 1 : 0);
    for (int i = 0; i < outs; ++i) {
      if (dist.size() + 1 > cap) throw Error("vertex cap exceeded for regular tree");
      auto child = (VertexId)dist.size();
      dist.push_back(t.dist + 1);
      flevel.push_back(flevel[t.v] + 1);
      edges.push_back({t.v, child});
      queue.push_back({child, t.dist + 1, false, true});
    }
    for (int i = 0; i < ins; ++i) {
      if (dist.size() + 1 > cap) throw Error("vertex cap exceeded for regular tree");
      auto parent = (VertexId)dist.size();
      dist.push_back(t.dist + 1);
      flevel.push_back(flevel[t.v] - 1);
      edges.push_back({parent, t.v});
      queue.push_back({parent, t.dist + 1, true, false});
    }
  }
  Window w;
  w.graph = Digraph::from_edges(dist.size(), edges);
  w.interior.resize(dist.size());
  w.level.emplace(dist.size());
  for (std::size_t v = 0; v < dist.size(); ++v) {
    w.interior[v] = dist[v] < radius ? 1 : 0;
    (*w.level)[v] = flevel[v];
  }
  w.meta = {{"family", "regtree"},
            {"out", std::to_string(out_valency)},
            {"in", std::to_string(in_valency)},
            {"radius", std::to_string(radius)}};
  w.validate();
  return w;
}

Window make_line_window(int length) {
  if (length < 1) throw Error("line length must be >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < length; ++i) edges.push_back({(VertexId)i, (VertexId)(i + 1)});
  Window w;
  w.graph = Digraph::from_edges((std::size_t)length + 1, edges);
  w.interior.assign((std::size_t)length + 1, 1);
  w.interior.front() = 0;
  w.interior.back() = 0;
  w.level.emplace();
  for (int i = 0; i <= length; ++i) w.level->push_back(i);
  w.meta = {{"family", "line"}, {"length", std::to_string(length)}};
  w.validate();
  return w;
}

Window make_desc_of_line_window(int m, int M, int levels, std::size_t cap) {
  Window parent = make_dmm_window(m, M, levels, cap);
  // Walk the first-in-neighbour ray of the base tree; every ray vertex's
  // carried subset is the lex-first one, {0..m-1}, and the convention extends
  // that choice above the window. The descendant set of the line is then the
  // first m coordinates of every ray fibre. Base-tree ids are assigned in BFS
  // order, so the first child of base vertex v is 1 + k*v.
  std::uint64_t k = binomial((std::uint64_t)M, (std::uint64_t)m);
  std::vector<VertexId> keep;
  std::size_t cur = 0;
  for (int d = 0; d <= levels; ++d) {
    for (int a = 0; a < m; ++a) keep.push_back((VertexId)(cur * M + (std::size_t)a));
    cur = 1 + k * cur;
  }
  std::sort(keep.begin(), keep.end());
  Window out = induced_window(parent, keep);
  out.meta = {{"family", "descline"},
              {"m", std::to_string(m)},
              {"M", std::to_string(M)},
              {"levels", std::to_string(levels)}};
  out.validate();
  return out;
}

Window make_random_layered_dag(int levels, int width, double edge_prob,
                               std::uint64_t seed) {
  if (levels < 2) throw Error("random dag needs levels >= 2");
  if (width < 1) throw Error("random dag needs width >= 1");
  if (!(edge_prob > 0.0) || edge_prob > 1.0)
    throw Error("edge_prob must be in (0, 1]");
  SplitMix64 rng(seed);
  // Threshold compare on raw 64-bit draws keeps the stream portable.
  const bool always = edge_prob >= 1.0;
  const double scaled = std::ldexp(edge_prob, 64);
  const std::uint64_t threshold =
      always ? UINT64_MAX
             : (scaled >= std::ldexp(1.0, 64) ? UINT64_MAX
                                              : (std::uint64_t)scaled);
  auto vid = [&](int lvl, int i) { return (VertexId)(lvl * width + i); };
  std::vector<Edge> edges;
  for (int lvl = 0; lvl + 1 < levels; ++lvl) {
    for (int i = 0; i < width; ++i) {
      for (int j = 0; j < width; ++j) {
        std::uint64_t draw = rng.next();
        if (always || draw < threshold) edges.push_back({vid(lvl, i), vid(lvl + 1, j)});
      }
    }
  }
  std::size_t n = (std::size_t)levels * (std::size_t)width;
  Digraph full = Digraph::from_edges(n, edges);
  std::vector<VertexId> kept;
  for (VertexId v = 0; v < n; ++v) {
    if (!full.out(v).empty() || !full.in(v).empty()) kept.push_back(v);
  }
  if (kept.empty()) throw Error("random dag is empty after pruning isolated vertices");

  Window w;
  w.graph = full;
  w.interior.assign(n, 1);
  w.level.emplace(n);
  for (VertexId v = 0; v < n; ++v) (*w.level)[v] = (int)(v / (VertexId)width);
  w.meta = {{"family", "random"},
            {"levels", std::to_string(levels)},
            {"width", std::to_string(width)},
            {"edge_prob", std::to_string(edge_prob)},
            {"seed", std::to_string(seed)}};
  Window pruned = induced_window(w, kept);
  pruned.meta = w.meta;
  pruned.validate();
  return pruned;
}

}  // namespace digwin
