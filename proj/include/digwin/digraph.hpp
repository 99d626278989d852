#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace digwin {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Immutable loop-free digraph over dense vertex ids 0..n-1.
// Edges are ordered pairs; duplicates in the input are dropped and counted.
// Adjacency lists and the edge list are kept sorted, so all iteration
// orders are deterministic.
class Digraph {
 public:
  Digraph() = default;

  // Validates endpoints and rejects loops. Duplicate edges are collapsed
  // and reported via duplicate_count().
  static Digraph from_edges(std::size_t vertex_count,
                            const std::vector<Edge>& edges);

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t duplicate_count() const { return duplicates_; }

  std::span<const VertexId> out(VertexId v) const { return out_[v]; }
  std::span<const VertexId> in(VertexId v) const { return in_[v]; }

  // Sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(VertexId v) const { return v < out_.size(); }
  bool has_edge(VertexId u, VertexId v) const;
  // Index of (u,v) in edges(), if present.
  std::optional<std::size_t> edge_index(VertexId u, VertexId v) const;

  bool operator==(const Digraph& other) const {
    return out_.size() == other.out_.size() && edges_ == other.edges_;
  }

 private:
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
  std::vector<Edge> edges_;
  std::size_t duplicates_ = 0;
};

// Full induced subdigraph on a vertex subset. Vertices are relabelled
// densely in increasing order of their original id; the returned map
// sends new ids to original ids.
struct InducedSubdigraph {
  Digraph graph;
  std::vector<VertexId> original_id;
};
InducedSubdigraph induced_subdigraph(const Digraph& g,
                                     const std::vector<VertexId>& subset);

// Connected components of the underlying undirected graph of g with the
// vertex set `removed` deleted. Each component is a sorted vertex list;
// components are ordered by smallest member.
std::vector<std::vector<VertexId>> components_after_removal(
    const Digraph& g, const std::vector<VertexId>& removed);

}  // namespace digwin
