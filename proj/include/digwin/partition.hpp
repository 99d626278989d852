#pragma once

#include <cstddef>
#include <vector>

#include "digwin/digraph.hpp"

namespace digwin {

// Equivalence partition of a vertex subset. Classes are disjoint, non-empty,
// internally sorted, and ordered by smallest member; this is the canonical
// serialization order.
struct Partition {
  std::vector<std::vector<VertexId>> classes;

  static Partition from_classes(std::vector<std::vector<VertexId>> classes);
  static Partition singletons(const std::vector<VertexId>& domain);

  std::vector<VertexId> domain() const;
  std::size_t size() const { return classes.size(); }
  bool trivial() const;  // all classes singletons
  // Every class of *this contained in a class of `coarser`.
  bool refines(const Partition& coarser) const;
  // Class index per domain member; returns usable lookup for sparse domains.
  std::vector<std::int64_t> class_of(std::size_t vertex_count) const;

  bool operator==(const Partition&) const = default;
};

// Partition of edges, by index into Digraph::edges().
struct EdgePartition {
  std::vector<std::vector<std::size_t>> classes;  // canonical order as above

  std::size_t size() const { return classes.size(); }
  std::vector<std::int64_t> class_of(std::size_t edge_count) const;

  bool operator==(const EdgePartition&) const = default;
};

// Small union-find used for equivalence closures.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace digwin
