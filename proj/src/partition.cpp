#include "digwin/partition.hpp"

#include <algorithm>
#include <string>

#include "digwin/error.hpp"

namespace digwin {

Partition Partition::from_classes(std::vector<std::vector<VertexId>> classes) {
  Partition p;
  for (auto& c : classes) {
    if (c.empty()) throw Error("partition class must be non-empty");
    std::sort(c.begin(), c.end());
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    return a.front() < b.front();
  });
  std::vector<VertexId> all;
  for (const auto& c : classes) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw Error("partition classes are not disjoint");
  }
  p.classes = std::move(classes);
  return p;
}

Partition Partition::singletons(const std::vector<VertexId>& domain) {
  std::vector<std::vector<VertexId>> cs;
  cs.reserve(domain.size());
  for (VertexId v : domain) cs.push_back({v});
  return from_classes(std::move(cs));
}

std::vector<VertexId> Partition::domain() const {
  std::vector<VertexId> all;
  for (const auto& c : classes) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  return all;
}

bool Partition::trivial() const {
  for (const auto& c : classes)
    if (c.size() > 1) return false;
  return true;
}

std::vector<std::int64_t> Partition::class_of(std::size_t vertex_count) const {
  std::vector<std::int64_t> idx(vertex_count, -1);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (VertexId v : classes[i]) {
      if (v >= vertex_count) throw Error("partition member out of range");
      idx[v] = (std::int64_t)i;
    }
  }
  return idx;
}

bool Partition::refines(const Partition& coarser) const {
  std::size_t n = 0;
  for (const auto& c : coarser.classes)
    for (VertexId v : c) n = std::max<std::size_t>(n, v + 1);
  for (const auto& c : classes)
    for (VertexId v : c) n = std::max<std::size_t>(n, v + 1);
  auto idx = coarser.class_of(n);
  for (const auto& c : classes) {
    std::int64_t want = idx[c.front()];
    if (want < 0) return false;
    for (VertexId v : c)
      if (idx[v] != want) return false;
  }
  return true;
}

std::vector<std::int64_t> EdgePartition::class_of(std::size_t edge_count) const {
  std::vector<std::int64_t> idx(edge_count, -1);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t e : classes[i]) {
      if (e >= edge_count) throw Error("edge partition member out of range");
      idx[e] = (std::int64_t)i;
    }
  }
  return idx;
}

}  // namespace digwin
