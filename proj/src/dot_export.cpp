#include "digwin/dot_export.hpp"

#include <sstream>

#include "digwin/error.hpp"
#include "digwin/reachability.hpp"
#include "digwin/relations.hpp"

namespace digwin {

namespace {

const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#2ca02c",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string color(std::size_t i) { return kPalette[i % kPaletteSize]; }

}  // namespace

std::string write_dot(const Window& w, DotColoring coloring) {
  std::ostringstream os;
  os << "digraph digwin {\n";

  std::vector<std::int64_t> vclass(w.vertex_count(), -1);
  std::vector<std::int64_t> eclass;
  if (coloring == DotColoring::Level) {
    if (!w.level) throw Error("level coloring unavailable: window has no levels");
    int min_level = 0;
    for (VertexId v = 0; v < w.vertex_count(); ++v) {
      min_level = std::min(min_level, (*w.level)[v]);
    }
    for (VertexId v = 0; v < w.vertex_count(); ++v) {
      vclass[v] = (*w.level)[v] - min_level;
    }
  } else if (coloring == DotColoring::Delta) {
    std::vector<VertexId> domain;
    for (VertexId v = 0; v < w.vertex_count(); ++v) {
      if (w.is_interior(v)) domain.push_back(v);
    }
    DeltaResult d = delta_partition(w, 1, domain);
    if (d.partition.classes.empty()) {
      throw Error("delta coloring unavailable: no classifiable vertices");
    }
    auto idx = d.partition.class_of(w.vertex_count());
    vclass = idx;
  } else {
    EdgePartition p = reach_partition(w);
    eclass = p.class_of(w.graph.edge_count());
  }

  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    os << "  " << v << " [";
    if (!w.labels.empty() && !w.labels[v].empty()) {
      os << "label=\"" << w.labels[v] << "\", ";
    }
    if (vclass[v] >= 0) {
      os << "style=filled, fillcolor=\"" << color((std::size_t)vclass[v]) << "\"";
    } else {
      os << "style=filled, fillcolor=\"#cccccc\"";
    }
    if (!w.is_interior(v)) os << ", shape=box";
    os << "];\n";
  }
  const auto& edges = w.graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    os << "  " << edges[e].first << " -> " << edges[e].second;
    if (!eclass.empty() && eclass[e] >= 0) {
      os << " [color=\"" << color((std::size_t)eclass[e]) << "\"]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace digwin
