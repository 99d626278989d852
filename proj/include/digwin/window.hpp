#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "digwin/digraph.hpp"
#include "digwin/partition.hpp"

namespace digwin {

// A finite view of a (typically infinite) digraph. Interior vertices carry
// their complete in- and out-neighbourhoods in `graph`; boundary vertices
// may be missing incident edges that exist in the modelled object. Analyses
// that need a full neighbourhood are only exact on interior vertices.
//
// If `level` is present, every edge (u,v) satisfies level[v] = level[u]+1.
struct Window {
  Digraph graph;
  std::vector<std::uint8_t> interior;        // per vertex
  std::optional<std::vector<int>> level;     // per vertex
  std::vector<std::string> labels;           // optional; empty or per vertex
  std::optional<VertexId> root;              // set on rooted (descendant) windows
  std::map<std::string, std::string> meta;   // generator provenance

  std::size_t vertex_count() const { return graph.vertex_count(); }
  bool is_interior(VertexId v) const { return interior[v] != 0; }

  // Throws if flags/levels are malformed or the level contract fails.
  void validate() const;
};

// Induced sub-window on a vertex subset: relabels densely, carries over
// levels, labels and meta. Interior flags are intersected with `subset`
// membership only when `recompute_interior` is false; otherwise the caller
// supplies new flags.
Window induced_window(const Window& w, const std::vector<VertexId>& subset);

struct QuotientResult {
  Partition classes;                    // over source vertices
  Digraph graph;                        // on class indices
  std::vector<std::int64_t> class_map;  // source vertex -> class index (-1 outside)
  std::size_t dropped_self_edges = 0;   // edges inside one class, not emitted
};

// Quotient digraph: classes become vertices; (A,B) is an edge iff some
// a in A, b in B with (a,b) an edge and A != B. Edges inside one class are
// dropped and counted.
QuotientResult quotient_by(const Digraph& g, const Partition& p);

}  // namespace digwin
