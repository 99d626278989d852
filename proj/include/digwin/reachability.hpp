#pragma once

#include <optional>
#include <vector>

#include "digwin/partition.hpp"
#include "digwin/window.hpp"

namespace digwin {

// Edge classes of the alternating-walk reachability relation: the least
// equivalence joining edges that share a head and edges that share a tail.
// Chains of these one-step moves are exactly the alternating walks.
EdgePartition reach_partition(const Window& w);

// One reachability class with its bipartition.
struct Alternet {
  std::vector<std::size_t> edges;  // indices into graph.edges()
  std::vector<VertexId> sources;   // X: tails
  std::vector<VertexId> sinks;     // Y: heads
  bool complete = false;           // all member vertices interior
  bool bipartite = true;           // X and Y disjoint
};

struct TwoArcWitness {
  VertexId u, v, w;  // edges (u,v) and (v,w) lie in one class, u != w
};

struct AlternetsResult {
  std::vector<Alternet> items;  // one per reachability class, canonical order
  // Set when some class contains both edges of a 2-arc; on the modelled
  // infinite object this makes the reachability relation universal.
  std::optional<TwoArcWitness> universality;
};

AlternetsResult alternets(const Window& w);

struct UniversalitySignal {
  std::optional<TwoArcWitness> two_arc;  // empty: no 2-arc in window, a
                                         // window-relative verdict only
};
UniversalitySignal universality_signal(const Window& w);

// Digraph on the complete alternets: (A,B) is an edge iff some sink of A is
// a source of B; attachment records the intersection size. Loosely attached
// means every attachment has size <= 1.
struct AlternetGraph {
  std::vector<std::size_t> alternet_index;  // into AlternetsResult::items
  struct Arc {
    std::size_t from, to;  // positions in alternet_index
    std::size_t attachment;
  };
  std::vector<Arc> arcs;
  bool loosely_attached = true;
  std::size_t excluded_incomplete = 0;
};
AlternetGraph alternet_graph(const Window& w);
AlternetGraph alternet_graph(const Window& w, const AlternetsResult& alts);

// The four membership conditions for the alternet-shaped bipartite class:
// finite non-empty parts, edge transitivity, a non-trivial equal-out-
// neighbourhood relation on the sources, and sink part as large as those
// classes.
struct ClassCReport {
  bool edge_transitive = false;
  bool delta_nontrivial = false;
  std::vector<std::size_t> delta_class_sizes;
  std::size_t sink_count = 0;
  bool member = false;
};
ClassCReport class_c_membership(const Window& w, const Alternet& alt,
                                std::size_t cap = 64);

}  // namespace digwin
