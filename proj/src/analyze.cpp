#include "digwin/analyze.hpp"

#include <algorithm>
#include <sstream>

#include "digwin/descent.hpp"
#include "digwin/error.hpp"
#include "digwin/json_io.hpp"
#include "digwin/reachability.hpp"
#include "digwin/relations.hpp"
#include "digwin/structure.hpp"
#include "digwin/symmetry.hpp"

namespace digwin {

using nlohmann::json;

namespace {

json classes_json(const Partition& p) {
  json out = json::array();
  for (const auto& cls : p.classes) out.push_back(cls);
  return out;
}

json edge_classes_json(const Digraph& g, const EdgePartition& p) {
  json out = json::array();
  for (const auto& cls : p.classes) {
    json jc = json::array();
    for (std::size_t e : cls) {
      jc.push_back(json::array({g.edges()[e].first, g.edges()[e].second}));
    }
    out.push_back(jc);
  }
  return out;
}

// Root for descent analysis: the recorded root if interior, else the
// smallest-id interior vertex on the lowest level (deepest usable cone).
std::optional<VertexId> pick_root(const Window& w) {
  if (w.root && w.is_interior(*w.root)) return w.root;
  std::optional<VertexId> best;
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (!w.is_interior(v)) continue;
    if (!best) {
      best = v;
      continue;
    }
    if (w.level && (*w.level)[v] < (*w.level)[*best]) best = v;
  }
  return best;
}

// Largest d such that layers 0..d-1 from the root are fully interior.
int usable_depth(const Window& w, VertexId root) {
  std::vector<char> seen(w.vertex_count(), 0);
  std::vector<VertexId> frontier{root};
  seen[root] = 1;
  int d = 0;
  while (!frontier.empty()) {
    for (VertexId v : frontier) {
      if (!w.is_interior(v)) return d;
    }
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId u : w.graph.out(v)) {
        if (!seen[u]) {
          seen[u] = 1;
          next.push_back(u);
        }
      }
    }
    frontier = std::move(next);
    ++d;
  }
  return d;
}

std::vector<std::pair<int, int>> two_prime_factor(std::size_t m) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; (std::size_t)p * (std::size_t)p <= m; ++p) {
    if (m % (std::size_t)p == 0) {
      std::size_t q = m / (std::size_t)p;
      bool q_prime = q >= 2;
      for (std::size_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
          q_prime = false;
          break;
        }
      }
      bool p_prime = true;
      for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
          p_prime = false;
          break;
        }
      }
      if (p_prime && q_prime) out.push_back({p, (int)q});
    }
  }
  return out;
}

}  // namespace

AnalysisOutput analyze(const Window& w, const AnalyzeOptions& opt,
                       const std::string& input_name) {
  json rep;
  std::vector<std::string> notes;
  rep["input"] = {{"name", input_name},
                  {"hash", window_hash(w)},
                  {"vertex_count", w.vertex_count()},
                  {"edge_count", w.graph.edge_count()}};
  json jmeta = json::object();
  for (const auto& [k, v] : w.meta) jmeta[k] = v;
  rep["input"]["meta"] = jmeta;

  // Level labelling.
  ZLabeling z = z_labeling(w);
  rep["z_labeling"]["verdict"] = z.labeled ? "labeled" : "conflict";
  rep["z_labeling"]["component_count"] = z.component_count;
  if (z.component_count > 1) {
    notes.push_back("underlying graph is disconnected; labelling is per component");
  }
  if (z.labeled) {
    rep["z_labeling"]["f"] = z.f;
  } else {
    json walk = json::array();
    for (const auto& st : z.conflict->walk) {
      walk.push_back({{"edge", json::array({st.edge.first, st.edge.second})},
                      {"forward", st.forward}});
    }
    rep["z_labeling"]["conflict"] = {
        {"walk", walk},
        {"forward_count", z.conflict->forward_count},
        {"backward_count", z.conflict->backward_count}};
  }

  // Reachability, alternets, alternet digraph.
  AlternetsResult alts = alternets(w);
  EdgePartition reach = reach_partition(w);
  rep["reachability"]["class_count"] = reach.size();
  rep["reachability"]["classes"] = edge_classes_json(w.graph, reach);
  std::size_t complete = 0;
  json jalts = json::array();
  for (const auto& a : alts.items) {
    complete += a.complete ? 1 : 0;
    jalts.push_back({{"source_count", a.sources.size()},
                     {"sink_count", a.sinks.size()},
                     {"edge_count", a.edges.size()},
                     {"complete", a.complete},
                     {"bipartite", a.bipartite}});
  }
  rep["reachability"]["alternets"] = jalts;
  rep["reachability"]["complete_alternet_count"] = complete;
  if (complete < alts.items.size()) {
    notes.push_back(std::to_string(alts.items.size() - complete) +
                    " alternet(s) touch the window boundary and are excluded "
                    "from exact claims");
  }
  if (alts.universality) {
    rep["reachability"]["universality"] = {
        {"verdict", "two_arc_in_class"},
        {"witness", json::array({alts.universality->u, alts.universality->v,
                                 alts.universality->w})}};
  } else {
    rep["reachability"]["universality"] = {{"verdict", "no_two_arc_in_window"}};
    notes.push_back("universality verdict is window-relative");
  }
  AlternetGraph ag = alternet_graph(w, alts);
  json jarcs = json::array();
  for (const auto& arc : ag.arcs) {
    jarcs.push_back({{"from", arc.from}, {"to", arc.to},
                     {"attachment", arc.attachment}});
  }
  rep["reachability"]["alternet_graph"] = {
      {"vertex_count", ag.alternet_index.size()},
      {"arcs", jarcs},
      {"loosely_attached", ag.loosely_attached},
      {"excluded_incomplete", ag.excluded_incomplete}};

  // Equal-descendant classes.
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (w.is_interior(v)) interior.push_back(v);
  }
  DeltaResult delta = delta_partition(w, opt.delta_n, interior);
  rep["delta"]["n"] = opt.delta_n;
  rep["delta"]["class_count"] = delta.partition.size();
  rep["delta"]["classes"] = classes_json(delta.partition);
  rep["delta"]["nontrivial"] = !delta.partition.trivial();
  rep["delta"]["excluded"] = delta.excluded;
  if (!delta.excluded.empty()) {
    notes.push_back(std::to_string(delta.excluded.size()) +
                    " vertex cone(s) leave the window; excluded from the "
                    "equal-descendant classes");
  }

  // R classes from complete alternets.
  RPartitionResult rcls = r_partition(w);
  rep["r_classes"]["class_count"] = rcls.partition.size();
  rep["r_classes"]["classes"] = classes_json(rcls.partition);
  rep["r_classes"]["excluded_count"] = rcls.excluded.size();

  // Descent analysis on a rooted sub-window.
  std::optional<VertexId> root = pick_root(w);
  rep["descent"] = json();
  rep["properties"] = json();
  if (!root) {
    notes.push_back("no interior vertex; descent analysis skipped");
  } else {
    int d = opt.depth ? *opt.depth : usable_depth(w, *root);
    if (d < 1) {
      notes.push_back("root cone leaves the window immediately; descent "
                      "analysis skipped");
    } else
      try {
      Window gamma = descendant_window(w, *root, d);
      LayerProfile prof = layer_profile(gamma);
      json jd;
      jd["root"] = *root;
      jd["depth"] = prof.depth;
      jd["out_valency"] = prof.out_valency;
      jd["layer_sizes"] = prof.layer_sizes;
      jd["in_valencies"] = prof.in_valencies;
      if (prof.stabilization_index) {
        jd["N"] = *prof.stabilization_index;
        jd["ultimate_in_valency"] = *prof.ultimate_in_valency;
      } else {
        jd["N"] = nullptr;
        notes.push_back("in-valency stabilization not witnessed in window");
      }
      jd["p3"] = prof.p3 == P3Verdict::HoldsToDepth ? "holds_to_depth"
                 : prof.p3 == P3Verdict::FailsAt    ? "fails_at"
                                                    : "inconclusive";
      if (prof.p3 == P3Verdict::FailsAt) jd["p3_fails_at"] = prof.p3_fails_at;
      if (prof.refutation) {
        jd["in_valency_refutation"] = {
            {"layer", prof.refutation->layer},
            {"vertices", json::array({prof.refutation->a, prof.refutation->b})},
            {"valencies", json::array({prof.refutation->valency_a,
                                       prof.refutation->valency_b})}};
      }
      rep["descent"] = jd;

      json jp;
      P0Report p0 = check_p0(gamma);
      jp["p0"] = {{"holds", p0.holds}, {"out_valency", p0.out_valency}};
      if (p0.overlap) {
        jp["p0"]["overlap"] = {{"vertex", p0.overlap->v},
                               {"layers", json::array({p0.overlap->first_layer,
                                                       p0.overlap->second_layer})}};
      }
      int p1_depth = std::min(2, d);
      P1Report p1 = check_p1(gamma, p1_depth, opt.sample_budget);
      jp["p1"] = {{"depth", p1_depth},
                  {"verdict", p1.verdict == P1Report::Verdict::Holds  ? "holds"
                              : p1.verdict == P1Report::Verdict::Fails ? "fails"
                                                                       : "partial"},
                  {"tested_count", p1.tested.size()}};
      if (p1.witness) jp["p1"]["witness"] = *p1.witness;
      notes.push_back("self-similarity verdict is depth-limited and sampled");

      G3Result g3 = find_g3_k(gamma);
      jp["g3_k"] = g3.k ? json(*g3.k) : json(nullptr);
      if (!g3.k) notes.push_back("no common-ancestry constant verified in window");

      if (g3.k) {
        int l0 = 2 * *g3.k - 1;
        if (l0 <= prof.depth) {
          RhoQuotientReport rq = rho_quotient_tree_check(gamma, *g3.k);
          json jr = {{"k", *g3.k},
                     {"layer", l0},
                     {"classes", classes_json(rho_partition(gamma, {*g3.k, l0}))},
                     {"is_tree_to_window", rq.is_tree_to_window},
                     {"class_count", rq.class_count},
                     {"out_valencies", rq.out_valencies}};
          if (rq.constant_out_valency) jr["constant_out_valency"] = *rq.constant_out_valency;
          rep["rho"] = jr;
        }
      }

      ConditionCReport cc = condition_c(gamma, *gamma.root, d);
      if (cc.disjoint) {
        jp["condition_c"] = {{"verdict", "disjoint_to_depth"},
                             {"U", cc.part_u},
                             {"V", cc.part_v},
                             {"depth", cc.depth}};
      } else {
        jp["condition_c"] = {{"verdict", "no_split"}};
        if (cc.witness) {
          jp["condition_c"]["merge_witness"] =
              json::array({cc.witness->a, cc.witness->b,
                           cc.witness->common_descendant});
        }
      }

      auto blocks = block_system(gamma);
      jp["blocks"] = {{"count", blocks.size()}, {"classes", blocks}};

      auto factored = two_prime_factor(prof.out_valency);
      if (!factored.empty()) {
        auto [p, q] = factored.front();
        PqReport pq = pq_consistency(gamma, p, q);
        jp["pq"] = {{"p", p},
                    {"q", q},
                    {"verdict", pq.verdict == PqReport::Verdict::Consistent
                                    ? "consistent"
                                : pq.verdict == PqReport::Verdict::Inconsistent
                                    ? "inconsistent"
                                    : "inapplicable"},
                    {"detail", pq.detail}};
      } else {
        jp["pq"] = nullptr;
      }
      rep["properties"] = jp;

      // Symmetry diagnostics within caps.
      json js;
      if (gamma.vertex_count() <= opt.iso_cap) {
        js["layer_orbit_counts"] = layer_transitivity_diagnostic(gamma, opt.iso_cap);
      } else {
        js["layer_orbit_counts"] = nullptr;
        notes.push_back("descent window exceeds the symmetry cap (" +
                        std::to_string(opt.iso_cap) + "); orbit diagnostic skipped");
      }
      for (std::size_t i = 0; i < alts.items.size(); ++i) {
        const auto& a = alts.items[i];
        if (!a.complete || !a.bipartite) continue;
        if (a.sources.size() + a.sinks.size() > opt.iso_cap) {
          notes.push_back("first complete alternet exceeds the symmetry cap; "
                          "membership check skipped");
          break;
        }
        ClassCReport cm = class_c_membership(w, a, opt.iso_cap);
        js["alternet_class"] = {{"alternet", i},
                                {"edge_transitive", cm.edge_transitive},
                                {"delta_nontrivial", cm.delta_nontrivial},
                                {"delta_class_sizes", cm.delta_class_sizes},
                                {"sink_count", cm.sink_count},
                                {"member", cm.member}};
        break;
      }
      rep["symmetry"] = js;
    } catch (const Error& e) {
      notes.push_back(std::string("descent analysis stopped: ") + e.what());
    }
  }

  std::sort(notes.begin(), notes.end());
  rep["notes"] = notes;

  std::ostringstream os;
  os << "input: " << input_name << "  (" << w.vertex_count() << " vertices, "
     << w.graph.edge_count() << " edges)\n";
  os << "z-labeling: " << (z.labeled ? "labeled" : "conflict") << "\n";
  os << "reachability classes: " << reach.size() << " (" << complete
     << " complete alternets); universality: "
     << (alts.universality ? "two-arc in class" : "no two-arc in window") << "\n";
  os << "delta_" << opt.delta_n << ": " << delta.partition.size() << " classes"
     << (delta.partition.trivial() ? " (trivial)" : " (non-trivial)") << "\n";
  if (rep["descent"].is_object() && rep["descent"].contains("layer_sizes")) {
    os << "descent from " << rep["descent"]["root"] << ": sizes "
       << rep["descent"]["layer_sizes"].dump() << ", r "
       << rep["descent"]["in_valencies"].dump() << ", P3 "
       << rep["descent"]["p3"].get<std::string>() << "\n";
    os << "blocks: " << rep["properties"]["blocks"]["count"] << "; G3 k: "
       << rep["properties"]["g3_k"].dump() << "\n";
  }
  os << "notes: " << notes.size() << "\n";

  return {rep, os.str()};
}

}  // namespace digwin
