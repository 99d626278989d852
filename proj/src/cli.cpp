#include "digwin/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "digwin/analyze.hpp"
#include "digwin/dot_export.hpp"
#include "digwin/error.hpp"
#include "digwin/generators.hpp"
#include "digwin/json_io.hpp"
#include "digwin/reachability.hpp"
#include "digwin/relations.hpp"
#include "digwin/window.hpp"

namespace digwin {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Window quotient_window(const Window& w, int delta_n) {
  std::vector<VertexId> domain;
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    if (w.is_interior(v)) domain.push_back(v);
  }
  DeltaResult d = delta_partition(w, delta_n, domain);
  if (d.partition.classes.empty()) {
    throw Error("no classifiable vertices for delta_" + std::to_string(delta_n));
  }
  auto dom = d.partition.domain();
  Window ind = induced_window(w, dom);
  // Map the partition into the induced id space.
  std::vector<std::vector<VertexId>> mapped;
  {
    std::vector<std::int64_t> local(w.vertex_count(), -1);
    for (std::size_t i = 0; i < dom.size(); ++i) local[dom[i]] = (std::int64_t)i;
    for (const auto& cls : d.partition.classes) {
      std::vector<VertexId> c;
      for (VertexId v : cls) c.push_back((VertexId)local[v]);
      mapped.push_back(std::move(c));
    }
  }
  QuotientResult q = quotient_by(ind.graph, Partition::from_classes(mapped));

  Window out;
  out.graph = q.graph;
  out.interior.assign(q.classes.size(), 1);
  out.labels.resize(q.classes.size());
  std::vector<int> lvl(q.classes.size(), 0);
  bool levels_ok = ind.level.has_value();
  for (std::size_t c = 0; c < q.classes.classes.size(); ++c) {
    const auto& cls = q.classes.classes[c];
    for (VertexId v : cls) out.interior[c] &= ind.interior[v];
    if (levels_ok) {
      lvl[c] = (*ind.level)[cls.front()];
      for (VertexId v : cls) levels_ok &= (*ind.level)[v] == lvl[c];
    }
    out.labels[c] = "{" + std::to_string(cls.front()) +
                    (cls.size() > 1 ? ",..x" + std::to_string(cls.size()) : "") + "}";
  }
  if (levels_ok) out.level = lvl;
  out.meta = w.meta;
  out.meta["derived"] = "quotient";
  out.meta["delta"] = std::to_string(delta_n);
  out.meta["dropped_self_edges"] = std::to_string(q.dropped_self_edges);
  out.meta.erase("root");
  out.root.reset();
  out.validate();
  return out;
}

int run_parsed(const std::vector<std::string>& args) {
  CLI::App app{"digwin: finite windows of infinite digraphs - generators and "
               "structure analysis"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a digraph window as JSON");
  gen->require_subcommand(1);
  std::string out_path = "window.json";
  int m = 2, M = 2, levels = 3, b = 2, depth = 3, out_val = 2, in_val = 2;
  int radius = 3, length = 5, rlevels = 4, width = 3;
  double edge_prob = 0.5;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultVertexCap;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", out_path, "output file")->required();
    cmd->add_option("--cap", cap, "vertex cap");
  };
  auto* g_dmm = gen->add_subcommand("dmm", "base-tree family window");
  g_dmm->add_option("--m", m, "out-valency")->required();
  g_dmm->add_option("--M", M, "fibre size")->required();
  g_dmm->add_option("--levels", levels, "window levels")->required();
  add_out(g_dmm);
  auto* g_sigma = gen->add_subcommand("sigma", "alternet-shaped bipartite digraph");
  g_sigma->add_option("--m", m, "source out-valency")->required();
  g_sigma->add_option("--M", M, "sink count")->required();
  add_out(g_sigma);
  auto* g_tree = gen->add_subcommand("tree", "rooted out-tree");
  g_tree->add_option("--b", b, "out-valency")->required();
  g_tree->add_option("--depth", depth, "depth")->required();
  add_out(g_tree);
  auto* g_reg = gen->add_subcommand("regtree", "regular directed tree ball");
  g_reg->add_option("--out", out_val, "out-valency")->required();
  g_reg->add_option("--in", in_val, "in-valency")->required();
  g_reg->add_option("--radius", radius, "ball radius")->required();
  add_out(g_reg);
  auto* g_line = gen->add_subcommand("line", "directed path");
  g_line->add_option("--length", length, "edge count")->required();
  add_out(g_line);
  auto* g_desc = gen->add_subcommand("descline",
                                     "descendants of a line in the dmm family");
  g_desc->add_option("--m", m, "out-valency")->required();
  g_desc->add_option("--M", M, "fibre size")->required();
  g_desc->add_option("--levels", levels, "window levels")->required();
  add_out(g_desc);
  auto* g_rand = gen->add_subcommand("random", "seeded random layered DAG");
  g_rand->add_option("--levels", rlevels, "layer count")->required();
  g_rand->add_option("--width", width, "layer width")->required();
  g_rand->add_option("--edge-prob", edge_prob, "edge probability")->required();
  g_rand->add_option("--seed", seed, "PRNG seed")->required();
  add_out(g_rand);

  // analyze
  auto* an = app.add_subcommand("analyze", "run the full structure pipeline");
  std::string in_path, report_path;
  AnalyzeOptions opts;
  int depth_flag = -1;
  an->add_option("input", in_path, "digraph JSON")->required();
  an->add_option("--delta", opts.delta_n, "equal-descendant order (default 1)");
  an->add_option("--depth", depth_flag, "descent depth (default: to boundary)");
  an->add_option("--report", report_path, "write the JSON report here");
  an->add_option("--iso-cap", opts.iso_cap, "symmetry search vertex cap");
  an->add_option("--budget", opts.sample_budget, "self-similarity sample budget");

  // quotient
  auto* qu = app.add_subcommand("quotient", "quotient by equal-descendant classes");
  std::string q_in, q_out;
  int q_delta = 1;
  qu->add_option("input", q_in, "digraph JSON")->required();
  qu->add_option("--delta", q_delta, "equal-descendant order (default 1)");
  qu->add_option("-o,--output", q_out, "output file")->required();

  // reach
  auto* re = app.add_subcommand("reach", "alternating-reachability classes");
  std::string r_in, r_out;
  re->add_option("input", r_in, "digraph JSON")->required();
  re->add_option("-o,--output", r_out, "write classes as JSON");

  // export-dot
  auto* ex = app.add_subcommand("export-dot", "DOT export with class colours");
  std::string e_in, e_out, color_by = "level";
  ex->add_option("input", e_in, "digraph JSON")->required();
  ex->add_option("--color-by", color_by, "level | delta | alternet")
      ->check(CLI::IsMember({"level", "delta", "alternet"}));
  ex->add_option("-o,--output", e_out, "output file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    Window w;
    if (g_dmm->parsed()) {
      w = make_dmm_window(m, M, levels, cap);
    } else if (g_sigma->parsed()) {
      w = make_sigma(m, M).window;
    } else if (g_tree->parsed()) {
      w = make_out_tree_window(b, depth, cap);
    } else if (g_reg->parsed()) {
      w = make_regular_tree_window(out_val, in_val, radius, cap);
    } else if (g_line->parsed()) {
      w = make_line_window(length);
    } else if (g_desc->parsed()) {
      w = make_desc_of_line_window(m, M, levels, cap);
    } else {
      w = make_random_layered_dag(rlevels, width, edge_prob, seed);
    }
    write_file(out_path, write_window_json(w));
    std::cout << out_path << ": " << w.vertex_count() << " vertices, "
              << w.graph.edge_count() << " edges\n";
    return 0;
  }
  if (an->parsed()) {
    Window w = read_window_json(read_file(in_path));
    if (depth_flag > 0) opts.depth = depth_flag;
    AnalysisOutput out = analyze(w, opts, in_path);
    if (!report_path.empty()) write_file(report_path, out.report.dump(1) + "\n");
    std::cout << out.summary;
    return 0;
  }
  if (qu->parsed()) {
    Window w = read_window_json(read_file(q_in));
    Window q = quotient_window(w, q_delta);
    write_file(q_out, write_window_json(q));
    std::cout << q_out << ": " << q.vertex_count() << " classes, "
              << q.graph.edge_count() << " edges, dropped "
              << q.meta["dropped_self_edges"] << " self-class edge(s)\n";
    return 0;
  }
  if (re->parsed()) {
    Window w = read_window_json(read_file(r_in));
    AlternetsResult alts = alternets(w);
    nlohmann::json j;
    j["class_count"] = alts.items.size();
    j["universality"] = alts.universality ? "two_arc_in_class" : "no_two_arc_in_window";
    auto jc = nlohmann::json::array();
    for (const auto& a : alts.items) {
      nlohmann::json edges = nlohmann::json::array();
      for (std::size_t e : a.edges) {
        edges.push_back(nlohmann::json::array(
            {w.graph.edges()[e].first, w.graph.edges()[e].second}));
      }
      jc.push_back({{"edges", edges},
                    {"sources", a.sources},
                    {"sinks", a.sinks},
                    {"complete", a.complete}});
    }
    j["classes"] = jc;
    if (!r_out.empty()) write_file(r_out, j.dump(1) + "\n");
    std::cout << "reachability classes: " << alts.items.size() << "\n";
    for (const auto& a : alts.items) {
      std::cout << "  |X|=" << a.sources.size() << " |Y|=" << a.sinks.size()
                << " edges=" << a.edges.size()
                << (a.complete ? " complete" : " boundary") << "\n";
    }
    return 0;
  }
  // export-dot
  Window w = read_window_json(read_file(e_in));
  DotColoring c = color_by == "level"   ? DotColoring::Level
                  : color_by == "delta" ? DotColoring::Delta
                                        : DotColoring::Alternet;
  write_file(e_out, write_dot(w, c));
  std::cout << e_out << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    return run_parsed(args);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace digwin
