#include "digwin/json_io.hpp"

#include <json.hpp>

#include "digwin/error.hpp"

namespace digwin {

using nlohmann::json;

std::string write_window_json(const Window& w) {
  json j;
  j["meta"] = json::object();
  for (const auto& [k, v] : w.meta) j["meta"][k] = v;
  if (w.root) j["meta"]["root"] = std::to_string(*w.root);
  j["vertices"] = json::array();
  for (VertexId v = 0; v < w.vertex_count(); ++v) {
    json jv;
    jv["id"] = v;
    jv["interior"] = w.is_interior(v);
    if (w.level) jv["level"] = (*w.level)[v];
    if (!w.labels.empty() && !w.labels[v].empty()) jv["label"] = w.labels[v];
    j["vertices"].push_back(jv);
  }
  j["edges"] = json::array();
  for (const auto& [u, v] : w.graph.edges()) {
    j["edges"].push_back(json::array({u, v}));
  }
  return j.dump(1) + "\n";
}

Window read_window_json(const std::string& text) {
  json j = json::parse(text);  // parse_error carries the byte position
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
    throw Error("digraph json must have \"vertices\" and \"edges\"");
  }
  const auto& jverts = j["vertices"];
  std::size_t n = jverts.size();
  Window w;
  w.interior.assign(n, 0);
  bool any_level = false, any_label = false;
  for (const auto& jv : jverts) {
    if (jv.contains("level")) any_level = true;
    if (jv.contains("label")) any_label = true;
  }
  if (any_level) w.level.emplace(n, 0);
  if (any_label) w.labels.resize(n);
  std::vector<char> seen(n, 0);
  for (const auto& jv : jverts) {
    if (!jv.contains("id") || !jv["id"].is_number_unsigned()) {
      throw Error("vertex entry needs an unsigned \"id\"");
    }
    std::size_t id = jv["id"].get<std::size_t>();
    if (id >= n || seen[id]) {
      throw Error("vertex ids must be exactly 0.." + std::to_string(n - 1));
    }
    seen[id] = 1;
    w.interior[id] = jv.value("interior", false) ? 1 : 0;
    if (any_level) {
      if (!jv.contains("level")) {
        throw Error("either all vertices carry a level or none do");
      }
      (*w.level)[id] = jv["level"].get<int>();
    }
    if (any_label && jv.contains("label")) {
      w.labels[id] = jv["label"].get<std::string>();
    }
  }
  std::vector<Edge> edges;
  for (const auto& je : j["edges"]) {
    if (!je.is_array() || je.size() != 2) {
      throw Error("edge entries must be [tail, head] pairs");
    }
    edges.push_back({je[0].get<VertexId>(), je[1].get<VertexId>()});
  }
  w.graph = Digraph::from_edges(n, edges);
  if (j.contains("meta") && j["meta"].is_object()) {
    for (auto it = j["meta"].begin(); it != j["meta"].end(); ++it) {
      if (it.key() == "root") {
        w.root = (VertexId)std::stoul(it.value().get<std::string>());
        continue;
      }
      w.meta[it.key()] = it.value().is_string()
                             ? it.value().get<std::string>()
                             : it.value().dump();
    }
  }
  w.validate();
  return w;
}

std::string window_hash(const Window& w) {
  std::string s = write_window_json(w);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace digwin
