#ifndef RELHYP_IO_HPP
#define RELHYP_IO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "relhyp/complex.hpp"
#include "relhyp/metric_graph.hpp"
#include "relhyp/models.hpp"
#include "relhyp/presentation.hpp"

namespace relhyp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Graph serialization. The JSON form is the source of truth and round-trips
// bit-exactly: vertex ids, edge order, base and labels are all preserved.

inline std::string kind_name(LabelKind k) {
  switch (k) {
    case LabelKind::group: return "group";
    case LabelKind::horo: return "horo";
    case LabelKind::cone: return "cone";
  }
  throw std::invalid_argument("unknown label kind");
}

inline LabelKind kind_from_name(const std::string& s) {
  if (s == "group") return LabelKind::group;
  if (s == "horo") return LabelKind::horo;
  if (s == "cone") return LabelKind::cone;
  throw std::invalid_argument("unknown label kind: " + s);
}

inline json graph_to_json(const MetricGraph& g) {
  json out;
  out["base"] = g.base();
  json vertices = json::array();
  for (int v = 0; v < g.vertex_count(); ++v) {
    const VertexLabel& l = g.label(v);
    vertices.push_back({{"id", v},
                        {"kind", kind_name(l.kind)},
                        {"text", l.text},
                        {"level", l.level}});
  }
  out["vertices"] = vertices;
  json edges = json::array();
  for (int u = 0; u < g.vertex_count(); ++u)
    for (auto& [v, w] : g.neighbors(u))
      if (u < v) edges.push_back({u, v, w});
  std::sort(edges.begin(), edges.end());
  out["edges"] = edges;
  return out;
}

inline MetricGraph graph_from_json(const json& j) {
  MetricGraph g;
  if (!j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph JSON needs \"vertices\" and \"edges\"");
  int expected = 0;
  for (const json& v : j.at("vertices")) {
    if (v.at("id").get<int>() != expected)
      throw std::invalid_argument("graph vertices must be listed as ids 0..n-1 in order");
    g.add_vertex({kind_from_name(v.at("kind").get<std::string>()),
                  v.at("text").get<std::string>(), v.at("level").get<int>()});
    ++expected;
  }
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("graph edge must be [u, v, w]");
    g.add_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<int>());
  }
  if (j.contains("base")) g.set_base(j.at("base").get<int>());
  return g;
}

// Display label used in DOT output; horoball vertices render as
// "(vertexId@level)" and cone vertices as "cone(key)".
inline std::string display_label(const VertexLabel& l) {
  switch (l.kind) {
    case LabelKind::group: return l.text;
    case LabelKind::horo: return "(" + l.text + "@" + std::to_string(l.level) + ")";
    case LabelKind::cone: return "cone(" + l.text + ")";
  }
  throw std::invalid_argument("unknown label kind");
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string graph_to_dot(const MetricGraph& g, const std::string& name = "relhyp") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    const VertexLabel& l = g.label(v);
    os << "  v" << v << " [label=\"" << dot_escape(display_label(l)) << "\", kind=\""
       << kind_name(l.kind) << "\", level=" << l.level;
    if (v == g.base()) os << ", base=1";
    os << "];\n";
  }
  for (int u = 0; u < g.vertex_count(); ++u)
    for (auto& [v, w] : g.neighbors(u))
      if (u < v) os << "  v" << u << " -- v" << v << " [weight=" << w << "];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Files and hashing.

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

// FNV-1a over the raw bytes, as a stable input fingerprint.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out = "fnv1a:";
  for (int i = 15; i >= 0; --i) out += digits[(h >> (4 * i)) & 0xf];
  return out;
}

inline json load_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Group spec files.
//   {"kind": "free" | "free_abelian", "rank": n}
//   {"kind": "finite_table", "table": [[...]], "generators": [...], "names": [...]}
//   {"kind": "presentation", "generators": ["x", ...], "relators": [[1,1], ...]}
//   {"kind": "free_product" | "direct_product", "factors": [spec, spec]}
// Presentation relators are signed 1-based generator indices. A presentation
// gets a concrete model by coset enumeration when it closes, else by Dehn's
// algorithm when it satisfies C'(1/6).

struct LoadedGroup {
  GroupModelPtr model;
  Presentation presentation;  // meaningful when has_presentation
  bool has_presentation = false;
};

inline Presentation presentation_from_json(const json& j) {
  Presentation p;
  for (const json& n : j.at("generators")) p.generator_names.push_back(n.get<std::string>());
  if (j.contains("relators"))
    for (const json& r : j.at("relators")) {
      Word w;
      for (const json& x : r) w.push_back(x.get<int>());
      p.relators.push_back(w);
    }
  p.validate();
  return p;
}

namespace detail {

inline std::shared_ptr<FiniteTableModel> finite_model_from_json(const json& j, int max_cosets) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite_table") {
    std::vector<std::vector<int>> table;
    for (const json& row : j.at("table")) table.push_back(row.get<std::vector<int>>());
    std::vector<int> gens = j.at("generators").get<std::vector<int>>();
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return std::make_shared<FiniteTableModel>(std::move(table), std::move(gens),
                                              std::move(names));
  }
  if (kind == "presentation") {
    Presentation p = presentation_from_json(j);
    auto table = todd_coxeter(p, {}, max_cosets);
    if (table.status != TableStatus::complete)
      throw std::runtime_error("coset enumeration budget exhausted for a factor presentation");
    return model_from_table(table, p.generator_names);
  }
  throw std::invalid_argument("expected a finite group spec, got kind: " + kind);
}

}  // namespace detail

inline LoadedGroup load_group(const json& j, int max_cosets = 2000) {
  LoadedGroup out;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "free") {
    out.model = std::make_shared<FreeGroupModel>(j.at("rank").get<int>());
    return out;
  }
  if (kind == "free_abelian") {
    out.model = std::make_shared<FreeAbelianModel>(j.at("rank").get<int>());
    return out;
  }
  if (kind == "finite_table") {
    out.model = detail::finite_model_from_json(j, max_cosets);
    return out;
  }
  if (kind == "presentation") {
    out.presentation = presentation_from_json(j);
    out.has_presentation = true;
    auto table = todd_coxeter(out.presentation, {}, max_cosets);
    if (table.status == TableStatus::complete) {
      out.model = model_from_table(table, out.presentation.generator_names);
    } else if (check_c_one_sixth(out.presentation)) {
      out.model = std::make_shared<SmallCancellationModel>(out.presentation);
    } else {
      throw std::runtime_error(
          "presentation neither closes within max_cosets nor satisfies C'(1/6)");
    }
    return out;
  }
  if (kind == "free_product") {
    const json& factors = j.at("factors");
    if (factors.size() != 2) throw std::invalid_argument("free_product needs two factors");
    auto a = detail::finite_model_from_json(factors[0], max_cosets);
    auto b = detail::finite_model_from_json(factors[1], max_cosets);
    out.model = std::make_shared<AmalgamModel>(a, b, std::vector<int>{0}, std::vector<int>{0});
    return out;
  }
  if (kind == "direct_product") {
    const json& factors = j.at("factors");
    if (factors.size() != 2) throw std::invalid_argument("direct_product needs two factors");
    auto a = load_group(factors[0], max_cosets);
    auto b = load_group(factors[1], max_cosets);
    out.model = std::make_shared<DirectProductModel>(a.model, b.model);
    return out;
  }
  throw std::invalid_argument("unknown group kind: " + kind);
}

// ---------------------------------------------------------------------------
// Complex-of-groups spec files.
//   {
//     "complex": {"vertices": n, "simplices": [[0,1], ...]},
//     "groups": {"<vertex list>": {"generators": [...], "relators": [...],
//                                  "model": <group spec>?}, ...},
//     "maps": {"<small> -> <big>": {"<generator name>": [signed letters], ...}}
//   }
// Simplices are named by their sorted vertex list joined with ",", e.g. "0"
// or "0,1". Simplices missing from "groups" carry the trivial group. Each
// map is keyed by the big simplex's generator names, written over the small
// simplex's generators.

inline std::string simplex_name(const std::vector<int>& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

inline SimpleComplexOfGroups cog_from_json(const json& j, int max_cosets = 2000) {
  const json& cj = j.at("complex");
  std::vector<std::vector<int>> maximal;
  for (const json& s : cj.at("simplices")) maximal.push_back(s.get<std::vector<int>>());
  auto y = make_complex(cj.at("vertices").get<int>(), maximal);

  std::map<std::string, int> by_name;
  for (size_t i = 0; i < y.simplices.size(); ++i)
    by_name[simplex_name(y.simplices[i])] = static_cast<int>(i);

  std::vector<LocalGroup> groups(y.simplices.size());
  if (j.contains("groups"))
    for (auto it = j.at("groups").begin(); it != j.at("groups").end(); ++it) {
      auto found = by_name.find(it.key());
      if (found == by_name.end())
        throw std::invalid_argument("group given for unknown simplex: " + it.key());
      LocalGroup g;
      g.presentation = presentation_from_json(it.value());
      if (it.value().contains("model"))
        g.model = load_group(it.value().at("model"), max_cosets).model;
      groups[found->second] = std::move(g);
    }

  auto scwol = build_scwol(y);
  std::map<std::pair<int, int>, std::vector<Word>> maps;
  if (j.contains("maps"))
    for (auto it = j.at("maps").begin(); it != j.at("maps").end(); ++it) {
      const std::string& key = it.key();
      auto arrow = key.find("->");
      if (arrow == std::string::npos)
        throw std::invalid_argument("map key must look like \"small -> big\": " + key);
      auto trim = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
      };
      std::string small_name = trim(key.substr(0, arrow));
      std::string big_name = trim(key.substr(arrow + 2));
      auto si = by_name.find(small_name);
      auto bi = by_name.find(big_name);
      if (si == by_name.end() || bi == by_name.end())
        throw std::invalid_argument("map key names an unknown simplex: " + key);
      const Presentation& big_pres = groups[bi->second].presentation;
      std::vector<Word> images(big_pres.generator_count());
      std::vector<bool> given(big_pres.generator_count(), false);
      for (auto gi = it.value().begin(); gi != it.value().end(); ++gi) {
        int gen = -1;
        for (int k = 0; k < big_pres.generator_count(); ++k)
          if (big_pres.generator_names[k] == gi.key()) gen = k;
        if (gen < 0)
          throw std::invalid_argument("map for " + key + " names unknown generator " + gi.key());
        Word w;
        for (const json& x : gi.value()) w.push_back(x.get<int>());
        images[gen] = w;
        given[gen] = true;
      }
      for (int k = 0; k < big_pres.generator_count(); ++k)
        if (!given[k])
          throw std::invalid_argument("map for " + key + " is missing generator " +
                                      big_pres.generator_names[k]);
      maps[{si->second, bi->second}] = images;
    }

  return make_cog(std::move(y), std::move(groups), std::move(maps));
}

// ---------------------------------------------------------------------------
// Run manifest embedded in every CLI report. Thread count is deliberately
// absent: reports are byte-identical across thread counts.

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> inputs;  // path -> content hash
  std::uint64_t seed = 0;
  json budgets = json::object();

  void add_input(const std::string& path) { inputs[path] = fnv1a_hex(read_file(path)); }

  json to_json() const {
    json out;
    out["command"] = command;
    out["inputs"] = inputs;
    out["seed"] = seed;
    out["budgets"] = budgets;
    out["tool_version"] = kToolVersion;
    return out;
  }
};

}  // namespace relhyp

#endif
