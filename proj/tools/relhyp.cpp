// relhyp: command-line front end for the toolkit. Every subcommand writes a
// JSON report (stdout or --out) embedding its run manifest; wall time goes to
// stderr so reports stay byte-identical across runs and thread counts.
// Exit codes: 0 success, 2 input error, 3 budget exhaustion.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "relhyp/augmented.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/complex.hpp"
#include "relhyp/develop.hpp"
#include "relhyp/horoball.hpp"
#include "relhyp/hyperbolicity.hpp"
#include "relhyp/io.hpp"
#include "relhyp/metric_graph.hpp"
#include "relhyp/models.hpp"
#include "relhyp/parallel.hpp"

using namespace relhyp;

namespace {

struct Output {
  std::string out_path;  // empty = stdout
  std::string dot_path;  // empty = no DOT artifact
};

void emit(const Output& o, const json& report) {
  std::string text = report.dump(2) + "\n";
  if (o.out_path.empty())
    std::cout << text;
  else
    write_file(o.out_path, text);
}

void emit_dot(const Output& o, const MetricGraph& g) {
  if (!o.dot_path.empty()) write_file(o.dot_path, graph_to_dot(g));
}

// Membership predicate for the subgroup generated by `gens`: elements are
// enumerated breadth-first up to `length` subgroup letters and recognized by
// canonical key. Sound on everything enumerated; a too-small length budget
// surfaces as a closure error in enumerate_cosets, never as a wrong answer.
MembershipPredicate subgroup_predicate(const GroupModelPtr& m, const std::vector<Word>& gens,
                                       int length, int max_elements) {
  auto keys = std::make_shared<std::set<std::string>>();
  std::vector<Element> frontier{m->identity()};
  keys->insert(m->canonical_key(m->identity()));
  for (int l = 0; l < length; ++l) {
    std::vector<Element> next;
    for (const Element& g : frontier)
      for (const Word& w : gens)
        for (int sign : {+1, -1}) {
          Element s = m->eval_word(w);
          if (sign < 0) s = m->inverse(s);
          Element h = m->multiply(g, s);
          if (keys->insert(m->canonical_key(h)).second) {
            if (static_cast<int>(keys->size()) > max_elements)
              throw std::runtime_error("peripheral subgroup enumeration budget exceeded");
            next.push_back(h);
          }
        }
    frontier = std::move(next);
  }
  GroupModelPtr mp = m;
  return [mp, keys](const Element& x) { return keys->count(mp->canonical_key(x)) > 0; };
}

std::vector<Word> parse_peripheral(const std::vector<std::string>& words) {
  std::vector<Word> out;
  for (const std::string& s : words) out.push_back(parse_word(s));
  if (out.empty()) throw std::invalid_argument("at least one --peripheral word required");
  return out;
}

json witness_json(const BcpWitness& w, const std::string& type) {
  return {{"type", type},
          {"gamma1", w.gamma1},
          {"gamma2", w.gamma2},
          {"coset", w.coset},
          {"value", w.value}};
}

json delta_report_json(const DeltaReport& r, const std::string& method) {
  return {{"delta", r.delta},
          {"method", method},
          {"mode", r.mode},
          {"witness", r.witness},
          {"witness_point", r.witness_point},
          {"truncated", r.truncated},
          {"note", r.note}};
}

json violations_json(const CogValidation& v) {
  json out = json::array();
  for (const auto& viol : v.violations)
    out.push_back({{"kind", viol.kind}, {"chain", viol.chain}, {"detail", viol.detail}});
  return out;
}

std::string gap_presentation(const Presentation& p) {
  std::string s = "< ";
  for (int i = 0; i < p.generator_count(); ++i) s += (i ? ", " : "") + p.generator_names[i];
  s += " | ";
  for (size_t r = 0; r < p.relators.size(); ++r) {
    if (r) s += ", ";
    for (size_t i = 0; i < p.relators[r].size(); ++i) {
      int x = p.relators[r][i];
      if (i) s += "*";
      s += p.generator_names[std::abs(x) - 1];
      if (x < 0) s += "^-1";
    }
  }
  s += " >";
  return s;
}

json presentation_json(const Presentation& p) {
  return {{"generators", p.generator_names}, {"relators", p.relators}};
}

// Smallest element index in the coset rep * iota(G_base); the development
// labels "(cosetKey:baseSimplex)" need a representative independent of the
// discovery order.
std::string coset_key(const FiniteTableModel& m, const MembershipPredicate& in_local,
                      const Element& rep) {
  for (int x = 0; x < m.order(); ++x)
    if (in_local(m.multiply(m.inverse(rep), Element{x}))) return std::to_string(x);
  return "?";
}

// Backend from an explicit spec: a model of the fundamental group plus the
// embedding of each local generator (and, optionally, each edge element) as
// a word over the model's generators. Local-subgroup membership is decided
// by key sets enumerated up to `word_length` letters, which is exact for
// finite local groups and a budgeted approximation otherwise.
DevelopBackend backend_from_json(const SimpleComplexOfGroups& cog, const json& j,
                                 int max_cosets, int word_length, int max_elements) {
  DevelopBackend bk;
  bk.tag = "supplied-model";
  bk.model = load_group(j.at("model"), max_cosets).model;
  for (size_t s = 0; s < cog.complex.simplices.size(); ++s) {
    std::string name = simplex_name(cog.complex.simplices[s]);
    std::vector<Word> words;
    if (j.contains("local") && j.at("local").contains(name))
      for (const json& w : j.at("local").at(name)) words.push_back(w.get<Word>());
    if (static_cast<int>(words.size()) !=
        cog.groups[s].presentation.generator_count())
      throw std::invalid_argument("backend local images for simplex {" + name +
                                  "} must match its generator count");
    std::vector<Element> gens;
    for (const Word& w : words) {
      check_word(w, bk.model->generator_count());
      gens.push_back(bk.model->eval_word(w));
    }
    bk.local_gens.push_back(gens);
    bk.in_local.push_back(subgroup_predicate(bk.model, words, word_length, max_elements));
  }
  for (const auto& e : cog.scwol.edges) {
    std::string key = simplex_name(cog.complex.simplices[e.small]) + " -> " +
                      simplex_name(cog.complex.simplices[e.big]);
    Element elem = bk.model->identity();
    if (j.contains("edge") && j.at("edge").contains(key)) {
      Word w = j.at("edge").at(key).get<Word>();
      check_word(w, bk.model->generator_count());
      elem = bk.model->eval_word(w);
    }
    bk.edge_element.push_back(elem);
  }
  return bk;
}

MetricGraph development_graph(const SimpleComplexOfGroups& c, const DevelopBackend& bk,
                              const DevelopmentBall& d, std::vector<std::string>* labels) {
  auto table = std::dynamic_pointer_cast<const FiniteTableModel>(bk.model);
  MetricGraph g;
  for (size_t i = 0; i < d.simplices.size(); ++i) {
    const auto& s = d.simplices[i];
    std::string key = table ? coset_key(*table, bk.in_local[s.base], s.rep)
                            : bk.model->canonical_key(s.rep);
    std::string label = "(" + key + ":" + simplex_name(c.complex.simplices[s.base]) + ")";
    labels->push_back(label);
    g.add_vertex({LabelKind::group, label, 0});
  }
  for (size_t i = 0; i < d.adjacency.size(); ++i)
    for (int j : d.adjacency[i])
      if (static_cast<int>(i) < j) g.add_edge(static_cast<int>(i), j, 2);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"relhyp: finite-ball computations for relatively hyperbolic groups "
               "and complexes of groups"};
  app.require_subcommand(1);

  // shared state; each subcommand registers the flags it honors
  std::uint64_t seed = 0;
  int threads = default_thread_count();
  Output output;
  std::string group_path, graph_path, cog_path, pres_path, text_path;
  std::vector<std::string> peripheral_words, subgroup_words;
  std::string mode = "exhaustive", method = "slim", subset_spec;
  int radius = 2, depth = 1, samples = 1000, center = 0, acyl_k = 2, acyl_l = 8;
  int max_vertices = 200000, max_geodesics = 16, max_cosets = 2000, word_length = 8;
  int max_simplices = 20000, delta_max_vertices = 128;
  long long max_pairs = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed (default 0)");
    sub->add_option("--threads", threads, "worker threads (default $RELHYP_THREADS or 1)");
    sub->add_option("--out", output.out_path, "write the JSON report here instead of stdout");
  };
  auto add_dot = [&](CLI::App* sub) {
    sub->add_option("--dot", output.dot_path, "also write a DOT rendering of the graph");
  };

  CLI::App* cmd_ball = app.add_subcommand("ball", "Cayley ball of a group spec");
  cmd_ball->add_option("--group", group_path, "group spec JSON")->required();
  cmd_ball->add_option("--radius", radius, "ball radius (word metric)");
  cmd_ball->add_option("--max-vertices", max_vertices, "vertex budget");
  cmd_ball->add_option("--max-cosets", max_cosets, "coset budget for presentation models");
  add_common(cmd_ball);
  add_dot(cmd_ball);

  CLI::App* cmd_delta = app.add_subcommand("delta", "hyperbolicity constant of a graph");
  cmd_delta->add_option("--graph", graph_path, "graph JSON")->required();
  cmd_delta->add_option("--mode", mode, "exhaustive | sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  cmd_delta->add_option("--method", method, "slim | four_point")
      ->check(CLI::IsMember({"slim", "four_point"}));
  cmd_delta->add_option("--samples", samples, "sample count for sampled mode");
  cmd_delta->add_option("--max-vertices", delta_max_vertices, "exhaustive-mode vertex bound");
  add_common(cmd_delta);

  CLI::App* cmd_horoball = app.add_subcommand("horoball", "combinatorial horoball over a graph");
  cmd_horoball->add_option("--graph", graph_path, "base graph JSON")->required();
  cmd_horoball->add_option("--depth", depth, "horoball depth");
  cmd_horoball->add_option("--max-vertices", max_vertices, "vertex budget");
  add_common(cmd_horoball);
  add_dot(cmd_horoball);

  auto add_peripheral_opts = [&](CLI::App* sub) {
    sub->add_option("--group", group_path, "group spec JSON")->required();
    sub->add_option("--radius", radius, "ambient ball radius");
    sub->add_option("--peripheral", peripheral_words,
                    "peripheral subgroup generator word (repeatable, letters a..z)")
        ->required();
    sub->add_option("--max-vertices", max_vertices, "vertex budget");
    sub->add_option("--max-cosets", max_cosets, "coset budget for presentation models");
    sub->add_option("--word-length", word_length, "peripheral enumeration word length");
  };

  CLI::App* cmd_augment = app.add_subcommand("augment", "augmented (horoballed) Cayley ball");
  add_peripheral_opts(cmd_augment);
  cmd_augment->add_option("--depth", depth, "horoball depth");
  add_common(cmd_augment);
  add_dot(cmd_augment);

  CLI::App* cmd_coneoff = app.add_subcommand("coneoff", "coned-off Cayley ball");
  add_peripheral_opts(cmd_coneoff);
  add_common(cmd_coneoff);
  add_dot(cmd_coneoff);

  CLI::App* cmd_bcp = app.add_subcommand("bcp", "bounded coset penetration sweep (k = 1)");
  add_peripheral_opts(cmd_bcp);
  cmd_bcp->add_option("--max-pairs", max_pairs, "geodesic pair budget per chunk (-1 = all)");
  cmd_bcp->add_option("--max-geodesics", max_geodesics, "geodesics kept per endpoint pair");
  add_common(cmd_bcp);

  CLI::App* cmd_qc = app.add_subcommand("qc", "quasiconvexity constant of a vertex subset");
  cmd_qc->add_option("--graph", graph_path, "graph JSON")->required();
  cmd_qc->add_option("--subset", subset_spec, "comma-separated vertex ids")->required();
  add_common(cmd_qc);

  CLI::App* cmd_cog = app.add_subcommand("cog", "complex-of-groups operations");
  cmd_cog->require_subcommand(1);
  auto add_cog_common = [&](CLI::App* sub) {
    sub->add_option("--cog", cog_path, "complex-of-groups spec JSON")->required();
    sub->add_option("--max-cosets", max_cosets, "coset enumeration budget");
    add_common(sub);
  };
  CLI::App* cmd_cog_validate =
      cmd_cog->add_subcommand("validate", "check edge maps, compositions and injectivity");
  add_cog_common(cmd_cog_validate);
  CLI::App* cmd_cog_present =
      cmd_cog->add_subcommand("present", "compile the fundamental-group presentation");
  add_cog_common(cmd_cog_present);
  cmd_cog_present->add_option("--text", text_path, "also write a GAP-style text presentation");
  CLI::App* cmd_cog_develop =
      cmd_cog->add_subcommand("develop", "ball in the development (universal cover)");
  add_cog_common(cmd_cog_develop);
  cmd_cog_develop->add_option("--radius", radius, "ball radius in vertex-simplex steps");
  cmd_cog_develop->add_option("--center", center, "base vertex simplex of the center");
  cmd_cog_develop->add_option("--max-simplices", max_simplices, "simplex budget");
  add_dot(cmd_cog_develop);
  CLI::App* cmd_cog_acyl =
      cmd_cog->add_subcommand("acyl", "acylindricity evidence from stabilizer probes");
  add_cog_common(cmd_cog_acyl);
  cmd_cog_acyl->add_option("--radius", radius, "development ball radius");
  cmd_cog_acyl->add_option("--K", acyl_k, "minimal simplex distance probed");
  cmd_cog_acyl->add_option("--L", acyl_l, "fixer word-length budget");
  cmd_cog_acyl->add_option("--max-simplices", max_simplices, "simplex budget");

  CLI::App* cmd_tc = app.add_subcommand("tc", "Todd-Coxeter coset enumeration");
  cmd_tc->add_option("--presentation", pres_path, "presentation spec JSON")->required();
  cmd_tc->add_option("--subgroup", subgroup_words,
                     "subgroup generator word (repeatable, letters a..z)");
  cmd_tc->add_option("--max-cosets", max_cosets, "coset budget");
  add_common(cmd_tc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  int exit_code = 0;
  try {
    RunManifest manifest;
    manifest.seed = seed;
    json report;

    if (cmd_ball->parsed()) {
      manifest.command = "ball";
      manifest.add_input(group_path);
      manifest.budgets = {{"max_cosets", max_cosets}, {"max_vertices", max_vertices}};
      auto g = load_group(load_json_file(group_path), max_cosets);
      auto ball = cayley_ball(g.model, radius, max_vertices);
      report["radius"] = radius;
      report["vertices"] = ball.graph.vertex_count();
      report["edges"] = ball.graph.edge_count();
      report["graph"] = graph_to_json(ball.graph);
      emit_dot(output, ball.graph);
    } else if (cmd_delta->parsed()) {
      manifest.command = "delta";
      manifest.add_input(graph_path);
      manifest.budgets = {{"max_vertices", delta_max_vertices}, {"samples", samples}};
      MetricGraph g = graph_from_json(load_json_file(graph_path));
      DeltaPolicy policy;
      policy.mode = mode == "sampled" ? DeltaPolicy::Mode::sampled : DeltaPolicy::Mode::exhaustive;
      policy.seed = seed;
      policy.samples = samples;
      policy.max_vertices = delta_max_vertices;
      policy.threads = threads;
      DeltaReport r = method == "four_point" ? four_point_delta(g, policy) : slim_delta(g, policy);
      report = delta_report_json(r, method);
    } else if (cmd_horoball->parsed()) {
      manifest.command = "horoball";
      manifest.add_input(graph_path);
      manifest.budgets = {{"max_vertices", max_vertices}};
      MetricGraph base = graph_from_json(load_json_file(graph_path));
      if (static_cast<long long>(base.vertex_count()) * (depth + 1) > max_vertices)
        throw std::runtime_error("horoball vertex budget exceeded");
      Horoball h = build_horoball(base, depth);
      report["depth"] = depth;
      report["base_size"] = h.base_size;
      report["vertices"] = h.graph.vertex_count();
      report["edges"] = h.graph.edge_count();
      report["graph"] = graph_to_json(h.graph);
      emit_dot(output, h.graph);
    } else if (cmd_augment->parsed() || cmd_coneoff->parsed() || cmd_bcp->parsed()) {
      CLI::App* sub = cmd_augment->parsed() ? cmd_augment
                      : cmd_coneoff->parsed() ? cmd_coneoff
                                              : cmd_bcp;
      manifest.command = sub->get_name();
      manifest.add_input(group_path);
      manifest.budgets = {{"max_cosets", max_cosets},
                          {"max_vertices", max_vertices},
                          {"word_length", word_length}};
      auto g = load_group(load_json_file(group_path), max_cosets);
      auto ball = cayley_ball(g.model, radius, max_vertices);
      auto gens = parse_peripheral(peripheral_words);
      for (const Word& w : gens) check_word(w, g.model->generator_count());
      int enum_length = std::max(2 * radius + 4, word_length);
      auto pred = subgroup_predicate(g.model, gens, enum_length, max_vertices);
      auto cosets = enumerate_cosets(ball, pred);
      report["radius"] = radius;
      report["coset_count"] = static_cast<int>(cosets.size());
      if (cmd_augment->parsed()) {
        report["depth"] = depth;
        auto aug = build_augmented(ball.graph, cosets, depth, max_vertices);
        report["vertices"] = aug.graph.vertex_count();
        report["edges"] = aug.graph.edge_count();
        report["graph"] = graph_to_json(aug.graph);
        emit_dot(output, aug.graph);
      } else if (cmd_coneoff->parsed()) {
        auto coned = cone_off(ball.graph, cosets);
        report["vertices"] = coned.graph.vertex_count();
        report["edges"] = coned.graph.edge_count();
        int diameter = 0;
        for (int u = 0; u < coned.ambient_size; ++u) {
          auto d = coned.graph.distances_from(u);
          for (int v = 0; v < coned.ambient_size; ++v) diameter = std::max(diameter, d[v]);
        }
        report["group_vertex_diameter"] = diameter;
        report["graph"] = graph_to_json(coned.graph);
        emit_dot(output, coned.graph);
      } else {
        manifest.budgets["max_geodesics"] = max_geodesics;
        manifest.budgets["max_pairs"] = max_pairs;
        auto r = bcp_check(ball, cosets, max_pairs, static_cast<size_t>(max_geodesics), threads);
        report["k"] = 1;
        report["radius"] = r.radius;
        report["c_travel"] = r.c_travel;
        report["c_gap"] = r.c_gap;
        report["truncated"] = r.truncated;
        report["witnesses"] = json::array(
            {witness_json(r.travel_witness, "travel"), witness_json(r.gap_witness, "gap")});
      }
    } else if (cmd_qc->parsed()) {
      manifest.command = "qc";
      manifest.add_input(graph_path);
      manifest.budgets = json::object();
      MetricGraph g = graph_from_json(load_json_file(graph_path));
      std::vector<int> subset;
      std::stringstream ss(subset_spec);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) subset.push_back(std::stoi(tok));
      auto r = quasiconvexity_constant(g, subset);
      report["constant"] = r.constant;
      report["witness_pair"] = r.witness_pair;
      report["witness_point"] = r.witness_point;
      report["lower_bound_only"] = r.lower_bound_only;
    } else if (cmd_cog->parsed()) {
      manifest.add_input(cog_path);
      manifest.budgets = {{"max_cosets", max_cosets}};
      json cog_json = load_json_file(cog_path);
      auto cog = cog_from_json(cog_json, max_cosets);
      auto make_backend = [&]() {
        if (cog_json.contains("backend"))
          return backend_from_json(cog, cog_json.at("backend"), max_cosets,
                                   std::max(2 * radius + 4, word_length), max_vertices);
        return coset_table_backend(cog, max_cosets);
      };
      if (cmd_cog_validate->parsed()) {
        manifest.command = "cog validate";
        auto v = validate_cog(cog, max_cosets);
        report["ok"] = v.ok();
        report["violations"] = violations_json(v);
        report["warnings"] = v.warnings;
      } else if (cmd_cog_present->parsed()) {
        manifest.command = "cog present";
        auto compiled = fundamental_presentation(cog);
        auto simplified = tietze_simplify(compiled.presentation);
        report["presentation"] = presentation_json(compiled.presentation);
        report["tree"] = compiled.tree;
        report["simplified"] = presentation_json(simplified);
        report["gap"] = gap_presentation(simplified);
        if (!text_path.empty()) write_file(text_path, gap_presentation(simplified) + "\n");
      } else if (cmd_cog_develop->parsed()) {
        manifest.command = "cog develop";
        manifest.budgets["max_simplices"] = max_simplices;
        auto bk = make_backend();
        auto d = develop(cog, bk, radius, center, max_simplices);
        std::vector<std::string> labels;
        MetricGraph dg = development_graph(cog, bk, d, &labels);
        report["radius"] = radius;
        report["backend"] = d.backend_tag;
        report["simplex_count"] = static_cast<int>(d.simplices.size());
        int vertex_simplices = 0;
        json simplices = json::array();
        for (size_t i = 0; i < d.simplices.size(); ++i) {
          if (cog.complex.simplices[d.simplices[i].base].size() == 1) ++vertex_simplices;
          simplices.push_back({{"id", static_cast<int>(i)},
                               {"label", labels[i]},
                               {"base", d.simplices[i].base},
                               {"distance", d.vertex_distance[i]}});
        }
        report["vertex_simplex_count"] = vertex_simplices;
        report["simplices"] = simplices;
        if (cog.complex.dimension() <= 1) report["acyclic"] = acyclicity_check(cog.complex, d);
        report["graph"] = graph_to_json(dg);
        emit_dot(output, dg);
      } else {
        manifest.command = "cog acyl";
        manifest.budgets["max_simplices"] = max_simplices;
        auto bk = make_backend();
        auto d = develop(cog, bk, radius, 0, max_simplices);
        auto r = acylindricity_report(cog, bk, d, acyl_k, acyl_l);
        report["acylindrical_evidence"] = r.acylindrical_evidence;
        report["K"] = r.K;
        report["L"] = r.L;
        report["max_fixer_count"] = r.max_fixer_count;
        report["note"] = r.note;
        json witnesses = json::array();
        for (const auto& p : r.witnesses)
          witnesses.push_back({{"s1", p.s1},
                               {"s2", p.s2},
                               {"distance", p.distance},
                               {"fixer_count", static_cast<int>(p.fixers.size())},
                               {"growth", p.growth}});
        report["witnesses"] = witnesses;
      }
    } else if (cmd_tc->parsed()) {
      manifest.command = "tc";
      manifest.add_input(pres_path);
      manifest.budgets = {{"max_cosets", max_cosets}};
      Presentation p = presentation_from_json(load_json_file(pres_path));
      std::vector<Word> subgroup;
      for (const std::string& s : subgroup_words) {
        Word w = parse_word(s);
        check_word(w, p.generator_count());
        subgroup.push_back(w);
      }
      auto table = todd_coxeter(p, subgroup, max_cosets);
      report["cosets"] = table.coset_count();
      report["status"] =
          table.status == TableStatus::complete ? "complete" : "budget_exhausted";
      report["generator_count"] = table.generator_count;
      if (table.status != TableStatus::complete) exit_code = 3;
    }

    report["manifest"] = manifest.to_json();
    emit(output, report);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  }

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::fprintf(stderr, "wall_time_ms=%lld\n", static_cast<long long>(ms));
  return exit_code;
}
