#ifndef RELHYP_COMPLEX_HPP
#define RELHYP_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/coset_enum.hpp"
#include "relhyp/group.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/word.hpp"

namespace relhyp {

// Finite simplicial complex; simplices stored as sorted vertex sets, closed
// under faces, in (dimension, lex) order.
struct SimplicialComplex {
  int vertex_count = 0;
  std::vector<std::vector<int>> simplices;

  int simplex_index(const std::vector<int>& s) const {
    auto it = std::lower_bound(simplices.begin(), simplices.end(), s, less);
    if (it == simplices.end() || *it != s) return -1;
    return static_cast<int>(it - simplices.begin());
  }

  int dimension() const {
    size_t d = 0;
    for (const auto& s : simplices) d = std::max(d, s.size());
    return static_cast<int>(d) - 1;
  }

  static bool less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Builds the face closure of the given maximal simplices.
inline SimplicialComplex make_complex(int vertex_count,
                                      const std::vector<std::vector<int>>& simplices,
                                      int max_dimension = 8) {
  SimplicialComplex out;
  out.vertex_count = vertex_count;
  std::set<std::vector<int>> seen;
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::unique(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("simplex repeats a vertex");
    if (s.empty()) throw std::invalid_argument("empty simplex");
    if (static_cast<int>(s.size()) > max_dimension + 1)
      throw std::invalid_argument("simplex dimension exceeds bound");
    for (int v : s)
      if (v < 0 || v >= vertex_count) throw std::invalid_argument("simplex vertex out of range");
    // all nonempty subsets
    const int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> face;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) face.push_back(s[i]);
      seen.insert(face);
    }
  }
  out.simplices.assign(seen.begin(), seen.end());
  std::sort(out.simplices.begin(), out.simplices.end(), SimplicialComplex::less);
  return out;
}

// Scwol of the barycentric subdivision: one object per simplex, one directed
// edge [small, big] per strict face inclusion.
struct ScwolEdge {
  int small = 0, big = 0;
};

struct Scwol {
  int object_count = 0;
  std::vector<ScwolEdge> edges;                 // (small, big) lex order
  std::vector<std::pair<int, int>> composable;  // (index of [s,m], index of [m,b])

  int edge_index(int small, int big) const {
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i].small == small && edges[i].big == big) return static_cast<int>(i);
    return -1;
  }
};

inline bool is_strict_face(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Scwol build_scwol(const SimplicialComplex& y) {
  Scwol s;
  s.object_count = static_cast<int>(y.simplices.size());
  for (int a = 0; a < s.object_count; ++a)
    for (int b = 0; b < s.object_count; ++b)
      if (is_strict_face(y.simplices[a], y.simplices[b])) s.edges.push_back({a, b});
  std::sort(s.edges.begin(), s.edges.end(), [](const ScwolEdge& a, const ScwolEdge& b) {
    return std::pair(a.small, a.big) < std::pair(b.small, b.big);
  });
  for (size_t i = 0; i < s.edges.size(); ++i)
    for (size_t j = 0; j < s.edges.size(); ++j)
      if (s.edges[i].big == s.edges[j].small) s.composable.push_back({static_cast<int>(i),
                                                                      static_cast<int>(j)});
  return s;
}

// Local data attached to a simplex: always a presentation, optionally a
// concrete model for exact arithmetic.
struct LocalGroup {
  Presentation presentation;
  GroupModelPtr model;  // may be null
};

struct SimpleComplexOfGroups {
  SimplicialComplex complex;
  Scwol scwol;
  std::vector<LocalGroup> groups;  // by simplex index
  // edge index -> image word per generator of the big simplex's group,
  // written over the small simplex's generators
  std::vector<std::vector<Word>> maps;
};

inline SimpleComplexOfGroups make_cog(SimplicialComplex y, std::vector<LocalGroup> groups,
                                      std::map<std::pair<int, int>, std::vector<Word>> maps) {
  SimpleComplexOfGroups c;
  c.complex = std::move(y);
  c.scwol = build_scwol(c.complex);
  if (static_cast<int>(groups.size()) != c.scwol.object_count)
    throw std::invalid_argument("one local group per simplex required");
  c.groups = std::move(groups);
  for (const auto& g : c.groups) g.presentation.validate();
  c.maps.resize(c.scwol.edges.size());
  for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
    auto key = std::pair(c.scwol.edges[e].small, c.scwol.edges[e].big);
    auto it = maps.find(key);
    const int arity = c.groups[c.scwol.edges[e].big].presentation.generator_count();
    if (it == maps.end()) {
      if (arity != 0) throw std::invalid_argument("missing edge map");
      continue;
    }
    if (static_cast<int>(it->second.size()) != arity)
      throw std::invalid_argument("edge map arity mismatch");
    for (const Word& w : it->second)
      check_word(w, c.groups[c.scwol.edges[e].small].presentation.generator_count());
    c.maps[e] = it->second;
    maps.erase(it);
  }
  if (!maps.empty()) throw std::invalid_argument("edge map given for a non-edge");
  return c;
}

// Image of a word of the big group under an edge map.
inline Word map_word(const SimpleComplexOfGroups& c, int edge, const Word& w) {
  Word out;
  for (int x : w) {
    const Word& img = c.maps[edge][std::abs(x) - 1];
    Word part = x > 0 ? img : inverse_word(img);
    out.insert(out.end(), part.begin(), part.end());
  }
  return free_reduce(out);
}

enum class Tri { yes, no, unknown };

// Identity test in a local group: by model when present, else by a bounded
// coset enumeration over its presentation.
inline Tri word_is_identity(const LocalGroup& g, const Word& w, int tc_budget = 4000) {
  if (g.model) {
    Element e = g.model->eval_word(w);
    return g.model->equal(e, g.model->identity()) ? Tri::yes : Tri::no;
  }
  if (free_reduce(w).empty()) return Tri::yes;
  if (g.presentation.generator_count() == 0) return Tri::yes;
  auto table = todd_coxeter(g.presentation, {}, tc_budget);
  if (table.status != TableStatus::complete) return Tri::unknown;
  return table.trace(1, w) == 1 ? Tri::yes : Tri::no;
}

struct CogViolation {
  std::string kind;  // "relator-image" | "composition" | "injectivity"
  std::vector<int> chain;  // simplices involved, small to big
  std::string detail;
};

struct CogValidation {
  std::vector<CogViolation> violations;
  std::vector<std::string> warnings;  // checks skipped at budget
  bool ok() const { return violations.empty(); }
};

inline CogValidation validate_cog(const SimpleComplexOfGroups& c, int tc_budget = 4000) {
  CogValidation out;
  auto name = [&](int s) {
    std::string n = "{";
    for (size_t i = 0; i < c.complex.simplices[s].size(); ++i)
      n += (i ? "," : "") + std::to_string(c.complex.simplices[s][i]);
    return n + "}";
  };
  // relator images die in the target
  for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
    int small = c.scwol.edges[e].small, big = c.scwol.edges[e].big;
    for (const Word& r : c.groups[big].presentation.relators) {
      Tri t = word_is_identity(c.groups[small], map_word(c, static_cast<int>(e), r), tc_budget);
      if (t == Tri::no)
        out.violations.push_back({"relator-image", {small, big},
                                  "image of relator " + format_word(r) + " is nontrivial in " +
                                      name(small)});
      else if (t == Tri::unknown)
        out.warnings.push_back("relator image check skipped for " + name(small) + " <- " +
                               name(big) + " (no model, enumeration budget)");
    }
  }
  // composition on every composable pair
  for (auto [e1, e2] : c.scwol.composable) {
    int small = c.scwol.edges[e1].small;
    int mid = c.scwol.edges[e1].big;
    int big = c.scwol.edges[e2].big;
    int direct = c.scwol.edge_index(small, big);
    if (direct < 0) {
      out.violations.push_back({"composition", {small, mid, big}, "missing composed edge"});
      continue;
    }
    const int arity = c.groups[big].presentation.generator_count();
    for (int g = 1; g <= arity; ++g) {
      Word via = map_word(c, e1, map_word(c, e2, {g}));
      Word straight = map_word(c, direct, {g});
      Word diff = free_reduce(concat(straight, inverse_word(via)));
      Tri t = word_is_identity(c.groups[small], diff, tc_budget);
      if (t == Tri::no)
        out.violations.push_back({"composition", {small, mid, big},
                                  "generator " + std::to_string(g) + ": " +
                                      format_word(straight) + " != " + format_word(via)});
      else if (t == Tri::unknown)
        out.warnings.push_back("composition check skipped for chain " + name(small) + " <- " +
                               name(mid) + " <- " + name(big));
    }
  }
  // injectivity: exact when both ends carry models and the source is finite
  // by enumeration; otherwise sampled over short words of the source
  for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
    int small = c.scwol.edges[e].small, big = c.scwol.edges[e].big;
    const auto& src = c.groups[big];
    const int arity = src.presentation.generator_count();
    if (arity == 0) continue;
    // kernel sampling: short nontrivial source words must not map to 1
    std::set<Word> frontier{{}};
    std::vector<Word> all;
    for (int len = 0; len < 4; ++len) {
      std::set<Word> next;
      for (const Word& w : frontier) {
        all.push_back(w);
        for (int g = 1; g <= arity; ++g)
          for (int s : {g, -g}) {
            Word v = free_reduce(concat(w, {s}));
            if (static_cast<int>(v.size()) == len + 1) next.insert(v);
          }
      }
      frontier = next;
    }
    for (const Word& w : all) {
      if (w.empty()) continue;
      Tri nontrivial_in_src = word_is_identity(src, w, tc_budget);
      if (nontrivial_in_src != Tri::no) continue;  // trivial or unknown in source
      Tri image_trivial = word_is_identity(c.groups[small], map_word(c, static_cast<int>(e), w),
                                           tc_budget);
      if (image_trivial == Tri::yes)
        out.violations.push_back({"injectivity", {small, big},
                                  "nontrivial word " + format_word(w) + " maps to identity"});
    }
  }
  return out;
}

// Deterministic spanning tree of the scwol 1-skeleton: breadth-first from
// the least object id, undirected, neighbors scanned in edge order.
inline std::vector<int> maximal_tree(const Scwol& s) {
  if (s.object_count == 0) return {};
  std::vector<int> tree;
  std::vector<bool> seen(s.object_count, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (size_t e = 0; e < s.edges.size(); ++e) {
      int other = -1;
      if (s.edges[e].small == v) other = s.edges[e].big;
      if (s.edges[e].big == v) other = s.edges[e].small;
      if (other < 0 || seen[other]) continue;
      seen[other] = true;
      tree.push_back(static_cast<int>(e));
      queue.push_back(other);
    }
  }
  if (static_cast<int>(queue.size()) != s.object_count)
    throw std::invalid_argument("scwol 1-skeleton is disconnected");
  std::sort(tree.begin(), tree.end());
  return tree;
}

struct GeneratorProvenance {
  enum class Kind { local, edge } kind = Kind::local;
  int simplex = -1;   // for local generators
  int local_index = -1;
  int edge = -1;      // for edge generators a+
};

struct CompiledPresentation {
  Presentation presentation;
  std::vector<GeneratorProvenance> provenance;  // by generator
  std::vector<int> tree;                        // edge indices
  std::vector<int> local_base;  // first global letter (1-based) per simplex
  std::vector<int> edge_letter; // global letter of a+ per edge
};

// Raw fundamental-group presentation: local relators, one composition
// relation per composable pair, one conjugation relation per edge generator
// pair, and a+ = 1 for tree edges. a- never appears: it is emitted as the
// formal inverse of a+.
inline CompiledPresentation fundamental_presentation(const SimpleComplexOfGroups& c,
                                                     const std::vector<int>& tree) {
  CompiledPresentation out;
  out.tree = tree;
  std::vector<bool> in_tree(c.scwol.edges.size(), false);
  for (int e : tree) {
    if (e < 0 || e >= static_cast<int>(c.scwol.edges.size()))
      throw std::invalid_argument("tree edge out of range");
    in_tree[e] = true;
  }
  // generators: local groups in simplex order, then edge generators
  for (int s = 0; s < c.scwol.object_count; ++s) {
    out.local_base.push_back(out.presentation.generator_count() + 1);
    const auto& p = c.groups[s].presentation;
    for (int i = 0; i < p.generator_count(); ++i) {
      out.presentation.generator_names.push_back(p.generator_names[i] + "." +
                                                 std::to_string(s));
      out.provenance.push_back({GeneratorProvenance::Kind::local, s, i, -1});
    }
  }
  for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
    out.edge_letter.push_back(out.presentation.generator_count() + 1);
    out.presentation.generator_names.push_back("a" + std::to_string(c.scwol.edges[e].small) +
                                               "_" + std::to_string(c.scwol.edges[e].big));
    out.provenance.push_back({GeneratorProvenance::Kind::edge, -1, -1, static_cast<int>(e)});
  }
  auto lift = [&](int simplex, const Word& w) {
    Word out_w;
    for (int x : w) {
      int letter = out.local_base[simplex] + std::abs(x) - 1;
      out_w.push_back(x > 0 ? letter : -letter);
    }
    return out_w;
  };
  auto& rel = out.presentation.relators;
  // (1) local relators
  for (int s = 0; s < c.scwol.object_count; ++s)
    for (const Word& r : c.groups[s].presentation.relators) rel.push_back(lift(s, r));
  // (3) (ab)+ = a+ b+ per composable pair
  for (auto [e1, e2] : c.scwol.composable) {
    int direct = c.scwol.edge_index(c.scwol.edges[e1].small, c.scwol.edges[e2].big);
    if (direct < 0) throw std::invalid_argument("scwol not closed under composition");
    rel.push_back(free_reduce({out.edge_letter[direct], -out.edge_letter[e2],
                               -out.edge_letter[e1]}));
  }
  // (4) a+ g a- = phi_a(g) per edge and source generator
  for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
    int small = c.scwol.edges[e].small, big = c.scwol.edges[e].big;
    for (int g = 1; g <= c.groups[big].presentation.generator_count(); ++g) {
      Word w{out.edge_letter[e]};
      w.push_back(out.local_base[big] + g - 1);
      w.push_back(-out.edge_letter[e]);
      Word img = lift(small, map_word(c, static_cast<int>(e), {g}));
      w = concat(w, inverse_word(img));
      rel.push_back(free_reduce(w));
    }
  }
  // (5) tree edges die
  for (int e : tree) rel.push_back({out.edge_letter[e]});
  // strip relators that reduced to nothing, keeping the count bookkeeping
  // honest: emitted count equals the formula in callers' checks
  return out;
}

inline CompiledPresentation fundamental_presentation(const SimpleComplexOfGroups& c) {
  return fundamental_presentation(c, maximal_tree(c.scwol));
}

// Sound Tietze moves only: drop trivial relators, kill generators pinned by
// length-1 relators, substitute generators occurring exactly once in some
// relator. Budget counts applied moves.
inline Presentation tietze_simplify(const Presentation& p0, int budget = 1000) {
  Presentation p = p0;
  auto cleanup = [&]() {
    std::vector<Word> keep;
    for (Word& r : p.relators) {
      r = cyclic_reduce(free_reduce(r));
      if (!r.empty()) keep.push_back(r);
    }
    std::sort(keep.begin(), keep.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    p.relators = keep;
  };
  auto remove_generator = [&](int g, const Word& replacement) {
    // replacement written over the old numbering, not containing g
    for (Word& r : p.relators) {
      Word out;
      for (int x : r) {
        if (std::abs(x) == g) {
          Word part = x > 0 ? replacement : inverse_word(replacement);
          out.insert(out.end(), part.begin(), part.end());
        } else {
          out.push_back(x);
        }
      }
      r = out;
    }
    // renumber letters above g
    p.generator_names.erase(p.generator_names.begin() + (g - 1));
    for (Word& r : p.relators)
      for (int& x : r) {
        if (x > g) --x;
        if (x < -g) ++x;
      }
  };
  cleanup();
  int moves = 0;
  bool progress = true;
  while (progress && moves < budget) {
    progress = false;
    // kill generators pinned to the identity
    for (const Word& r : p.relators) {
      if (r.size() != 1) continue;
      remove_generator(std::abs(r[0]), {});
      cleanup();
      ++moves;
      progress = true;
      break;
    }
    if (progress) continue;
    // substitute a generator isolated in some relator
    for (size_t ri = 0; ri < p.relators.size() && !progress; ++ri) {
      const Word& r = p.relators[ri];
      for (size_t i = 0; i < r.size(); ++i) {
        int g = std::abs(r[i]);
        int occurrences = 0;
        for (int x : r) occurrences += std::abs(x) == g;
        if (occurrences != 1) continue;
        // r = u g^s v = 1  =>  g^s = u^-1 v^-1, g = (u^-1 v^-1)^s
        Word u(r.begin(), r.begin() + i);
        Word v(r.begin() + i + 1, r.end());
        Word repl = free_reduce(concat(inverse_word(u), inverse_word(v)));
        if (r[i] < 0) repl = inverse_word(repl);
        p.relators.erase(p.relators.begin() + ri);
        remove_generator(g, repl);
        cleanup();
        ++moves;
        progress = true;
        break;
      }
    }
  }
  return p;
}

}  // namespace relhyp

#endif
