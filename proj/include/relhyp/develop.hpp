#ifndef RELHYP_DEVELOP_HPP
#define RELHYP_DEVELOP_HPP

#include <algorithm>
#include <map>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/augmented.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/complex.hpp"
#include "relhyp/group.hpp"
#include "relhyp/models.hpp"

namespace relhyp {

// Backend data for developing a complex of groups: arithmetic for the
// fundamental group plus, per simplex, the image subgroup iota(G_sigma).
struct DevelopBackend {
  std::string tag;  // "coset-table" | "supplied-model"
  GroupModelPtr model;
  std::vector<MembershipPredicate> in_local;     // by simplex
  std::vector<std::vector<Element>> local_gens;  // by simplex, embedded generators
  std::vector<Element> edge_element;             // by scwol edge, iota(a+)
};

// Finite-pi1 backend: coset enumeration over the compiled presentation.
inline DevelopBackend coset_table_backend(const SimpleComplexOfGroups& c, int max_cosets = 4000) {
  auto compiled = fundamental_presentation(c);
  auto table = todd_coxeter(compiled.presentation, {}, max_cosets);
  if (table.status != TableStatus::complete)
    throw std::runtime_error("fundamental group enumeration exceeded its budget");
  auto model = model_from_table(table, compiled.presentation.generator_names);
  DevelopBackend bk;
  bk.tag = "coset-table";
  bk.model = model;
  for (int s = 0; s < c.scwol.object_count; ++s) {
    std::vector<Element> gens;
    std::vector<int> seed;
    for (int i = 0; i < c.groups[s].presentation.generator_count(); ++i) {
      Element e = model->generator(compiled.local_base[s] + i - 1);
      gens.push_back(e);
      seed.push_back(static_cast<int>(e[0]));
    }
    auto in = model->subgroup_closure(seed);
    bk.in_local.push_back([in](const Element& x) { return in[static_cast<size_t>(x[0])]; });
    bk.local_gens.push_back(gens);
  }
  for (size_t e = 0; e < c.scwol.edges.size(); ++e)
    bk.edge_element.push_back(model->generator(compiled.edge_letter[e] - 1));
  return bk;
}

struct DevSimplex {
  Element rep;
  int base = 0;  // simplex index in the base complex
};

struct DevelopmentBall {
  std::vector<DevSimplex> simplices;
  std::vector<std::vector<int>> adjacency;  // incidence graph over all simplices
  std::vector<int> vertex_distance;         // BFS distance for vertex simplices, else -1
  int radius = 0;
  int center = 0;  // base vertex simplex of the center
  std::string backend_tag;

  int base_dim(const SimplicialComplex& y, int i) const {
    return static_cast<int>(y.simplices[simplices[i].base].size()) - 1;
  }
};

// Ball in the universal cover: vertex simplices within `radius` steps of the
// identity coset over `center` (two vertex simplices a step apart when they
// bound a common edge simplex), plus every higher simplex all of whose
// vertices lie in the ball.
inline DevelopmentBall develop(const SimpleComplexOfGroups& c, const DevelopBackend& bk,
                               int radius, int center = 0, int max_simplices = 20000) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  if (c.complex.simplices.empty()) throw std::invalid_argument("empty base complex");
  if (c.complex.simplices[center].size() != 1)
    throw std::invalid_argument("center must be a vertex simplex");
  if (static_cast<int>(bk.in_local.size()) != c.scwol.object_count ||
      static_cast<int>(bk.edge_element.size()) != c.scwol.edges.size())
    throw std::invalid_argument("backend does not match the complex");
  const GroupModel& m = *bk.model;

  DevelopmentBall out;
  out.radius = radius;
  out.center = center;
  out.backend_tag = bk.tag;

  auto same_coset = [&](int base, const Element& a, const Element& b) {
    return bk.in_local[base](m.multiply(m.inverse(a), b));
  };
  auto find = [&](int base, const Element& rep) {
    for (size_t i = 0; i < out.simplices.size(); ++i)
      if (out.simplices[i].base == base && same_coset(base, out.simplices[i].rep, rep))
        return static_cast<int>(i);
    return -1;
  };
  auto add = [&](int base, const Element& rep) {
    if (static_cast<int>(out.simplices.size()) >= max_simplices)
      throw std::runtime_error("development simplex budget exceeded");
    out.simplices.push_back({rep, base});
    out.vertex_distance.push_back(-1);
    return static_cast<int>(out.simplices.size()) - 1;
  };

  // cofaces of (g, small) across scwol edge e: cosets (g t iota(a), big)
  // for t in the local group at `small`
  auto cofaces = [&](const Element& g, int edge) {
    int small = c.scwol.edges[edge].small, big = c.scwol.edges[edge].big;
    std::vector<Element> reps{m.multiply(g, bk.edge_element[edge])};
    std::vector<Element> shifts;
    for (const Element& s : bk.local_gens[small]) {
      shifts.push_back(m.multiply(m.multiply(g, s), m.inverse(g)));
      shifts.push_back(m.multiply(m.multiply(g, m.inverse(s)), m.inverse(g)));
    }
    for (size_t i = 0; i < reps.size(); ++i) {
      if (reps.size() > 64) throw std::runtime_error("coface orbit budget exceeded");
      for (const Element& s : shifts) {
        Element cand = m.multiply(s, reps[i]);
        bool known = false;
        for (const Element& r : reps)
          if (bk.in_local[big](m.multiply(m.inverse(r), cand))) known = true;
        if (!known) reps.push_back(cand);
      }
    }
    return reps;
  };
  auto face_rep = [&](const Element& h, int edge) {
    return m.multiply(h, m.inverse(bk.edge_element[edge]));
  };

  // breadth-first over vertex simplices through shared edge simplices
  int start = add(center, m.identity());
  out.vertex_distance[start] = 0;
  std::vector<int> queue{start};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int cur = queue[qi];
    int dist = out.vertex_distance[cur];
    if (dist == radius) continue;
    for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
      if (c.scwol.edges[e].small != out.simplices[cur].base) continue;
      if (c.complex.simplices[c.scwol.edges[e].big].size() != 2) continue;
      for (const Element& h : cofaces(out.simplices[cur].rep, static_cast<int>(e))) {
        for (size_t e2 = 0; e2 < c.scwol.edges.size(); ++e2) {
          if (c.scwol.edges[e2].big != c.scwol.edges[e].big) continue;
          if (c.complex.simplices[c.scwol.edges[e2].small].size() != 1) continue;
          Element v = face_rep(h, static_cast<int>(e2));
          int small = c.scwol.edges[e2].small;
          if (find(small, v) >= 0) continue;
          int id = add(small, v);
          out.vertex_distance[id] = dist + 1;
          queue.push_back(id);
        }
      }
    }
  }

  // higher simplices spanned by the ball
  const int vertex_count = static_cast<int>(out.simplices.size());
  for (int vi = 0; vi < vertex_count; ++vi) {
    for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
      if (c.scwol.edges[e].small != out.simplices[vi].base) continue;
      if (c.complex.simplices[c.scwol.edges[e].small].size() != 1) continue;
      for (const Element& h : cofaces(out.simplices[vi].rep, static_cast<int>(e))) {
        int big = c.scwol.edges[e].big;
        bool spanned = true;
        for (size_t e2 = 0; e2 < c.scwol.edges.size() && spanned; ++e2) {
          if (c.scwol.edges[e2].big != big) continue;
          if (c.complex.simplices[c.scwol.edges[e2].small].size() != 1) continue;
          if (find(c.scwol.edges[e2].small, face_rep(h, static_cast<int>(e2))) < 0)
            spanned = false;
        }
        if (spanned && find(big, h) < 0) add(big, h);
      }
    }
  }

  // incidence adjacency between every simplex and its present faces
  out.adjacency.assign(out.simplices.size(), {});
  for (size_t i = 0; i < out.simplices.size(); ++i) {
    for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
      if (c.scwol.edges[e].big != out.simplices[i].base) continue;
      int f = find(c.scwol.edges[e].small, face_rep(out.simplices[i].rep, static_cast<int>(e)));
      if (f < 0) continue;
      out.adjacency[i].push_back(f);
      out.adjacency[f].push_back(static_cast<int>(i));
    }
  }
  for (auto& row : out.adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return out;
}

inline std::vector<int> development_distances(const DevelopmentBall& d, int from) {
  std::vector<int> dist(d.simplices.size(), -1);
  dist[from] = 0;
  std::vector<int> queue{from};
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (int n : d.adjacency[queue[qi]])
      if (dist[n] < 0) {
        dist[n] = dist[queue[qi]] + 1;
        queue.push_back(n);
      }
  return dist;
}

// Sanity oracle for one-dimensional bases: the incidence graph of the
// development must be a forest.
inline bool acyclicity_check(const SimplicialComplex& y, const DevelopmentBall& d) {
  for (const auto& s : d.simplices)
    if (y.simplices[s.base].size() > 2)
      throw std::invalid_argument("acyclicity check requires a 1-dimensional base");
  // union-find over incidence edges
  std::vector<int> parent(d.simplices.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < d.adjacency.size(); ++i)
    for (int j : d.adjacency[i]) {
      if (static_cast<int>(i) >= j) continue;
      int a = root(static_cast<int>(i)), b = root(j);
      if (a == b) return false;
      parent[a] = b;
    }
  return true;
}

struct StabilizerProbe {
  int s1 = 0, s2 = 0;
  int distance = 0;                // incidence-graph steps
  std::vector<Element> fixers;     // up to word length L
  std::vector<int> growth;        // fixer count per word length 1..L
};

namespace detail {

// g fixes a simplex pointwise when it fixes the simplex and each of its
// present vertex faces
inline bool fixes_pointwise(const SimpleComplexOfGroups& c, const DevelopBackend& bk,
                            const DevelopmentBall& d, const Element& g, int simplex) {
  const GroupModel& m = *bk.model;
  auto fixes = [&](const Element& h, int base) {
    return bk.in_local[base](m.multiply(m.inverse(h), m.multiply(g, h)));
  };
  const auto& s = d.simplices[simplex];
  if (!fixes(s.rep, s.base)) return false;
  for (size_t e = 0; e < c.scwol.edges.size(); ++e) {
    if (c.scwol.edges[e].big != s.base) continue;
    if (c.complex.simplices[c.scwol.edges[e].small].size() != 1) continue;
    Element f = m.multiply(s.rep, m.inverse(bk.edge_element[e]));
    if (!fixes(f, c.scwol.edges[e].small)) return false;
  }
  return true;
}

}  // namespace detail

inline StabilizerProbe stabilizer_probe(const SimpleComplexOfGroups& c, const DevelopBackend& bk,
                                        const DevelopmentBall& d, int s1, int s2, int L,
                                        int max_elements = 200000) {
  if (L < 1) throw std::invalid_argument("word length budget must be >= 1");
  StabilizerProbe probe;
  probe.s1 = s1;
  probe.s2 = s2;
  probe.distance = development_distances(d, s1)[s2];
  auto ball = cayley_ball(bk.model, L, max_elements);
  probe.growth.assign(L, 0);
  for (size_t i = 0; i < ball.elements.size(); ++i) {
    const Element& g = ball.elements[i];
    if (!detail::fixes_pointwise(c, bk, d, g, s1)) continue;
    if (!detail::fixes_pointwise(c, bk, d, g, s2)) continue;
    probe.fixers.push_back(g);
    for (int l = std::max(ball.word_length[i], 1); l <= L; ++l) ++probe.growth[l - 1];
  }
  return probe;
}

struct AcylindricityReport {
  bool acylindrical_evidence = true;
  int K = 0, L = 0;
  int max_fixer_count = 0;
  std::vector<StabilizerProbe> witnesses;
  std::string note =
      "evidence at enumeration budget, not a theorem; distances are combinatorial "
      "incidence-graph distances, not the CAT(0) metric";
};

inline AcylindricityReport acylindricity_report(const SimpleComplexOfGroups& c,
                                                const DevelopBackend& bk,
                                                const DevelopmentBall& d, int K, int L) {
  AcylindricityReport rep;
  rep.K = K;
  rep.L = L;
  const int n = static_cast<int>(d.simplices.size());
  for (int i = 0; i < n; ++i) {
    auto dist = development_distances(d, i);
    for (int j = i; j < n; ++j) {
      if (dist[j] < K) continue;
      auto probe = stabilizer_probe(c, bk, d, i, j, L);
      bool increasing = L >= 2 && probe.growth[L - 1] > probe.growth[L - 2];
      if (increasing) {
        if (rep.acylindrical_evidence) rep.witnesses.clear();
        rep.acylindrical_evidence = false;
        if (rep.witnesses.empty()) rep.witnesses.push_back(probe);
      } else if (rep.acylindrical_evidence) {
        int count = static_cast<int>(probe.fixers.size());
        if (count > rep.max_fixer_count) {
          rep.max_fixer_count = count;
          rep.witnesses = {probe};
        }
      }
    }
  }
  return rep;
}

// Conjugate-intersection profile of coset families, up to common left
// translation. A family is fat when the pointwise intersection of the
// conjugates g_k H g_k^-1, within the ball, stays above the threshold.
struct CosetFamily {
  std::vector<int> cosets;  // indices into the coset list
  long long intersection_size = 0;
  std::vector<long long> growth;  // intersection size per word length 1..radius
  bool flat = false;
};

struct FatFamilyReport {
  std::vector<CosetFamily> families;  // canonicalized, deterministic order
  int threshold = 0;
  int radius = 0;
};

inline FatFamilyReport fat_coset_families(const CayleyBall& ball,
                                          const std::vector<CosetRecord>& cosets,
                                          const MembershipPredicate& peripheral, int threshold) {
  const GroupModel& m = *ball.model;
  const int n = static_cast<int>(ball.elements.size());
  FatFamilyReport rep;
  rep.threshold = threshold;
  rep.radius = ball.radius;

  // conjugate membership per coset: x in g_i H g_i^-1
  std::vector<Element> reps;
  for (const auto& c : cosets) {
    auto it = ball.by_key.find(c.representative_key);
    if (it == ball.by_key.end()) throw std::invalid_argument("coset representative not in ball");
    reps.push_back(ball.elements[it->second]);
  }
  auto in_conj = [&](size_t ci, const Element& x) {
    return peripheral(m.multiply(m.multiply(m.inverse(reps[ci]), x), reps[ci]));
  };
  std::vector<std::vector<bool>> member(cosets.size(), std::vector<bool>(n, false));
  for (size_t ci = 0; ci < cosets.size(); ++ci)
    for (int v = 0; v < n; ++v) member[ci][v] = in_conj(ci, ball.elements[v]);

  auto intersection_count = [&](const std::vector<int>& family, int max_len) {
    long long count = 0;
    for (int v = 0; v < n; ++v) {
      if (ball.word_length[v] > max_len) continue;
      bool all = true;
      for (int ci : family)
        if (!member[ci][v]) all = false;
      if (all) ++count;
    }
    return count;
  };

  // greedy maximal fat family seeded at each coset
  std::set<std::vector<std::string>> seen;
  for (size_t seed = 0; seed < cosets.size(); ++seed) {
    std::vector<int> family{static_cast<int>(seed)};
    if (intersection_count(family, ball.radius) <= threshold) continue;
    for (size_t j = 0; j < cosets.size(); ++j) {
      if (j == seed) continue;
      std::vector<int> cand = family;
      cand.push_back(static_cast<int>(j));
      if (intersection_count(cand, ball.radius) > threshold) family = cand;
    }
    std::sort(family.begin(), family.end());
    // canonicalize up to common left translation by the seed representative
    std::vector<std::string> key;
    for (int ci : family) {
      Element shifted = m.multiply(m.inverse(reps[seed]), reps[ci]);
      // minimal canonical key over the shifted coset, sampled within the ball
      std::string best = m.canonical_key(shifted);
      for (int v = 0; v < n; ++v)
        if (peripheral(ball.elements[v])) {
          std::string k = m.canonical_key(m.multiply(shifted, ball.elements[v]));
          best = std::min(best, k);
        }
      key.push_back(best);
    }
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    CosetFamily f;
    f.cosets = family;
    f.intersection_size = intersection_count(family, ball.radius);
    for (int l = 1; l <= ball.radius; ++l) f.growth.push_back(intersection_count(family, l));
    f.flat = f.growth.size() >= 2 &&
             f.growth[f.growth.size() - 1] == f.growth[f.growth.size() - 2];
    rep.families.push_back(f);
  }
  return rep;
}

}  // namespace relhyp

#endif
