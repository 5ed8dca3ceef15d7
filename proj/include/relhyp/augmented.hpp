#ifndef RELHYP_AUGMENTED_HPP
#define RELHYP_AUGMENTED_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/cayley.hpp"
#include "relhyp/group.hpp"
#include "relhyp/horoball.hpp"
#include "relhyp/metric_graph.hpp"
#include "relhyp/parallel.hpp"

namespace relhyp {

struct CosetRecord {
  int peripheral_index = 0;
  std::string representative_key;
  std::vector<int> members;  // ambient vertex ids, ascending
};

// Partitions the ball's vertices into left cosets of the peripheral
// subgroup, intersected with the ball. u,v share a coset iff u^-1 v lies in
// the subgroup. Records are ordered by representative key; the
// representative is the member with minimal canonical key.
inline std::vector<CosetRecord> enumerate_cosets(const CayleyBall& ball,
                                                 const MembershipPredicate& peripheral,
                                                 int peripheral_index = 0) {
  const GroupModel& m = *ball.model;
  if (!peripheral(m.identity()))
    throw std::invalid_argument("peripheral predicate rejects the identity");
  // closure sampling: products and inverses of member elements stay inside
  std::vector<const Element*> members_in_ball;
  for (const Element& g : ball.elements)
    if (peripheral(g)) members_in_ball.push_back(&g);
  for (size_t i = 0; i < members_in_ball.size(); ++i) {
    if (!peripheral(m.inverse(*members_in_ball[i])))
      throw std::invalid_argument("peripheral predicate not closed under inversion");
    for (size_t j = 0; j < members_in_ball.size() && j < 8; ++j)
      if (!peripheral(m.multiply(*members_in_ball[i], *members_in_ball[j])))
        throw std::invalid_argument("peripheral predicate not closed under products");
  }

  std::vector<CosetRecord> records;
  std::vector<int> rep_vertex;  // representative ambient vertex per record
  std::vector<int> coset_of(ball.elements.size(), -1);
  for (int v = 0; v < static_cast<int>(ball.elements.size()); ++v) {
    int found = -1;
    for (size_t c = 0; c < records.size(); ++c) {
      Element diff = m.multiply(m.inverse(ball.elements[rep_vertex[c]]), ball.elements[v]);
      if (peripheral(diff)) {
        found = static_cast<int>(c);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(records.size());
      records.push_back({peripheral_index, m.canonical_key(ball.elements[v]), {}});
      rep_vertex.push_back(v);
    }
    records[found].members.push_back(v);
    coset_of[v] = found;
  }
  for (size_t c = 0; c < records.size(); ++c) {
    // representative: minimal canonical key among members
    std::string best = records[c].representative_key;
    for (int v : records[c].members)
      best = std::min(best, m.canonical_key(ball.elements[v]));
    records[c].representative_key = best;
  }
  std::sort(records.begin(), records.end(),
            [](const CosetRecord& a, const CosetRecord& b) {
              return a.representative_key < b.representative_key;
            });
  return records;
}

inline std::vector<int> coset_of_vertex(int vertex_count, const std::vector<CosetRecord>& cosets) {
  std::vector<int> out(vertex_count, -1);
  for (size_t c = 0; c < cosets.size(); ++c)
    for (int v : cosets[c].members) {
      if (v < 0 || v >= vertex_count) throw std::invalid_argument("coset member out of range");
      if (out[v] != -1) throw std::invalid_argument("overlapping cosets");
      out[v] = static_cast<int>(c);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Coned-off ball: one cone vertex per coset, joined to each member by a
// length-1/2 edge.

struct ConedBall {
  MetricGraph graph;
  int ambient_size = 0;
  std::vector<int> cone_vertex;  // by coset index
};

inline ConedBall cone_off(const MetricGraph& ball, const std::vector<CosetRecord>& cosets) {
  coset_of_vertex(ball.vertex_count(), cosets);  // overlap check
  ConedBall out;
  out.ambient_size = ball.vertex_count();
  for (int v = 0; v < ball.vertex_count(); ++v) out.graph.add_vertex(ball.label(v));
  for (int v = 0; v < ball.vertex_count(); ++v)
    for (auto& [u, w] : ball.neighbors(v))
      if (v < u) out.graph.add_edge(v, u, w);
  for (size_t c = 0; c < cosets.size(); ++c) {
    int cv = out.graph.add_vertex({LabelKind::cone, cosets[c].representative_key, 0});
    out.cone_vertex.push_back(cv);
    for (int v : cosets[c].members) out.graph.add_edge(cv, v, 1);
  }
  out.graph.set_base(ball.base());
  return out;
}

// ---------------------------------------------------------------------------
// Augmented ball: ambient ball with a truncated horoball glued along the
// level-0 copy of each coset subgraph.

struct AugmentedBall {
  MetricGraph graph;
  int ambient_size = 0;
  int depth = 0;
  // vertex of (coset c, member position i, level k>0); level 0 is the
  // ambient member vertex itself
  std::vector<std::vector<std::vector<int>>> horo_vertex;
};

inline AugmentedBall build_augmented(const MetricGraph& ball,
                                     const std::vector<CosetRecord>& cosets, int depth,
                                     int max_vertices = 500000) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  auto coset_of = coset_of_vertex(ball.vertex_count(), cosets);
  AugmentedBall out;
  out.ambient_size = ball.vertex_count();
  out.depth = depth;
  for (int v = 0; v < ball.vertex_count(); ++v) out.graph.add_vertex(ball.label(v));
  for (int v = 0; v < ball.vertex_count(); ++v)
    for (auto& [u, w] : ball.neighbors(v))
      if (v < u) out.graph.add_edge(v, u, w);

  for (size_t c = 0; c < cosets.size(); ++c) {
    const auto& members = cosets[c].members;
    const int nm = static_cast<int>(members.size());
    std::vector<int> pos(ball.vertex_count(), -1);
    for (int i = 0; i < nm; ++i) pos[members[i]] = i;
    // distances within the induced coset subgraph, in unit edges
    std::vector<std::vector<int64_t>> dist(nm, std::vector<int64_t>(nm, -1));
    for (int i = 0; i < nm; ++i) {
      dist[i][i] = 0;
      std::vector<int> q{i};
      for (size_t qi = 0; qi < q.size(); ++qi) {
        int x = q[qi];
        for (auto& [y, w] : ball.neighbors(members[x])) {
          int py = pos[y];
          if (py >= 0 && dist[i][py] < 0) {
            dist[i][py] = dist[i][x] + 1;
            q.push_back(py);
          }
        }
      }
    }
    std::vector<std::vector<int>> levels(depth + 1);
    levels[0] = members;
    for (int k = 1; k <= depth; ++k) {
      for (int i = 0; i < nm; ++i) {
        if (out.graph.vertex_count() >= max_vertices)
          throw std::runtime_error("augmented ball vertex budget exceeded");
        levels[k].push_back(
            out.graph.add_vertex({LabelKind::horo, ball.label(members[i]).text, k}));
      }
      int64_t reach = 1;
      for (int t = 0; t < k && t < 62; ++t) reach *= 2;
      for (int i = 0; i < nm; ++i)
        for (int j = i + 1; j < nm; ++j)
          if (dist[i][j] >= 0 && dist[i][j] <= reach)
            out.graph.add_edge(levels[k][i], levels[k][j], 2);
      for (int i = 0; i < nm; ++i) out.graph.add_edge(levels[k - 1][i], levels[k][i], 2);
    }
    out.horo_vertex.push_back(std::move(levels));
  }
  out.graph.set_base(ball.base());
  return out;
}

// Restriction of an augmented or coned ball back to its ambient part.
inline MetricGraph ambient_section(const MetricGraph& g, int ambient_size) {
  MetricGraph out;
  for (int v = 0; v < ambient_size; ++v) out.add_vertex(g.label(v));
  for (int v = 0; v < ambient_size; ++v)
    for (auto& [u, w] : g.neighbors(v))
      if (u < ambient_size && v < u) out.add_edge(v, u, w);
  out.set_base(g.base());
  return out;
}

// ---------------------------------------------------------------------------
// Penetration traces and the projection to the coned-off ball.

struct Penetration {
  int coset = -1;
  int entry = -1;   // ambient vertex id
  int exit = -1;    // ambient vertex id
  int travel = 0;   // half-units travelled inside the coset
};

using PenetrationTrace = std::vector<Penetration>;

// Maximal subpaths with at least one edge inside a single coset count as
// penetrations; isolated vertices do not.
inline PenetrationTrace trace_path(const MetricGraph& ball, const std::vector<int>& path,
                                   const std::vector<int>& coset_of) {
  PenetrationTrace trace;
  size_t i = 0;
  while (i + 1 < path.size()) {
    int c = coset_of[path[i]];
    if (c < 0 || coset_of[path[i + 1]] != c) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    int travel = ball.edge_weight(path[i], path[i + 1]);
    while (j + 1 < path.size() && coset_of[path[j + 1]] == c) {
      travel += ball.edge_weight(path[j], path[j + 1]);
      ++j;
    }
    trace.push_back({c, path[i], path[j], travel});
    i = j;
  }
  return trace;
}

// Projects an ambient path into the coned-off ball: each maximal coset
// subpath becomes entry -> cone -> exit, then backtracks and length-1 loops
// are removed.
inline std::pair<std::vector<int>, PenetrationTrace> project_to_coned(
    const ConedBall& coned, const std::vector<CosetRecord>& cosets,
    const std::vector<int>& path) {
  auto coset_of = coset_of_vertex(coned.ambient_size, cosets);
  for (int v : path)
    if (v < 0 || v >= coned.ambient_size)
      throw std::invalid_argument("path leaves the ambient ball");
  MetricGraph ambient = ambient_section(coned.graph, coned.ambient_size);
  PenetrationTrace trace;
  std::vector<int> out;
  if (!path.empty()) out.push_back(path[0]);
  size_t i = 0;
  while (i + 1 < path.size()) {
    int c = coset_of[path[i]];
    if (c >= 0 && coset_of[path[i + 1]] == c) {
      size_t j = i + 1;
      int travel = ambient.edge_weight(path[i], path[i + 1]);
      while (j + 1 < path.size() && coset_of[path[j + 1]] == c) {
        travel += ambient.edge_weight(path[j], path[j + 1]);
        ++j;
      }
      trace.push_back({c, path[i], path[j], travel});
      out.push_back(coned.cone_vertex[c]);
      out.push_back(path[j]);
      i = j;
    } else {
      out.push_back(path[i + 1]);
      ++i;
    }
  }
  // remove backtracks u,v,u and repeated vertices
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> next;
    for (int v : out) {
      if (!next.empty() && next.back() == v) {
        changed = true;
        continue;
      }
      if (next.size() >= 2 && next[next.size() - 2] == v) {
        next.pop_back();
        changed = true;
        continue;
      }
      next.push_back(v);
    }
    out = std::move(next);
  }
  return {out, trace};
}

inline int path_weight(const MetricGraph& g, const std::vector<int>& path) {
  int w = 0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int e = g.edge_weight(path[i], path[i + 1]);
    if (e == 0) throw std::invalid_argument("path has a non-edge");
    w += e;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Bounded coset penetration sweep for genuine geodesics (k = 1).

struct BcpWitness {
  std::vector<int> gamma1, gamma2;  // endpoint pairs (u, v)
  int coset = -1;
  int value = 0;  // half-units
};

struct BcpReport {
  int radius = 0;
  int c_travel = 0;
  int c_gap = 0;
  bool truncated = false;
  BcpWitness travel_witness, gap_witness;
};

// Over all pairs of ambient geodesics whose endpoints are within one unit
// (2 half-units): c_travel bounds travel in a coset penetrated by exactly
// one of them, c_gap bounds entry-entry / exit-exit distances in commonly
// penetrated cosets.
inline BcpReport bcp_check(const CayleyBall& ball, const std::vector<CosetRecord>& cosets,
                           long long max_pairs = -1, size_t geodesic_budget = 16,
                           int threads = 1) {
  const MetricGraph& g = ball.graph;
  const int n = g.vertex_count();
  auto coset_of = coset_of_vertex(n, cosets);
  DistanceMatrix dm(g);
  // vertices within one unit, used to match up endpoint pairs
  std::vector<std::vector<int>> close(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (dm(u, v) <= 2) close[u].push_back(v);

  struct ChunkResult {
    BcpReport rep;
    long long pairs = 0;
  };

  auto run_chunk = [&](int, long long lo, long long hi) {
    ChunkResult res;
    res.rep.radius = ball.radius;
    auto note_travel = [&](const Penetration& p, int u1, int v1, int u2, int v2) {
      if (p.travel > res.rep.c_travel) {
        res.rep.c_travel = p.travel;
        res.rep.travel_witness = {{u1, v1}, {u2, v2}, p.coset, p.travel};
      }
    };
    auto note_gap = [&](int val, int coset, int u1, int v1, int u2, int v2) {
      if (val > res.rep.c_gap) {
        res.rep.c_gap = val;
        res.rep.gap_witness = {{u1, v1}, {u2, v2}, coset, val};
      }
    };
    for (long long idx = lo; idx < hi; ++idx) {
      int u1 = static_cast<int>(idx);
      for (int v1 = u1; v1 < n; ++v1) {
        if (max_pairs >= 0 && res.pairs > max_pairs) {
          res.rep.truncated = true;
          return res;
        }
        auto set1 = all_geodesics_rows(g, dm.row(u1), dm.row(v1), u1, v1, geodesic_budget);
        if (set1.truncated) res.rep.truncated = true;
        std::vector<PenetrationTrace> traces1;
        for (const auto& g1 : set1.paths)
          traces1.push_back(trace_path(g, g1.vertices, coset_of));
        // endpoints of the second geodesic within one unit of (u1, v1);
        // reversed second geodesics are covered by the (v2, u2) pairing
        for (int u2 : close[u1]) {
          for (int v2 : close[v1]) {
            // forward-forward combinations are symmetric in the two pairs
            if (u2 <= v2 && std::make_pair(u2, v2) < std::make_pair(u1, v1)) continue;
            ++res.pairs;
            auto set2 =
                all_geodesics_rows(g, dm.row(u2), dm.row(v2), u2, v2, geodesic_budget);
            if (set2.truncated) res.rep.truncated = true;
            std::vector<PenetrationTrace> traces2;
            for (const auto& g2 : set2.paths)
              traces2.push_back(trace_path(g, g2.vertices, coset_of));
            for (size_t i1 = 0; i1 < set1.paths.size(); ++i1) {
              const auto& t1 = traces1[i1];
              for (size_t i2 = 0; i2 < set2.paths.size(); ++i2) {
                if (u1 == u2 && v1 == v2 &&
                    set1.paths[i1].vertices == set2.paths[i2].vertices)
                  continue;
                const auto& t2 = traces2[i2];
                for (const auto& p1 : t1) {
                  const Penetration* match = nullptr;
                  for (const auto& p2 : t2)
                    if (p2.coset == p1.coset) match = &p2;
                  if (!match) {
                    note_travel(p1, u1, v1, u2, v2);
                  } else {
                    int gap = std::max(dm(p1.entry, match->entry), dm(p1.exit, match->exit));
                    note_gap(gap, p1.coset, u1, v1, u2, v2);
                  }
                }
                for (const auto& p2 : t2) {
                  bool common = false;
                  for (const auto& p1 : t1)
                    if (p1.coset == p2.coset) common = true;
                  if (!common) note_travel(p2, u2, v2, u1, v1);
                }
              }
            }
          }
        }
      }
    }
    return res;
  };

  auto chunks = parallel_chunks<ChunkResult>(n, threads, run_chunk);
  BcpReport out;
  out.radius = ball.radius;
  for (const auto& c : chunks) {
    out.truncated = out.truncated || c.rep.truncated;
    if (c.rep.c_travel > out.c_travel) {
      out.c_travel = c.rep.c_travel;
      out.travel_witness = c.rep.travel_witness;
    }
    if (c.rep.c_gap > out.c_gap) {
      out.c_gap = c.rep.c_gap;
      out.gap_witness = c.rep.gap_witness;
    }
  }
  return out;
}

}  // namespace relhyp

#endif
