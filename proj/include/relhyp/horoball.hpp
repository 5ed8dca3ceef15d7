#ifndef RELHYP_HOROBALL_HPP
#define RELHYP_HOROBALL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/metric_graph.hpp"

namespace relhyp {

// Combinatorial horoball over a base graph, truncated at finite depth.
// Vertex (v, k) for base vertex v and level 0 <= k <= depth; level 0 is the
// base graph itself, level k > 0 joins v,w when the base distance is <= 2^k
// (in unit edges). All edges have unit length (weight 2).
struct Horoball {
  int depth = 0;
  int base_size = 0;
  MetricGraph graph;  // vertex id = level * base_size + base vertex id

  int vertex(int base_vertex, int level) const {
    if (base_vertex < 0 || base_vertex >= base_size || level < 0 || level > depth)
      throw std::invalid_argument("horoball vertex out of range");
    return level * base_size + base_vertex;
  }
  int level_of(int id) const { return id / base_size; }
  int base_of(int id) const { return id % base_size; }
};

// Base distances must exist (connected base) and the base must have unit
// edges only; cone edges cannot carry a horoball.
inline Horoball build_horoball(const MetricGraph& base, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  const int n = base.vertex_count();
  for (int v = 0; v < n; ++v)
    for (auto& [u, w] : base.neighbors(v))
      if (w != 2) throw std::invalid_argument("horoball base must have unit edges only");
  std::vector<std::vector<int>> dist;  // in unit edges
  dist.reserve(n);
  for (int v = 0; v < n; ++v) {
    auto d = base.distances_from(v);
    for (int u = 0; u < n; ++u)
      if (d[u] == kUnreachable) throw std::invalid_argument("horoball base is disconnected");
    for (int& x : d) x /= 2;
    dist.push_back(std::move(d));
  }

  Horoball h;
  h.depth = depth;
  h.base_size = n;
  for (int k = 0; k <= depth; ++k)
    for (int v = 0; v < n; ++v)
      h.graph.add_vertex({LabelKind::horo, base.label(v).text, k});
  // horizontal edges
  for (int v = 0; v < n; ++v)
    for (auto& [u, w] : base.neighbors(v))
      if (v < u) h.graph.add_edge(h.vertex(v, 0), h.vertex(u, 0), 2);
  int64_t reach = 1;
  for (int k = 1; k <= depth; ++k) {
    reach *= 2;  // 2^k
    for (int v = 0; v < n; ++v)
      for (int u = v + 1; u < n; ++u)
        if (dist[v][u] <= reach) h.graph.add_edge(h.vertex(v, k), h.vertex(u, k), 2);
  }
  // vertical edges
  for (int k = 0; k < depth; ++k)
    for (int v = 0; v < n; ++v)
      h.graph.add_edge(h.vertex(v, k), h.vertex(v, k + 1), 2);
  h.graph.set_base(base.base());
  return h;
}

// Vertical-horizontal-vertical upper bound in half-units: climb to a level m,
// cross with ceil(d/2^m) jumps, descend. Exact distance never exceeds it.
inline int horoball_distance_fast(const Horoball& h, int v, int k, int w, int l,
                                  const std::vector<std::vector<int>>* base_dist = nullptr) {
  h.vertex(v, k);
  h.vertex(w, l);
  int d;  // base distance in unit edges
  if (base_dist) {
    d = (*base_dist)[v][w];
  } else {
    // BFS over level-0 edges only; whole-graph distances would use shortcuts
    std::vector<int> dd(h.base_size, -1);
    std::vector<int> q{v};
    dd[v] = 0;
    for (size_t qi = 0; qi < q.size(); ++qi) {
      int x = q[qi];
      for (auto& [y, wt] : h.graph.neighbors(h.vertex(x, 0))) {
        if (h.level_of(y) != 0) continue;
        int yb = h.base_of(y);
        if (dd[yb] < 0) {
          dd[yb] = dd[x] + 1;
          q.push_back(yb);
        }
      }
    }
    d = dd[w];
    if (d < 0) throw std::invalid_argument("base vertices not connected");
  }
  if (v == w) return 2 * std::abs(k - l);
  int best = -1;
  int64_t reach = 1;
  for (int m = 0; m <= h.depth; ++m, reach *= 2) {
    if (m < std::max(k, l)) continue;
    int jumps = static_cast<int>((d + reach - 1) / reach);
    int edges = (m - k) + (m - l) + jumps;
    if (best < 0 || 2 * edges < best) best = 2 * edges;
  }
  return best;
}

inline int horoball_distance_exact(const Horoball& h, int v, int k, int w, int l) {
  return h.graph.distance(h.vertex(v, k), h.vertex(w, l));
}

// Restriction to level 0, with labels restored to the base kind.
inline MetricGraph horoball_level_zero(const Horoball& h) {
  MetricGraph g;
  for (int v = 0; v < h.base_size; ++v)
    g.add_vertex({LabelKind::group, h.graph.label(v).text, 0});
  for (int v = 0; v < h.base_size; ++v)
    for (auto& [u, w] : h.graph.neighbors(v))
      if (h.level_of(u) == 0 && v < u) g.add_edge(v, u, w);
  g.set_base(h.graph.base());
  return g;
}

}  // namespace relhyp

#endif
