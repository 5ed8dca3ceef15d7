#ifndef RELHYP_HYPERBOLICITY_HPP
#define RELHYP_HYPERBOLICITY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/metric_graph.hpp"
#include "relhyp/parallel.hpp"

namespace relhyp {

inline constexpr const char* kVertexDeltaNote =
    "delta measured at vertices only; continuous value may exceed by up to 2 half-units";

struct DeltaPolicy {
  enum class Mode { exhaustive, sampled };
  Mode mode = Mode::exhaustive;
  std::uint64_t seed = 0;
  int samples = 1000;
  int max_vertices = 128;  // exhaustive bound
  int threads = 1;

  static DeltaPolicy sampled_with(std::uint64_t seed, int samples) {
    DeltaPolicy p;
    p.mode = Mode::sampled;
    p.seed = seed;
    p.samples = samples;
    return p;
  }
};

struct DeltaReport {
  int delta = 0;  // half-units
  std::string mode;
  std::vector<int> witness;  // triple for slim, quadruple for four-point
  int witness_point = -1;
  bool truncated = false;
  std::string note = kVertexDeltaNote;
};

namespace detail {

// Directed shortest-path DAG between a fixed pair, built from distance rows.
struct PairDag {
  int source = 0, target = 0;
  std::vector<int> nodes;              // by du ascending, then id
  std::vector<std::vector<int>> succ;  // parallel to nodes
  std::vector<int> node_index;         // graph vertex -> position in nodes, or -1
};

inline PairDag pair_dag(const MetricGraph& g, const std::vector<int>& du,
                        const std::vector<int>& dv, int u, int v) {
  const int D = du[v];
  PairDag dag;
  dag.source = u;
  dag.target = v;
  dag.node_index.assign(g.vertex_count(), -1);
  for (int x = 0; x < g.vertex_count(); ++x)
    if (du[x] != kUnreachable && dv[x] != kUnreachable && du[x] + dv[x] == D)
      dag.nodes.push_back(x);
  std::sort(dag.nodes.begin(), dag.nodes.end(),
            [&](int a, int b) { return du[a] != du[b] ? du[a] < du[b] : a < b; });
  for (size_t i = 0; i < dag.nodes.size(); ++i) dag.node_index[dag.nodes[i]] = static_cast<int>(i);
  dag.succ.resize(dag.nodes.size());
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    int x = dag.nodes[i];
    for (auto& [y, w] : g.neighbors(x))
      if (dag.node_index[y] >= 0 && du[x] + w == du[y] && du[y] + dv[y] == D)
        dag.succ[i].push_back(dag.node_index[y]);
  }
  return dag;
}

// Largest, over geodesics carried by the DAG, of the smallest distance from
// p to a vertex of the geodesic: the side the point p sees worst.
inline int farthest_geodesic(const PairDag& dag, const std::vector<int>& dp) {
  std::vector<int> f(dag.nodes.size());
  for (int i = static_cast<int>(dag.nodes.size()) - 1; i >= 0; --i) {
    int best = -1;
    for (int j : dag.succ[i]) best = std::max(best, f[j]);
    int here = dp[dag.nodes[i]];
    f[i] = best < 0 ? here : std::min(here, best);
  }
  return f[dag.node_index[dag.source]];
}

}  // namespace detail

// Slimness of one triple: worst vertex on one side against the worst
// independent choice of the other two sides.
inline int triple_slim(const MetricGraph& g, const DistanceMatrix& dm, int x, int y, int z,
                       int* worst_point = nullptr) {
  std::array<std::array<int, 2>, 3> sides{{{x, y}, {y, z}, {z, x}}};
  std::array<detail::PairDag, 3> dags;
  for (int s = 0; s < 3; ++s)
    dags[s] = detail::pair_dag(g, dm.row(sides[s][0]), dm.row(sides[s][1]), sides[s][0],
                               sides[s][1]);
  int best = -1, best_point = -1;
  for (int s = 0; s < 3; ++s) {
    const auto& b = dags[(s + 1) % 3];
    const auto& c = dags[(s + 2) % 3];
    for (int p : dags[s].nodes) {
      const auto& dp = dm.row(p);
      int val = std::min(detail::farthest_geodesic(b, dp), detail::farthest_geodesic(c, dp));
      if (val > best) {
        best = val;
        best_point = p;
      }
    }
  }
  if (worst_point) *worst_point = best_point;
  return best;
}

namespace detail {

inline std::vector<std::array<int, 3>> sampled_triples(int n, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<std::array<int, 3>> out;
  if (n < 3) return out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    int x = static_cast<int>(rng() % n);
    int y = static_cast<int>(rng() % n);
    int z = static_cast<int>(rng() % n);
    if (x == y || y == z || x == z) continue;
    std::array<int, 3> t{x, y, z};
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline DeltaReport slim_delta(const MetricGraph& g, const DeltaPolicy& policy = {}) {
  if (!g.connected()) throw std::invalid_argument("graph must be connected");
  const int n = g.vertex_count();
  DeltaReport rep;
  DistanceMatrix dm(g);

  std::vector<std::array<int, 3>> triples;
  if (policy.mode == DeltaPolicy::Mode::exhaustive) {
    if (n > policy.max_vertices) throw std::runtime_error("exhaustive triple budget exceeded");
    rep.mode = "exhaustive";
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        for (int z = y + 1; z < n; ++z) triples.push_back({x, y, z});
  } else {
    rep.mode = "sampled(seed=" + std::to_string(policy.seed) +
               ",count=" + std::to_string(policy.samples) + ")";
    triples = detail::sampled_triples(n, policy.seed, policy.samples);
  }

  struct Best {
    int delta = -1;
    std::vector<int> witness;
    int point = -1;
  };
  auto run = [&](int, long long lo, long long hi) {
    Best b;
    for (long long i = lo; i < hi; ++i) {
      auto [x, y, z] = triples[static_cast<size_t>(i)];
      int p;
      int val = triple_slim(g, dm, x, y, z, &p);
      if (val > b.delta) b = {val, {x, y, z}, p};
    }
    return b;
  };
  auto chunks = parallel_chunks<Best>(static_cast<long long>(triples.size()), policy.threads, run);
  for (const auto& b : chunks)
    if (b.delta > rep.delta ||
        (b.delta == rep.delta && !b.witness.empty() &&
         (rep.witness.empty() || b.witness < rep.witness))) {
      rep.delta = std::max(b.delta, 0);
      rep.witness = b.witness;
      rep.witness_point = b.point;
    }
  return rep;
}

inline DeltaReport four_point_delta(const MetricGraph& g, const DeltaPolicy& policy = {}) {
  if (!g.connected()) throw std::invalid_argument("graph must be connected");
  const int n = g.vertex_count();
  DeltaReport rep;
  DistanceMatrix dm(g);

  std::vector<std::array<int, 4>> quads;
  if (policy.mode == DeltaPolicy::Mode::exhaustive) {
    if (n > policy.max_vertices) throw std::runtime_error("exhaustive quadruple budget exceeded");
    rep.mode = "exhaustive";
  } else {
    rep.mode = "sampled(seed=" + std::to_string(policy.seed) +
               ",count=" + std::to_string(policy.samples) + ")";
    std::mt19937_64 rng(policy.seed);
    while (n >= 4 && static_cast<int>(quads.size()) < policy.samples) {
      std::array<int, 4> q;
      for (int& v : q) v = static_cast<int>(rng() % n);
      std::sort(q.begin(), q.end());
      if (std::unique(q.begin(), q.end()) != q.end()) continue;
      quads.push_back(q);
    }
  }

  // defect of the condition (x,y)_w >= min((x,z)_w, (y,z)_w) - delta,
  // in doubled (half-unit) Gromov products
  auto defect2 = [&](int w, int x, int y, int z) {
    auto gp2 = [&](int a, int b) { return dm(w, a) + dm(w, b) - dm(a, b); };
    return std::min(gp2(x, z), gp2(y, z)) - gp2(x, y);
  };
  int best2 = 0;
  std::vector<int> witness;
  auto consider = [&](int w, int x, int y, int z) {
    for (auto [a, b, c] : {std::array<int, 3>{x, y, z}, {y, z, x}, {z, x, y}}) {
      int d2 = defect2(w, a, b, c);
      if (d2 > best2) {
        best2 = d2;
        witness = {w, a, b, c};
      }
    }
  };
  if (policy.mode == DeltaPolicy::Mode::exhaustive) {
    for (int w = 0; w < n; ++w)
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
          for (int z = y + 1; z < n; ++z) {
            if (w == x || w == y || w == z) continue;
            consider(w, x, y, z);
          }
  } else {
    for (auto [w, x, y, z] : quads) consider(w, x, y, z);
  }
  rep.delta = (best2 + 1) / 2;
  rep.witness = witness;
  return rep;
}

struct QcReport {
  int constant = 0;  // half-units
  std::array<int, 2> witness_pair{-1, -1};
  int witness_point = -1;
  bool lower_bound_only = false;  // exact: computed over the full geodesic DAG
};

// Worst distance back to the subset from a vertex on any geodesic between
// two subset members.
inline QcReport quasiconvexity_constant(const MetricGraph& g, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  for (int v : subset) g.check_vertex(v);
  // multi-source distances to the subset
  std::vector<int> to_subset(g.vertex_count(), kUnreachable);
  {
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int v : subset) {
      to_subset[v] = 0;
      pq.push({0, v});
    }
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d != to_subset[u]) continue;
      for (auto& [v, w] : g.neighbors(u))
        if (d + w < to_subset[v]) {
          to_subset[v] = d + w;
          pq.push({to_subset[v], v});
        }
    }
  }
  std::vector<int> sorted(subset);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  QcReport rep;
  for (size_t i = 0; i < sorted.size(); ++i) {
    auto du = g.distances_from(sorted[i]);
    for (size_t j = i + 1; j < sorted.size(); ++j) {
      auto dv = g.distances_from(sorted[j]);
      const int D = du[sorted[j]];
      for (int x = 0; x < g.vertex_count(); ++x) {
        if (du[x] == kUnreachable || du[x] + dv[x] != D) continue;
        if (to_subset[x] > rep.constant) {
          rep.constant = to_subset[x];
          rep.witness_pair = {sorted[i], sorted[j]};
          rep.witness_point = x;
        }
      }
    }
  }
  return rep;
}

}  // namespace relhyp

#endif
