#ifndef RELHYP_METRIC_GRAPH_HPP
#define RELHYP_METRIC_GRAPH_HPP

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace relhyp {

enum class LabelKind { group, horo, cone };

struct VertexLabel {
  LabelKind kind = LabelKind::group;
  std::string text;  // group element key, or base vertex key for horo
  int level = 0;     // horoball level; 0 for group/cone vertices

  bool operator==(const VertexLabel&) const = default;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Finite weighted graph in integer half-units. Weight 1 (= length 1/2) is
// reserved for cone edges; everything else has weight 2 (= unit length).
class MetricGraph {
 public:
  int add_vertex(VertexLabel label) {
    labels_.push_back(std::move(label));
    adj_.emplace_back();
    return static_cast<int>(labels_.size()) - 1;
  }

  void add_edge(int u, int v, int w = 2) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop");
    if (w != 1 && w != 2) throw std::invalid_argument("edge weight must be 1 or 2");
    if (w == 1 && labels_[u].kind != LabelKind::cone && labels_[v].kind != LabelKind::cone)
      throw std::invalid_argument("weight-1 edges are cone edges only");
    for (auto& [n, _] : adj_[u])
      if (n == v) throw std::invalid_argument("duplicate edge");
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, w});
    ++edge_count_;
  }

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return edge_count_; }
  const VertexLabel& label(int v) const {
    check_vertex(v);
    return labels_[v];
  }
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
  }
  int base() const { return base_; }
  void set_base(int b) {
    check_vertex(b);
    base_ = b;
  }

  int edge_weight(int u, int v) const {
    check_vertex(u);
    for (auto& [n, w] : adj_[u])
      if (n == v) return w;
    return 0;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count()) throw std::invalid_argument("vertex not found");
  }

  // Single-source shortest paths, in half-units.
  std::vector<int> distances_from(int s) const {
    check_vertex(s);
    std::vector<int> dist(vertex_count(), kUnreachable);
    dist[s] = 0;
    using Item = std::pair<int, int>;  // (dist, vertex)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d != dist[u]) continue;
      for (auto& [v, w] : adj_[u]) {
        if (d + w < dist[v]) {
          dist[v] = d + w;
          pq.push({dist[v], v});
        }
      }
    }
    return dist;
  }

  int distance(int u, int v) const {
    check_vertex(v);
    return distances_from(u)[v];
  }

  bool connected() const {
    if (vertex_count() == 0) return true;
    auto d = distances_from(base_);
    return std::none_of(d.begin(), d.end(), [](int x) { return x == kUnreachable; });
  }

 private:
  std::vector<VertexLabel> labels_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  int base_ = 0;
  int edge_count_ = 0;
};

struct Geodesic {
  std::vector<int> vertices;
  int weight = 0;
};

struct GeodesicSet {
  std::vector<Geodesic> paths;
  bool truncated = false;
};

// Shortest-path DAG from u to v: for each vertex on some geodesic, its
// DAG successors toward v.
struct GeodesicDag {
  int source = 0, target = 0, distance = 0;
  std::vector<int> nodes;  // vertices lying on some geodesic, ascending
  std::vector<std::vector<int>> succ;  // indexed by graph vertex id
};

inline GeodesicDag geodesic_dag(const MetricGraph& g, int u, int v) {
  auto du = g.distances_from(u);
  auto dv = g.distances_from(v);
  const int D = du[v];
  if (D == kUnreachable) throw std::invalid_argument("vertices not connected");
  GeodesicDag dag;
  dag.source = u;
  dag.target = v;
  dag.distance = D;
  dag.succ.resize(g.vertex_count());
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (du[x] == kUnreachable || dv[x] == kUnreachable || du[x] + dv[x] != D) continue;
    dag.nodes.push_back(x);
    for (auto& [y, w] : g.neighbors(x))
      if (du[x] + w == du[y] && du[y] + dv[y] == D) dag.succ[x].push_back(y);
    std::sort(dag.succ[x].begin(), dag.succ[x].end());
  }
  return dag;
}

// All geodesics from u to v in lexicographic order over the shortest-path
// DAG; first max_count with a truncation flag if there are more.
inline GeodesicSet all_geodesics(const MetricGraph& g, int u, int v, size_t max_count) {
  if (max_count < 1) throw std::invalid_argument("max_count must be >= 1");
  auto dag = geodesic_dag(g, u, v);
  GeodesicSet out;
  std::vector<int> path{u};
  // iterative DFS with explicit choice stack
  std::vector<size_t> choice{0};
  while (true) {
    int cur = path.back();
    if (cur == v) {
      if (out.paths.size() == max_count) {
        out.truncated = true;
        return out;
      }
      out.paths.push_back({path, dag.distance});
      path.pop_back();
      choice.pop_back();
    } else if (choice.back() < dag.succ[cur].size()) {
      int nxt = dag.succ[cur][choice.back()++];
      path.push_back(nxt);
      choice.push_back(0);
    } else {
      path.pop_back();
      choice.pop_back();
    }
    if (path.empty()) break;
  }
  return out;
}

// Twice the Gromov product (x,y)_p, kept integral in half-units.
inline int gromov_product2(const MetricGraph& g, int x, int y, int p) {
  auto dp = g.distances_from(p);
  auto dx = g.distances_from(x);
  return dp[x] + dp[y] - dx[y];
}

// Geodesic enumeration against precomputed distance rows; avoids fresh
// single-source searches inside tight sweeps.
inline GeodesicSet all_geodesics_rows(const MetricGraph& g, const std::vector<int>& du,
                                      const std::vector<int>& dv, int u, int v,
                                      size_t max_count) {
  const int D = du[v];
  GeodesicSet out;
  std::vector<int> path{u};
  std::vector<size_t> choice{0};
  auto successors = [&](int x) {
    std::vector<int> s;
    for (auto& [y, w] : g.neighbors(x))
      if (du[x] + w == du[y] && du[y] + dv[y] == D) s.push_back(y);
    std::sort(s.begin(), s.end());
    return s;
  };
  std::vector<std::vector<int>> succ_stack{successors(u)};
  while (true) {
    int cur = path.back();
    if (cur == v) {
      if (out.paths.size() == max_count) {
        out.truncated = true;
        return out;
      }
      out.paths.push_back({path, D});
      path.pop_back();
      choice.pop_back();
      succ_stack.pop_back();
    } else if (choice.back() < succ_stack.back().size()) {
      int nxt = succ_stack.back()[choice.back()++];
      path.push_back(nxt);
      choice.push_back(0);
      succ_stack.push_back(successors(nxt));
    } else {
      path.pop_back();
      choice.pop_back();
      succ_stack.pop_back();
    }
    if (path.empty()) break;
  }
  return out;
}

// All-pairs distances, one Dijkstra per source.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const MetricGraph& g) {
    rows_.reserve(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) rows_.push_back(g.distances_from(v));
  }
  int operator()(int u, int v) const { return rows_[u][v]; }
  const std::vector<int>& row(int u) const { return rows_[u]; }

 private:
  std::vector<std::vector<int>> rows_;
};

}  // namespace relhyp

#endif
