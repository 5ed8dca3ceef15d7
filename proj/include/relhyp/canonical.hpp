#ifndef RELHYP_CANONICAL_HPP
#define RELHYP_CANONICAL_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/metric_graph.hpp"

namespace relhyp {

namespace detail {

inline int kind_code(LabelKind k) { return static_cast<int>(k); }

// AHU encoding of a tree rooted at the base; canonical for label-kind
// respecting isomorphism.
inline std::string ahu_encode(const MetricGraph& g, int v, int parent, int in_weight) {
  std::vector<std::string> kids;
  for (auto& [u, w] : g.neighbors(v))
    if (u != parent) kids.push_back(ahu_encode(g, u, v, w));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + std::to_string(in_weight) + ":" +
                  std::to_string(kind_code(g.label(v).kind)) + ":" +
                  std::to_string(g.label(v).level);
  for (auto& k : kids) s += k;
  s += ")";
  return s;
}

// Weighted 1-WL colour refinement from an initial colouring. Returns a
// stable colouring with colours renumbered by (old colour, signature).
inline std::vector<int> refine_colors(const MetricGraph& g, std::vector<int> color) {
  const int n = g.vertex_count();
  while (true) {
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<int, int>> nb;
      for (auto& [u, w] : g.neighbors(v)) nb.push_back({w, color[u]});
      std::sort(nb.begin(), nb.end());
      sig[v] = {color[v], std::move(nb)};
    }
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> remap;
    for (int v = 0; v < n; ++v) remap[sig[v]] = 0;
    int next = 0;
    for (auto& [k, id] : remap) id = next++;
    std::vector<int> nc(n);
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      nc[v] = remap[sig[v]];
      if (nc[v] != color[v]) changed = true;
    }
    color = std::move(nc);
    if (!changed) return color;
  }
}

inline std::string certificate_for_order(const MetricGraph& g, const std::vector<int>& order) {
  const int n = g.vertex_count();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::string s;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    s += std::to_string(kind_code(g.label(v).kind)) + ":" + std::to_string(g.label(v).level) + ";";
    std::vector<std::pair<int, int>> nb;
    for (auto& [u, w] : g.neighbors(v)) nb.push_back({pos[u], w});
    std::sort(nb.begin(), nb.end());
    for (auto& [p, w] : nb) s += std::to_string(p) + "." + std::to_string(w) + ",";
    s += "|";
  }
  return s;
}

struct CanonicalSearch {
  const MetricGraph& g;
  std::string best;
  bool have_best = false;
  long long leaves = 0, leaf_limit = 500000;

  void search(std::vector<int> color) {
    color = refine_colors(g, color);
    const int n = g.vertex_count();
    // cells by colour
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[color[v]].push_back(v);
    int branch_color = -1;
    for (auto& [c, vs] : cells)
      if (vs.size() > 1) { branch_color = c; break; }
    if (branch_color < 0) {
      if (++leaves > leaf_limit) throw std::runtime_error("canonical_form search limit exceeded");
      std::vector<int> order(n);
      for (auto& [c, vs] : cells) order[c] = vs[0];
      std::string cert = certificate_for_order(g, order);
      if (!have_best || cert < best) {
        best = std::move(cert);
        have_best = true;
      }
      return;
    }
    for (int v : cells[branch_color]) {
      std::vector<int> nc = color;
      for (int u = 0; u < n; ++u)
        if (nc[u] >= branch_color && u != v) nc[u] += 1;
      search(std::move(nc));
    }
  }
};

}  // namespace detail

// Label-kind aware canonical certificate: equal certificates iff the graphs
// are isomorphic by a base-preserving map respecting label kinds, levels and
// edge weights. Trees use a rooted AHU encoding; other graphs use colour
// refinement with backtracking, which is exhaustive at desk scale.
inline std::string canonical_form(const MetricGraph& g, int max_vertices = 512) {
  const int n = g.vertex_count();
  if (n > max_vertices) throw std::invalid_argument("graph exceeds small-graph bound");
  if (n == 0) return "empty";
  if (!g.connected()) throw std::invalid_argument("canonical_form requires a connected graph");
  std::string head = "n" + std::to_string(n) + "m" + std::to_string(g.edge_count()) + "|";
  if (g.edge_count() == n - 1)  // tree
    return head + "T" + detail::ahu_encode(g, g.base(), -1, 0);
  std::vector<int> color(n);
  for (int v = 0; v < n; ++v)
    color[v] = 2 * detail::kind_code(g.label(v).kind) + (v == g.base() ? 0 : 1);
  detail::CanonicalSearch cs{g};
  cs.search(std::move(color));
  return head + "G" + cs.best;
}

}  // namespace relhyp

#endif
