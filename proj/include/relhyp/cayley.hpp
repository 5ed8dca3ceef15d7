#ifndef RELHYP_CAYLEY_HPP
#define RELHYP_CAYLEY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "relhyp/group.hpp"
#include "relhyp/metric_graph.hpp"

namespace relhyp {

// Cayley ball: metric graph plus the group elements behind its vertices.
struct CayleyBall {
  MetricGraph graph;
  std::vector<Element> elements;        // by vertex id
  std::vector<int> word_length;         // by vertex id
  std::map<std::string, int> by_key;    // canonical key -> vertex id
  GroupModelPtr model;
  int radius = 0;

  int vertex_of(const Element& g) const {
    auto it = by_key.find(model->canonical_key(g));
    return it == by_key.end() ? -1 : it->second;
  }
};

// Ball of given radius in the word metric; vertices in BFS discovery order
// (generators scanned in order, inverses after), base = identity.
inline CayleyBall cayley_ball(GroupModelPtr m, int radius, int max_vertices = 200000) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  CayleyBall ball;
  ball.model = m;
  ball.radius = radius;
  Element id = m->identity();
  ball.elements.push_back(id);
  ball.word_length.push_back(0);
  ball.by_key[m->canonical_key(id)] = 0;
  ball.graph.add_vertex({LabelKind::group, m->canonical_key(id), 0});

  std::vector<std::pair<int, int>> edges;  // discovered (u, v), u < v by id
  size_t frontier_start = 0;
  for (int r = 0; r < radius; ++r) {
    size_t frontier_end = ball.elements.size();
    if (frontier_start == frontier_end) break;
    for (size_t u = frontier_start; u < frontier_end; ++u) {
      Element g = ball.elements[u];
      for (int i = 0; i < m->generator_count(); ++i) {
        for (int sign : {+1, -1}) {
          Element s = m->generator(i);
          if (sign < 0) s = m->inverse(s);
          Element h = m->multiply(g, s);
          std::string key = m->canonical_key(h);
          auto it = ball.by_key.find(key);
          int v;
          if (it == ball.by_key.end()) {
            v = static_cast<int>(ball.elements.size());
            if (v >= max_vertices) throw std::runtime_error("cayley_ball vertex budget exceeded");
            ball.elements.push_back(h);
            ball.word_length.push_back(r + 1);
            ball.by_key[key] = v;
            ball.graph.add_vertex({LabelKind::group, key, 0});
          } else {
            v = it->second;
          }
          if (ball.graph.edge_weight(static_cast<int>(u), v) == 0 && static_cast<int>(u) != v)
            ball.graph.add_edge(static_cast<int>(u), v, 2);
        }
      }
    }
    frontier_start = frontier_end;
  }
  // edges among the outermost shell
  for (size_t u = frontier_start; u < ball.elements.size(); ++u) {
    Element g = ball.elements[u];
    for (int i = 0; i < m->generator_count(); ++i) {
      for (int sign : {+1, -1}) {
        Element s = m->generator(i);
        if (sign < 0) s = m->inverse(s);
        Element h = m->multiply(g, s);
        auto it = ball.by_key.find(m->canonical_key(h));
        if (it == ball.by_key.end()) continue;
        int v = it->second;
        if (static_cast<int>(u) != v && ball.graph.edge_weight(static_cast<int>(u), v) == 0)
          ball.graph.add_edge(static_cast<int>(u), v, 2);
      }
    }
  }
  ball.graph.set_base(0);
  return ball;
}

}  // namespace relhyp

#endif
