#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/metric_graph.hpp"
#include "relhyp/models.hpp"

using namespace relhyp;
using namespace relhyp::testing;

TEST_CASE("cayley_ball of the trivial group is a point") {
  Presentation p{{"x"}, {Word{1}}};
  auto m = model_from_table(todd_coxeter(p, {}, 10));
  auto ball = cayley_ball(m, 3);
  CHECK(ball.graph.vertex_count() == 1);
  CHECK(ball.graph.edge_count() == 0);
}

TEST_CASE("cayley_ball of Z at radius 3 is a 7-vertex path") {
  auto ball = cayley_ball(std::make_shared<FreeGroupModel>(1), 3);
  CHECK(ball.graph.vertex_count() == 7);
  CHECK(ball.graph.edge_count() == 6);
  int leaves = 0;
  for (int v = 0; v < 7; ++v)
    if (ball.graph.neighbors(v).size() == 1) ++leaves;
  CHECK(leaves == 2);
}

TEST_CASE("cayley_ball of F2 at radius 2 is a 17-vertex tree") {
  // oracle: brute-force BFS enumeration of reduced words of length <= 2
  int count = 1 + 4 + 4 * 3;
  auto ball = cayley_ball(std::make_shared<FreeGroupModel>(2), 2);
  CHECK(ball.graph.vertex_count() == count);
  CHECK(ball.graph.edge_count() == count - 1);
}

TEST_CASE("distance basics") {
  auto ball = cayley_ball(std::make_shared<FreeGroupModel>(2), 3);
  FreeGroupModel f(2);
  int u = ball.vertex_of({1, 2, -1});  // aba^-1
  REQUIRE(u >= 0);
  CHECK(ball.graph.distance(0, 0) == 0);
  CHECK(ball.graph.distance(0, u) == 6);

  auto z2 = cayley_ball(std::make_shared<FreeAbelianModel>(2), 5);
  int v = z2.vertex_of({2, 3});
  REQUIRE(v >= 0);
  CHECK(z2.graph.distance(0, v) == 10);
}

TEST_CASE("distance is a metric on sampled triples") {
  auto ball = cayley_ball(std::make_shared<FreeAbelianModel>(2), 4);
  DistanceMatrix d(ball.graph);
  std::mt19937 rng(11);
  int n = ball.graph.vertex_count();
  for (int t = 0; t < 300; ++t) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n),
        c = static_cast<int>(rng() % n);
    CHECK(d(a, b) == d(b, a));
    CHECK(d(a, c) <= d(a, b) + d(b, c));
    CHECK((d(a, b) == 0) == (a == b));
  }
}

TEST_CASE("all_geodesics: unique in trees, binomial in grids") {
  auto tree = cayley_ball(std::make_shared<FreeGroupModel>(2), 3);
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    int a = static_cast<int>(rng() % tree.graph.vertex_count());
    int b = static_cast<int>(rng() % tree.graph.vertex_count());
    auto gs = all_geodesics(tree.graph, a, b, 10);
    CHECK(gs.paths.size() == 1);
    CHECK(!gs.truncated);
  }

  auto grid = cayley_ball(std::make_shared<FreeAbelianModel>(2), 5);
  int d11 = grid.vertex_of({1, 1});
  int d22 = grid.vertex_of({2, 2});
  CHECK(all_geodesics(grid.graph, 0, d11, 100).paths.size() == 2);
  CHECK(all_geodesics(grid.graph, 0, d22, 100).paths.size() == 6);
}

TEST_CASE("all_geodesics truncation is a flag") {
  auto grid = cayley_ball(std::make_shared<FreeAbelianModel>(2), 5);
  int d22 = grid.vertex_of({2, 2});
  auto gs = all_geodesics(grid.graph, 0, d22, 4);
  CHECK(gs.paths.size() == 4);
  CHECK(gs.truncated);
}

TEST_CASE("every geodesic has weight equal to the distance") {
  auto grid = cayley_ball(std::make_shared<FreeAbelianModel>(2), 4);
  DistanceMatrix d(grid.graph);
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    int a = static_cast<int>(rng() % grid.graph.vertex_count());
    int b = static_cast<int>(rng() % grid.graph.vertex_count());
    auto gs = all_geodesics(grid.graph, a, b, 50);
    for (const auto& geo : gs.paths) {
      CHECK(geo.weight == d(a, b));
      int acc = 0;
      for (size_t i = 0; i + 1 < geo.vertices.size(); ++i) {
        int w = grid.graph.edge_weight(geo.vertices[i], geo.vertices[i + 1]);
        REQUIRE(w > 0);
        acc += w;
      }
      CHECK(acc == geo.weight);
    }
  }
}

TEST_CASE("geodesic enumeration order is deterministic lexicographic") {
  auto grid = cayley_ball(std::make_shared<FreeAbelianModel>(2), 5);
  int d22 = grid.vertex_of({2, 2});
  auto a = all_geodesics(grid.graph, 0, d22, 100);
  auto b = all_geodesics(grid.graph, 0, d22, 100);
  REQUIRE(a.paths.size() == b.paths.size());
  for (size_t i = 0; i < a.paths.size(); ++i) CHECK(a.paths[i].vertices == b.paths[i].vertices);
  for (size_t i = 0; i + 1 < a.paths.size(); ++i)
    CHECK(a.paths[i].vertices < a.paths[i + 1].vertices);
}

TEST_CASE("gromov product basics") {
  auto ball = cayley_ball(std::make_shared<FreeGroupModel>(2), 3);
  CHECK(gromov_product2(ball.graph, 0, 0, 0) == 0);
  int a2 = ball.vertex_of({1, 1});
  int b2 = ball.vertex_of({2, 2});
  int a1 = ball.vertex_of({1});
  // p on a geodesic [x,y]
  CHECK(gromov_product2(ball.graph, 0, a2, a1) == 0);
  // no common prefix
  CHECK(gromov_product2(ball.graph, a2, b2, 0) == 0);
}

TEST_CASE("cayley_ball is monotone and nested by canonical key") {
  auto m = std::make_shared<FreeGroupModel>(2);
  auto small = cayley_ball(GroupModelPtr(m), 2);
  auto big = cayley_ball(GroupModelPtr(m), 3);
  CHECK(small.graph.vertex_count() <= big.graph.vertex_count());
  for (auto& [key, v] : small.by_key) {
    auto it = big.by_key.find(key);
    REQUIRE(it != big.by_key.end());
  }
  // induced edges agree
  for (auto& [key, v] : small.by_key) {
    for (auto& [u, w] : small.graph.neighbors(v)) {
      int bv = big.by_key.at(key);
      int bu = big.by_key.at(small.graph.label(u).text);
      CHECK(big.graph.edge_weight(bv, bu) == w);
    }
  }
}

TEST_CASE("metric graph rejects malformed edges") {
  MetricGraph g;
  int a = g.add_vertex({LabelKind::group, "a", 0});
  int b = g.add_vertex({LabelKind::group, "b", 0});
  CHECK_THROWS_AS(g.add_edge(a, a, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(a, b, 1), std::invalid_argument);  // weight 1 needs a cone
  g.add_edge(a, b, 2);
  CHECK_THROWS_AS(g.add_edge(a, b, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.distance(0, 5), std::invalid_argument);
}
