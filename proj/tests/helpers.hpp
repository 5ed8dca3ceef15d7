#ifndef RELHYP_TEST_HELPERS_HPP
#define RELHYP_TEST_HELPERS_HPP

#include <memory>
#include <random>

#include "relhyp/cayley.hpp"
#include "relhyp/complex.hpp"
#include "relhyp/coset_enum.hpp"
#include "relhyp/metric_graph.hpp"
#include "relhyp/models.hpp"

namespace relhyp::testing {

inline std::shared_ptr<FiniteTableModel> make_cyclic(int n) {
  Presentation p{{"x"}, {Word(n, 1)}};
  return model_from_table(todd_coxeter(p, {}, 4 * n + 4), {"x"});
}

// S3 = <x,y | x^2, y^3, (xy)^2>, x a transposition, y a 3-cycle.
inline std::shared_ptr<FiniteTableModel> make_s3() {
  Presentation p{{"x", "y"}, {Word{1, 1}, Word{2, 2, 2}, Word{1, 2, 1, 2}}};
  return model_from_table(todd_coxeter(p, {}, 100), {"x", "y"});
}

// Infinite dihedral group as C2 * C2.
inline std::shared_ptr<AmalgamModel> make_dinf() {
  return std::make_shared<AmalgamModel>(make_cyclic(2), make_cyclic(2),
                                        std::vector<int>{0}, std::vector<int>{0});
}

// S3 *_{C2} S3, amalgamated over the transposition subgroup on both sides.
inline std::shared_ptr<AmalgamModel> make_s3_amalgam() {
  auto a = make_s3();
  auto b = make_s3();
  int xa = a->generator_index(0);
  int xb = b->generator_index(0);
  return std::make_shared<AmalgamModel>(a, b, std::vector<int>{0, xa},
                                        std::vector<int>{0, xb});
}

inline std::shared_ptr<DirectProductModel> make_z_times_dinf() {
  return std::make_shared<DirectProductModel>(std::make_shared<FreeAbelianModel>(1),
                                              make_dinf());
}

// Segment of groups: vertex groups a, b over edge group c, with the edge
// group's generators mapped by c_in_a and c_in_b.
inline SimpleComplexOfGroups make_segment_cog(LocalGroup a, LocalGroup b, LocalGroup c,
                                              std::vector<Word> c_in_a = {},
                                              std::vector<Word> c_in_b = {}) {
  auto y = make_complex(2, {{0, 1}});
  std::map<std::pair<int, int>, std::vector<Word>> maps;
  if (!c_in_a.empty()) maps[{0, 2}] = c_in_a;
  if (!c_in_b.empty()) maps[{1, 2}] = c_in_b;
  return make_cog(y, {std::move(a), std::move(b), std::move(c)}, maps);
}

// C2 * C2 as a segment with trivial edge group.
inline SimpleComplexOfGroups make_dinf_cog() {
  LocalGroup c2{{{"x"}, {Word{1, 1}}}, make_cyclic(2)};
  return make_segment_cog(c2, c2, LocalGroup{});
}

// S3 *_{C2} S3, edge group generated by the transposition on both sides.
inline SimpleComplexOfGroups make_s3_amalgam_cog() {
  LocalGroup s3{{{"x", "y"}, {Word{1, 1}, Word{2, 2, 2}, Word{1, 2, 1, 2}}}, make_s3()};
  LocalGroup c2{{{"z"}, {Word{1, 1}}}, make_cyclic(2)};
  return make_segment_cog(s3, s3, c2, {Word{1}}, {Word{1}});
}

// (Z x C2) *_Z (Z x C2) with central edge group Z; fundamental group Z x Dinf.
inline SimpleComplexOfGroups make_z_times_dinf_cog() {
  Presentation zc2{{"t", "x"}, {Word{2, 2}, Word{1, 2, -1, -2}}};
  auto model = std::make_shared<DirectProductModel>(std::make_shared<FreeAbelianModel>(1),
                                                    make_cyclic(2));
  LocalGroup vertex{zc2, model};
  LocalGroup edge{{{"t"}, {}}, std::make_shared<FreeAbelianModel>(1)};
  return make_segment_cog(vertex, vertex, edge, {Word{1}}, {Word{1}});
}

// Random element as a product of <= max_len generator letters.
inline Element random_element(const GroupModel& m, std::mt19937& rng, int max_len = 8) {
  Element g = m.identity();
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    Element s = m.generator(static_cast<int>(rng() % m.generator_count()));
    if (rng() % 2) s = m.inverse(s);
    g = m.multiply(g, s);
  }
  return g;
}

// Samples the group axioms with a fixed seed.
inline void check_group_axioms(const GroupModel& m, unsigned seed = 42, int trials = 60) {
  if (m.generator_count() == 0) return;
  std::mt19937 rng(seed);
  Element e = m.identity();
  for (int t = 0; t < trials; ++t) {
    Element a = random_element(m, rng);
    Element b = random_element(m, rng);
    Element c = random_element(m, rng);
    REQUIRE(m.equal(m.multiply(m.multiply(a, b), c), m.multiply(a, m.multiply(b, c))));
    REQUIRE(m.equal(m.multiply(a, e), a));
    REQUIRE(m.equal(m.multiply(e, a), a));
    REQUIRE(m.equal(m.multiply(a, m.inverse(a)), e));
    REQUIRE(m.equal(m.multiply(m.inverse(a), a), e));
  }
}

inline int element_order(const GroupModel& m, const Element& g, int bound = 1000) {
  Element x = g;
  for (int k = 1; k <= bound; ++k) {
    if (m.equal(x, m.identity())) return k;
    x = m.multiply(x, g);
  }
  return -1;
}

// Cycle graph with n vertices, unit edges.
inline MetricGraph cycle_graph(int n) {
  MetricGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex({LabelKind::group, "v" + std::to_string(i), 0});
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 2);
  return g;
}

inline MetricGraph path_graph(int n) {
  MetricGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex({LabelKind::group, "v" + std::to_string(i), 0});
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 2);
  return g;
}

}  // namespace relhyp::testing

#endif
