#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"
#include "relhyp/augmented.hpp"
#include "relhyp/develop.hpp"

using namespace relhyp;
using namespace relhyp::testing;

namespace {

DevelopBackend dinf_backend(std::shared_ptr<AmalgamModel> m) {
  DevelopBackend bk;
  bk.tag = "supplied-model";
  bk.model = m;
  bk.in_local = {[m](const Element& x) { return m->in_factor(x, 0); },
                 [m](const Element& x) { return m->in_factor(x, 1); },
                 [m](const Element& x) { return m->equal(x, m->identity()); }};
  bk.local_gens = {{m->generator(0)}, {m->generator(1)}, {}};
  bk.edge_element = {m->identity(), m->identity()};
  return bk;
}

DevelopBackend s3_amalgam_backend(std::shared_ptr<AmalgamModel> m) {
  DevelopBackend bk;
  bk.tag = "supplied-model";
  bk.model = m;
  bk.in_local = {[m](const Element& x) { return m->in_factor(x, 0); },
                 [m](const Element& x) { return m->in_factor(x, 1); },
                 [m](const Element& x) { return m->in_edge_subgroup(x); }};
  bk.local_gens = {{m->generator(0), m->generator(1)},
                   {m->generator(2), m->generator(3)},
                   {m->generator(0)}};
  bk.edge_element = {m->identity(), m->identity()};
  return bk;
}

struct ZDinfData {
  std::shared_ptr<DirectProductModel> model;
  std::shared_ptr<AmalgamModel> dinf;
};

std::pair<ZDinfData, DevelopBackend> z_dinf_backend() {
  ZDinfData d;
  d.dinf = make_dinf();
  d.model = std::make_shared<DirectProductModel>(std::make_shared<FreeAbelianModel>(1), d.dinf);
  auto m = d.model;
  auto dinf = d.dinf;
  DevelopBackend bk;
  bk.tag = "supplied-model";
  bk.model = m;
  bk.in_local = {
      [m, dinf](const Element& x) { return dinf->in_factor(m->parts(x).second, 0); },
      [m, dinf](const Element& x) { return dinf->in_factor(m->parts(x).second, 1); },
      [m, dinf](const Element& x) {
        return dinf->equal(m->parts(x).second, dinf->identity());
      }};
  bk.local_gens = {{m->generator(0), m->generator(1)},
                   {m->generator(0), m->generator(2)},
                   {m->generator(0)}};
  bk.edge_element = {m->identity(), m->identity()};
  return {d, bk};
}

int count_base(const DevelopmentBall& d, int base) {
  int n = 0;
  for (const auto& s : d.simplices) n += s.base == base;
  return n;
}

}  // namespace

TEST_CASE("single-simplex cog develops to one simplex") {
  auto y = make_complex(1, {{0}});
  LocalGroup g{{{"x"}, {Word{1, 1}}}, make_cyclic(2)};
  auto cog = make_cog(y, {g}, {});
  auto bk = coset_table_backend(cog);
  CHECK(bk.tag == "coset-table");
  auto d = develop(cog, bk, 3);
  CHECK(d.simplices.size() == 1);
  CHECK(d.adjacency[0].empty());
}

TEST_CASE("coset-table backend on a finite fundamental group") {
  // C2 amalgamated with itself over itself: pi1 = C2, cover = one edge
  LocalGroup c2{{{"x"}, {Word{1, 1}}}, make_cyclic(2)};
  LocalGroup edge{{{"z"}, {Word{1, 1}}}, make_cyclic(2)};
  auto cog = make_segment_cog(c2, c2, edge, {Word{1}}, {Word{1}});
  REQUIRE(validate_cog(cog).ok());
  auto bk = coset_table_backend(cog);
  auto d = develop(cog, bk, 3);
  CHECK(d.simplices.size() == 3);
  CHECK(count_base(d, 0) == 1);
  CHECK(count_base(d, 1) == 1);
  CHECK(count_base(d, 2) == 1);
  CHECK(acyclicity_check(cog.complex, d));
}

TEST_CASE("infinite dihedral development is a path of nine simplices") {
  auto cog = make_dinf_cog();
  auto bk = dinf_backend(make_dinf());
  auto d = develop(cog, bk, 4);
  // 9 vertex simplices spanning 8 edge simplices
  REQUIRE(d.simplices.size() == 17);
  CHECK(count_base(d, 0) + count_base(d, 1) == 9);
  CHECK(count_base(d, 2) == 8);
  // path degrees: two tips, everything else degree 2
  int tips = 0;
  for (const auto& row : d.adjacency) {
    REQUIRE((row.size() == 1 || row.size() == 2));
    tips += row.size() == 1;
  }
  CHECK(tips == 2);
  CHECK(acyclicity_check(cog.complex, d));
  CHECK(d.backend_tag == "supplied-model");
}

TEST_CASE("identity simplex exists over every base simplex") {
  auto cog = make_dinf_cog();
  auto bk = dinf_backend(make_dinf());
  auto d = develop(cog, bk, 4);
  for (int base = 0; base < 3; ++base) {
    bool found = false;
    for (const auto& s : d.simplices)
      if (s.base == base && bk.in_local[base](s.rep)) found = true;
    CHECK(found);
  }
}

TEST_CASE("s3 amalgam development is a trivalent bipartite tree") {
  auto cog = make_s3_amalgam_cog();
  auto bk = s3_amalgam_backend(make_s3_amalgam());
  auto d = develop(cog, bk, 2);
  int vertices = count_base(d, 0) + count_base(d, 1);
  CHECK(vertices == 10);  // 1 + 3 + 6
  CHECK(acyclicity_check(cog.complex, d));
  // inner vertices meet [S3 : C2] = 3 edge simplices
  for (size_t i = 0; i < d.simplices.size(); ++i)
    if (d.simplices[i].base != 2 && d.vertex_distance[i] < 2)
      CHECK(d.adjacency[i].size() == 3);
}

TEST_CASE("development is deterministic") {
  auto cog = make_s3_amalgam_cog();
  auto bk = s3_amalgam_backend(make_s3_amalgam());
  auto d1 = develop(cog, bk, 2);
  auto d2 = develop(cog, bk, 2);
  REQUIRE(d1.simplices.size() == d2.simplices.size());
  for (size_t i = 0; i < d1.simplices.size(); ++i) {
    CHECK(d1.simplices[i].base == d2.simplices[i].base);
    CHECK(d1.simplices[i].rep == d2.simplices[i].rep);
  }
  CHECK(d1.adjacency == d2.adjacency);
}

TEST_CASE("left action preserves adjacency where defined") {
  auto cog = make_dinf_cog();
  auto m = make_dinf();
  auto bk = dinf_backend(m);
  auto d = develop(cog, bk, 4);
  auto find = [&](int base, const Element& rep) {
    for (size_t i = 0; i < d.simplices.size(); ++i)
      if (d.simplices[i].base == base &&
          bk.in_local[base](m->multiply(m->inverse(d.simplices[i].rep), rep)))
        return static_cast<int>(i);
    return -1;
  };
  for (const Element& g : cayley_ball(m, 2).elements) {
    for (size_t i = 0; i < d.simplices.size(); ++i) {
      int gi = find(d.simplices[i].base, m->multiply(g, d.simplices[i].rep));
      if (gi < 0) continue;
      for (int j : d.adjacency[i]) {
        int gj = find(d.simplices[j].base, m->multiply(g, d.simplices[j].rep));
        if (gj < 0) continue;
        CHECK(std::count(d.adjacency[gi].begin(), d.adjacency[gi].end(), gj) == 1);
      }
    }
  }
}

TEST_CASE("broken gluing fails the acyclicity oracle") {
  auto cog = make_dinf_cog();
  DevelopmentBall broken;
  broken.simplices = {{Element{}, 0}, {Element{}, 1}, {Element{}, 2}, {Element{}, 2}};
  broken.adjacency = {{2, 3}, {2, 3}, {0, 1}, {0, 1}};  // two edges joining the same pair
  broken.vertex_distance = {0, 1, -1, -1};
  CHECK_FALSE(acyclicity_check(cog.complex, broken));
}

TEST_CASE("vertex stabilizer in the infinite dihedral development") {
  auto cog = make_dinf_cog();
  auto bk = dinf_backend(make_dinf());
  auto d = develop(cog, bk, 4);
  // center simplex: identity coset over the A vertex
  auto probe = stabilizer_probe(cog, bk, d, 0, 0, 6);
  CHECK(probe.distance == 0);
  CHECK(probe.fixers.size() == 2);  // the vertex group C2
  for (int count : probe.growth) CHECK(count == 2);
}

TEST_CASE("distant vertices in the line have trivial common stabilizer") {
  auto cog = make_dinf_cog();
  auto bk = dinf_backend(make_dinf());
  auto d = develop(cog, bk, 4);
  int other = -1;
  auto dist = development_distances(d, 0);
  for (size_t i = 0; i < d.simplices.size(); ++i)
    if (d.simplices[i].base == 1 && dist[i] == 2) other = static_cast<int>(i);
  REQUIRE(other >= 0);
  auto probe = stabilizer_probe(cog, bk, d, 0, other, 8);
  CHECK(probe.distance == 2);
  CHECK(probe.fixers.size() == 1);  // identity only
}

TEST_CASE("central direction makes stabilizers grow") {
  auto cog = make_z_times_dinf_cog();
  auto [data, bk] = z_dinf_backend();
  auto d = develop(cog, bk, 4);
  auto probe4 = stabilizer_probe(cog, bk, d, 0, 1, 4);
  auto probe6 = stabilizer_probe(cog, bk, d, 0, 1, 6);
  auto probe8 = stabilizer_probe(cog, bk, d, 0, 1, 8);
  CHECK(probe4.fixers.size() < probe6.fixers.size());
  CHECK(probe6.fixers.size() < probe8.fixers.size());
}

TEST_CASE("acylindricity verdicts") {
  auto dinf_cog = make_dinf_cog();
  auto bk1 = dinf_backend(make_dinf());
  auto d1 = develop(dinf_cog, bk1, 4);
  auto rep1 = acylindricity_report(dinf_cog, bk1, d1, 2, 8);
  CHECK(rep1.acylindrical_evidence);
  CHECK(rep1.max_fixer_count == 1);

  auto z_cog = make_z_times_dinf_cog();
  auto [data, bk2] = z_dinf_backend();
  auto d2 = develop(z_cog, bk2, 3);
  auto rep2 = acylindricity_report(z_cog, bk2, d2, 1, 8);
  CHECK_FALSE(rep2.acylindrical_evidence);
  REQUIRE_FALSE(rep2.witnesses.empty());

  // no pair at distance >= K: vacuous evidence
  auto y = make_complex(1, {{0}});
  LocalGroup g{{{"x"}, {Word{1, 1}}}, make_cyclic(2)};
  auto point = make_cog(y, {g}, {});
  auto bk3 = coset_table_backend(point);
  auto d3 = develop(point, bk3, 1);
  auto rep3 = acylindricity_report(point, bk3, d3, 1, 4);
  CHECK(rep3.acylindrical_evidence);
  CHECK(rep3.max_fixer_count == 0);
}

TEST_CASE("coset families under conjugation") {
  auto m = std::make_shared<FreeGroupModel>(2);
  auto ball = cayley_ball(m, 6);
  MembershipPredicate whole = [](const Element&) { return true; };
  MembershipPredicate trivial = [m](const Element& g) { return g.empty(); };
  MembershipPredicate axis = [](const Element& g) {
    return std::all_of(g.begin(), g.end(), [](int64_t x) { return x == 1 || x == -1; });
  };

  auto all = fat_coset_families(ball, enumerate_cosets(ball, whole), whole, 3);
  REQUIRE(all.families.size() == 1);
  CHECK(all.families[0].intersection_size == static_cast<long long>(ball.elements.size()));

  auto none = fat_coset_families(ball, enumerate_cosets(ball, trivial), trivial, 1);
  CHECK(none.families.empty());

  auto malnormal = fat_coset_families(ball, enumerate_cosets(ball, axis), axis, 3);
  REQUIRE(malnormal.families.size() == 1);
  CHECK(malnormal.families[0].cosets.size() == 1);
  CHECK(malnormal.families[0].intersection_size == 13);  // a^-6 .. a^6
  CHECK_FALSE(malnormal.families[0].flat);               // the axis keeps growing
}
