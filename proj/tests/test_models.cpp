#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "relhyp/models.hpp"

using namespace relhyp;
using namespace relhyp::testing;

TEST_CASE("group axioms hold on sampled triples for every backend") {
  check_group_axioms(*make_cyclic(5));
  check_group_axioms(FreeGroupModel(2));
  check_group_axioms(FreeAbelianModel(2));
  check_group_axioms(*make_dinf());
  check_group_axioms(*make_s3_amalgam());
  check_group_axioms(*make_z_times_dinf());
  check_group_axioms(SmallCancellationModel({{"a", "b", "c", "d"}, {parse_word("abABcdCD")}}),
                     42, 12);
}

TEST_CASE("model_from_table: x has order 5 in the 5-coset table") {
  auto m = make_cyclic(5);
  CHECK(element_order(*m, m->generator(0)) == 5);
}

TEST_CASE("model_from_table: (2,3,5) model has xy of order 5") {
  Presentation p{{"x", "y"}, {Word{1, 1}, Word{2, 2, 2}, Word{1, 2, 1, 2, 1, 2, 1, 2, 1, 2}}};
  auto m = model_from_table(todd_coxeter(p, {}, 500));
  CHECK(m->order() == 60);
  Element xy = m->multiply(m->generator(0), m->generator(1));
  CHECK(element_order(*m, xy) == 5);
  CHECK(element_order(*m, m->generator(0)) == 2);
  CHECK(element_order(*m, m->generator(1)) == 3);
}

TEST_CASE("model_from_table rejects incomplete or subgroup tables") {
  Presentation p{{"x", "y"}, {Word{1, 1}, Word{2, 2, 2}, Word{1, 2, 1, 2, 1, 2, 1, 2, 1, 2}}};
  CHECK_THROWS_AS(model_from_table(todd_coxeter(p, {}, 10)), std::invalid_argument);
  CHECK_THROWS_AS(model_from_table(todd_coxeter(p, {Word{1}}, 500)), std::invalid_argument);
}

TEST_CASE("free group model reduces words") {
  FreeGroupModel f(2);
  Element a = f.generator(0), b = f.generator(1);
  Element w = f.multiply(a, f.multiply(b, f.inverse(b)));
  CHECK(f.equal(w, a));
  CHECK(f.canonical_key(w) == f.canonical_key(a));
}

TEST_CASE("free abelian model is commutative with L1 word length") {
  FreeAbelianModel z2(2);
  Element a = z2.generator(0), b = z2.generator(1);
  CHECK(z2.equal(z2.multiply(a, b), z2.multiply(b, a)));
}

TEST_CASE("infinite dihedral amalgam: ab has infinite syllable growth") {
  auto d = make_dinf();
  Element a = d->generator(0), b = d->generator(1);
  CHECK(element_order(*d, a) == 2);
  CHECK(element_order(*d, b) == 2);
  Element ab = d->multiply(a, b);
  Element x = d->identity();
  for (int k = 1; k <= 6; ++k) {
    x = d->multiply(x, ab);
    CHECK(d->syllable_length(x) == 2 * k);
  }
  CHECK(d->in_factor(a, 0));
  CHECK(!d->in_factor(a, 1));
  CHECK(d->in_edge_subgroup(d->identity()));
  CHECK(!d->in_edge_subgroup(a));
}

TEST_CASE("S3 amalgam normal forms collapse through the edge subgroup") {
  auto m = make_s3_amalgam();
  // the two copies of x are identified
  Element xa = m->generator(0);
  Element xb = m->generator(2);
  CHECK(m->equal(xa, xb));
  // y from one side times y from the other does not collapse
  Element ya = m->generator(1), yb = m->generator(3);
  CHECK(!m->equal(ya, yb));
  CHECK(m->syllable_length(m->multiply(ya, yb)) == 2);
  CHECK(element_order(*m, ya) == 3);
}

TEST_CASE("small-cancellation model solves the word problem via Dehn") {
  SmallCancellationModel m({{"a", "b", "c", "d"}, {parse_word("abABcdCD")}});
  Element r = m.eval_word(parse_word("abABcdCD"));
  CHECK(m.equal(r, m.identity()));
  Element a = m.generator(0);
  CHECK(!m.equal(a, m.identity()));
  // canonical keys agree exactly when equality does
  CHECK(m.canonical_key(r) == m.canonical_key(m.identity()));
  CHECK(m.canonical_key(a) != m.canonical_key(m.identity()));
}

TEST_CASE("canonical keys are injective across materialized ball elements") {
  for (GroupModelPtr m : {GroupModelPtr(std::make_shared<FreeGroupModel>(2)),
                          GroupModelPtr(make_dinf()), GroupModelPtr(make_s3_amalgam())}) {
    auto ball = cayley_ball(m, 3);
    std::set<std::string> keys;
    for (size_t i = 0; i < ball.elements.size(); ++i)
      keys.insert(m->canonical_key(ball.elements[i]));
    CHECK(keys.size() == ball.elements.size());
    for (size_t i = 0; i < ball.elements.size(); ++i)
      for (size_t j = i + 1; j < ball.elements.size(); ++j)
        CHECK(!m->equal(ball.elements[i], ball.elements[j]));
  }
}

TEST_CASE("direct product projects componentwise") {
  auto m = make_z_times_dinf();
  Element z = m->generator(0);
  Element a = m->generator(1);
  CHECK(m->equal(m->multiply(z, a), m->multiply(a, z)));
  CHECK(element_order(*m, z) == -1);
  CHECK(element_order(*m, a) == 2);
}
