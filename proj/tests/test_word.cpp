#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "relhyp/word.hpp"

using namespace relhyp;

TEST_CASE("free_reduce cancels adjacent inverse pairs") {
  CHECK(free_reduce({1, -1}) == Word{});
  CHECK(free_reduce({1, 2, -2, 1}) == Word{1, 1});
  CHECK(free_reduce({1, 2, -1}) == Word{1, 2, -1});
}

TEST_CASE("free_reduce handles nested cancellation") {
  CHECK(free_reduce({1, 2, -2, -1}) == Word{});
  CHECK(free_reduce({3, 1, 2, -2, -1, -3, 2}) == Word{2});
}

TEST_CASE("free_reduce rejects zero letters") {
  CHECK_THROWS_AS(free_reduce({1, 0}), std::invalid_argument);
}

TEST_CASE("free_reduce is a retraction") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    Word w;
    int len = static_cast<int>(rng() % 20);
    for (int i = 0; i < len; ++i) {
      int x = static_cast<int>(rng() % 3) + 1;
      if (rng() % 2) x = -x;
      w.push_back(x);
    }
    Word once = free_reduce(w);
    CHECK(free_reduce(once) == once);
  }
}

TEST_CASE("word text form round-trips") {
  CHECK(parse_word("abA") == Word{1, 2, -1});
  CHECK(format_word({1, 2, -1}) == "abA");
  CHECK(parse_word(format_word({3, -4, 3})) == Word{3, -4, 3});
  CHECK_THROWS_AS(parse_word("a1"), std::invalid_argument);
}

TEST_CASE("inverse and concat behave as expected") {
  Word w{1, 2, -3};
  CHECK(free_reduce(concat(w, inverse_word(w))) == Word{});
  CHECK(inverse_word(w) == Word{3, -2, -1});
}

TEST_CASE("cyclic_reduce trims conjugating letters") {
  CHECK(cyclic_reduce({1, 2, -1}) == Word{2});
  CHECK(cyclic_reduce({1, 2}) == Word{1, 2});
}
