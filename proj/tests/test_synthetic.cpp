#include "ctxtree/error.hpp"
#include "ctxtree/synthetic.hpp"

#include "naive_oracle.hpp"

#include <doctest.h>

using namespace ctxtree;

TEST_CASE("single planted feature") {
  SyntheticSpec spec;
  spec.alphabet_size = 4;
  spec.length = 30;
  spec.features = {"ABC"};
  spec.density = 0.5;
  spec.seed = 12;
  auto c = gen_synthetic(spec);
  CHECK(c.y.size() == 30);
  REQUIRE(c.planted_copies.size() == 1);
  CHECK(c.planted_copies[0] == 5);
  std::vector<Code> y(c.y.codes().begin(), c.y.codes().end());
  CHECK(oracle::count(y, c.alphabet.encode("ABC")) >= 5);
}

TEST_CASE("density zero is pure background") {
  SyntheticSpec spec;
  spec.length = 1000;
  spec.features = {"ABCD"};
  auto c = gen_synthetic(spec);
  CHECK(c.planted_copies[0] == 0);
  CHECK(c.y.size() == 1000);
}

TEST_CASE("generation is deterministic in the seed") {
  SyntheticSpec spec;
  spec.length = 5000;
  spec.random_feature_count = 6;
  spec.density = 0.3;
  spec.zipf_exponent = 1.0;
  spec.background = Background::mixing;
  spec.seed = 99;
  auto a = gen_synthetic(spec);
  auto b = gen_synthetic(spec);
  CHECK(a.y == b.y);
  CHECK(a.features.features() == b.features.features());
  CHECK(a.planted_copies == b.planted_copies);
  spec.seed = 100;
  CHECK_FALSE(gen_synthetic(spec).y == a.y);

  std::uint64_t planted = 0;
  for (std::size_t k = 0; k < a.features.size(); ++k) planted += a.planted_copies[k] * a.features.features()[k].size();
  CHECK(planted <= 1500);
  CHECK(planted > 1500 - 8);
}

TEST_CASE("zipf weights favour the first features") {
  SyntheticSpec spec;
  spec.length = 100000;
  spec.features = {"ABCD", "BCDA", "CDAB", "DABC"};
  spec.density = 0.4;
  spec.zipf_exponent = 2.0;
  auto c = gen_synthetic(spec);
  CHECK(c.planted_copies[0] > c.planted_copies[1]);
  CHECK(c.planted_copies[1] > c.planted_copies[3]);
}

TEST_CASE("rejected specs") {
  SyntheticSpec spec;
  spec.length = 10;
  spec.features = {"AB"};
  spec.density = 1.5;
  CHECK_THROWS_AS(gen_synthetic(spec), RangeError);
  spec.density = 0.5;
  spec.features = {"ABABABABABAB"};
  CHECK_THROWS_AS(gen_synthetic(spec), RangeError);
  spec.features = {"AZ"};
  CHECK_THROWS_AS(gen_synthetic(spec), InputError);
  spec.features.clear();
  CHECK_THROWS_AS(gen_synthetic(spec), RangeError);
  CHECK_THROWS_AS(synthetic_alphabet(1), RangeError);
  CHECK(synthetic_alphabet(4).symbols() == "ABCD");
}

TEST_CASE("portable uniform draws") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    CHECK(uniform_below(rng, 7) < 7);
    double u = uniform_unit(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::mt19937_64 a(5), b(5);
  CHECK(uniform_below(a, 1000003) == uniform_below(b, 1000003));
}
