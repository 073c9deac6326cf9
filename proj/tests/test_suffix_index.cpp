#include "ctxtree/error.hpp"
#include "ctxtree/suffix_array.hpp"
#include "ctxtree/suffix_index.hpp"

#include "naive_oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace ctxtree;

namespace {

std::vector<SaIndex> naive_sa(const std::vector<Code>& t) {
  std::vector<SaIndex> sa(t.size());
  std::iota(sa.begin(), sa.end(), 0);
  std::sort(sa.begin(), sa.end(), [&](SaIndex a, SaIndex b) {
    return std::lexicographical_compare(t.begin() + a, t.end(), t.begin() + b, t.end());
  });
  return sa;
}

}  // namespace

TEST_CASE("suffix array matches a comparison sort") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    const std::size_t a = 2 + rng() % 5;
    const std::size_t n = 1 + rng() % 300;
    auto t = oracle::random_codes(rng, n, a);
    if (round % 7 == 0) std::fill(t.begin(), t.end(), Code{1});
    CHECK(build_suffix_array(t, a) == naive_sa(t));
  }
}

TEST_CASE("toy index counts") {
  Alphabet a("ABCDE");
  Sequence y = testutil::seq(a, "ABACDCBEDEDE");
  auto idx = SuffixIndex::build(y, a, 3);
  CHECK(idx.source_length() == 12);
  CHECK(idx.count(a.encode("A")) == 2);
  CHECK(idx.count(a.encode("ED")) == 2);  // backward: E preceded by D
  CHECK(idx.count(a.encode("DE")) == 2);
  CHECK(idx.count(a.encode("EDE")) == 2);
  CHECK(idx.count(a.encode("AB")) == 1);
  CHECK(idx.count(a.encode("BB")) == 0);
  CHECK_THROWS_AS(idx.count(a.encode("EDED")), DepthExceeded);
  CHECK_THROWS_AS(idx.count(std::vector<Code>{}), RangeError);
  CHECK(idx.empirical_prob(a.encode("E")).value() == Rational(1, 4));
  CHECK(idx.training_sequence() == y);
  CHECK_THROWS_AS(SuffixIndex::build(y, a, 12), RangeError);
  CHECK_THROWS_AS(SuffixIndex::build(y, a, 0), RangeError);
}

TEST_CASE("count and longest_match agree with the naive scanner") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    const std::size_t a = std::vector<std::size_t>{2, 3, 4, 20}[rng() % 4];
    const std::size_t n = 2 + rng() % 600;
    const std::size_t depth = 1 + rng() % std::min<std::size_t>(8, n - 1);
    auto y = oracle::random_codes(rng, n, a);
    Alphabet alpha(std::string_view("ABCDEFGHIJKLMNOPQRST").substr(0, a));
    auto idx = SuffixIndex::build(Sequence(y), alpha, depth);

    for (int q = 0; q < 10; ++q) {
      const std::size_t len = 1 + rng() % depth;
      std::vector<Code> w;
      if (rng() % 2 && len <= n) {
        const std::size_t i = len + rng() % (n - len + 1);
        w = oracle::context(y, i, len);
      } else {
        w = oracle::random_codes(rng, len, a);
      }
      CHECK(idx.count(w) == oracle::count(y, w));
    }
    auto x = oracle::random_codes(rng, 1 + rng() % 30, a);
    if (rng() % 3 == 0) x[rng() % x.size()] = kUnknownCode;
    for (std::size_t i = 1; i <= x.size(); ++i) {
      const std::uint64_t c = 1 + rng() % 3;
      const std::size_t cap = 1 + rng() % (depth + 2);
      CHECK(idx.longest_match(x, i, cap, c) == oracle::longest_match(y, x, i, std::min(cap, depth), c));
    }
  }
}

TEST_CASE("cursor walk") {
  Alphabet a("AB");
  auto idx = SuffixIndex::build(testutil::seq(a, "ABBABBAB"), a, 4);
  auto c = idx.root();
  CHECK(c.count() == 8);
  CHECK(idx.extend(c, 1));  // B
  CHECK(c.count() == 5);
  CHECK(idx.extend(c, 0));  // BA
  CHECK(c.count() == 3);
  auto before = c;
  CHECK_FALSE(idx.extend(c, 0));  // BAA never occurs
  CHECK(c.interval.lo == before.interval.lo);
  CHECK(c.depth == 2);
  CHECK_FALSE(idx.extend(c, kUnknownCode));
}

TEST_CASE("index persistence round-trip") {
  std::mt19937_64 rng(3);
  Alphabet a("ACGT");
  auto y = testutil::random_seq(rng, 5000, 4);
  auto idx = SuffixIndex::build(y, a, 6);
  std::stringstream buf;
  idx.save(buf, R"({"k":1})");
  const std::string bytes = buf.str();

  std::string config;
  std::istringstream in(bytes);
  auto back = SuffixIndex::load(in, &a, &config);
  CHECK(config == R"({"k":1})");
  CHECK(back.training_sequence() == y);
  CHECK(back.max_depth() == 6);
  for (int q = 0; q < 500; ++q) {
    auto w = oracle::random_codes(rng, 1 + rng() % 6, 4);
    CHECK(back.count(w) == idx.count(w));
  }
  std::stringstream again;
  back.save(again, config);
  CHECK(again.str() == bytes);

  Alphabet other("ACGU");
  std::istringstream mismatch(bytes);
  CHECK_THROWS_AS(SuffixIndex::load(mismatch, &other), FormatError);
  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(SuffixIndex::load(truncated), FormatError);
  std::istringstream trailing(bytes + "x");
  CHECK_THROWS_AS(SuffixIndex::load(trailing), FormatError);
  std::istringstream garbage("not an index at all");
  CHECK_THROWS_AS(SuffixIndex::load(garbage), FormatError);
}
