#include "ctxtree/classifier.hpp"
#include "ctxtree/error.hpp"

#include "naive_oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace ctxtree;

namespace {

const Alphabet kToy("ABCDE");

struct Golden {
  Sequence y = testutil::seq(kToy, "ABACDCBEDEDE", "Y");
  Sequence x = testutil::seq(kToy, "AABDADAD", "X");
  FeatureSet f = FeatureSet::parse(std::vector<std::string>{"A", "BA", "C", "CD"}, kToy);
};

}  // namespace

TEST_CASE("oracle reproduces the worked example") {
  Golden g;
  std::vector<oracle::Codes> feats(g.f.features().begin(), g.f.features().end());
  auto match = [&](const oracle::Codes& s, std::size_t i) { return oracle::feature_match(feats, s, i); };
  auto px = oracle::profile(testutil::codes(g.x), match);
  auto py = oracle::profile(testutil::codes(g.y), match);
  CHECK(px == std::vector<std::size_t>{1, 1, 2, 0, 1, 0, 1, 0});
  auto ly = *oracle::average(py, true);
  auto lx = *oracle::average(px, true);
  CHECK(ly == Rational(7, 5));
  CHECK(lx == Rational(6, 5));
  CHECK((lx - ly) / 2 == Rational(-1, 10));
}

TEST_CASE("golden example through the classifier") {
  Golden g;
  auto profile = match_profile(g.f, g.x.codes());
  CHECK(profile.lengths == std::vector<std::uint32_t>{1, 1, 2, 0, 1, 0, 1, 0});

  std::vector<std::string> matched;
  for (std::size_t i = 1; i <= g.x.size(); ++i) {
    if (auto len = profile.lengths[i - 1]) matched.push_back(kToy.decode(context_at(g.x, i, len)));
  }
  CHECK(matched == std::vector<std::string>{"A", "A", "BA", "A", "A"});

  auto stats = training_stats(g.f, g.y.codes());
  CHECK(stats.average == Rational(7, 5));
  CHECK(stats.max_depth == 2);
  CHECK(avg_test_length(g.f, g.x.codes()) == Rational(6, 5));

  auto r = similarity(g.f, stats, g.x, Rational(-1, 5));
  REQUIRE(r.similarity.has_value());
  CHECK(*r.similarity == Rational(-1, 10));
  CHECK(r.decision == Decision::acceptable);
  CHECK(r.matched_positions == 5);
  CHECK(r.longest == 2);

  CHECK(similarity(g.f, stats, g.x, Rational(0)).decision == Decision::not_acceptable);
  // strict inequality: D == T is rejected
  CHECK(similarity(g.f, stats, g.x, Rational(-1, 10)).decision == Decision::not_acceptable);
}

TEST_CASE("all-positions averaging") {
  Golden g;
  auto stats = training_stats(g.f, g.y.codes(), AvgMode::all);
  CHECK(stats.average == Rational(7, 12));
  auto r = similarity(g.f, stats, g.x, Rational(0));
  CHECK(*r.test_average == Rational(6, 8));
  CHECK(*r.similarity == (Rational(3, 4) - Rational(7, 12)) / 2);
}

TEST_CASE("no matches is flagged, not scored") {
  Golden g;
  auto stats = training_stats(g.f, g.y.codes());
  auto none = testutil::seq(kToy, "EEDD", "none");
  auto r = similarity(g.f, stats, none, Rational(-1));
  CHECK_FALSE(r.scored());
  CHECK(r.decision == Decision::not_acceptable);
  CHECK(r.flags == std::vector<std::string>{"no-matches"});
  CHECK_THROWS_AS(avg_test_length(g.f, none.codes()), UndefinedAverage);
}

TEST_CASE("unknown symbols never match") {
  Golden g;
  auto stats = training_stats(g.f, g.y.codes());
  std::vector<Code> x = kToy.encode("BA");
  x.insert(x.begin() + 1, kUnknownCode);
  auto r = similarity(g.f, stats, std::span<const Code>(x), Rational(-1), "odd");
  CHECK(r.unknown_symbols == 1);
  CHECK(r.matched_positions == 1);  // only the trailing A
}

TEST_CASE("index base and the full-index classifier") {
  Golden g;
  auto idx = SuffixIndex::build(g.y, kToy, 3);
  IndexBase base{&idx, 1};
  auto stats = training_stats(base, g.y.codes());
  auto yc = testutil::codes(g.y);
  auto match = [&](const oracle::Codes& s, std::size_t i) { return oracle::longest_match(yc, s, i, 3, 1); };
  CHECK(stats.average == *oracle::average(oracle::profile(yc, match), true));
  auto r = similarity(base, stats, g.x, Rational(0));
  CHECK(*r.test_average == *oracle::average(oracle::profile(testutil::codes(g.x), match), true));
}

TEST_CASE("sorting puts the training sequence first") {
  Golden g;
  auto stats = training_stats(g.f, g.y.codes());
  std::vector<Sequence> tests = {g.x, g.y, testutil::seq(kToy, "EEDD", "none")};
  auto ranked = sort_tests(g.f, stats, tests, Rational(0), 2);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].report.name == "Y");
  CHECK(*ranked[0].report.similarity == 0);
  CHECK(ranked[1].report.name == "X");
  CHECK(ranked[2].report.name == "none");
  CHECK(ranked[2].input_index == 2);

  auto reports = score_all(g.f, stats, tests, Rational(0), 3);
  CHECK(reports[0].name == "X");
  CHECK(reports[1].name == "Y");
}
