#include "ctxtree/compaction.hpp"
#include "ctxtree/error.hpp"

#include "naive_oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

using namespace ctxtree;

namespace {

using Codes = oracle::Codes;

// Every context of y up to `depth` with count >= c, by brute force.
std::map<Codes, std::uint64_t> naive_retained(const Codes& y, std::size_t depth, std::uint64_t c) {
  std::map<Codes, std::uint64_t> out;
  for (std::size_t i = 1; i <= y.size(); ++i) {
    for (std::size_t j = 1; j <= std::min(i, depth); ++j) out[oracle::context(y, i, j)] = 0;
  }
  std::map<Codes, std::uint64_t> kept;
  for (auto& [w, _] : out) {
    auto n = oracle::count(y, w);
    if (n >= c) kept[w] = n;
  }
  return kept;
}

bool is_proper_prefix(const Codes& a, const Codes& b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::map<Codes, std::uint64_t> leaves_of(const CompactedTree& t) {
  std::map<Codes, std::uint64_t> out;
  t.for_each_leaf([&](std::span<const Code> w, std::uint64_t n) { out[Codes(w.begin(), w.end())] = n; });
  return out;
}

}  // namespace

TEST_CASE("threshold arithmetic") {
  CompactionParams p{Rational(1, 20), 1000, 20};
  CHECK(threshold(p) == Rational(1, 400000));
  CHECK(leaf_bound(p) == 400000);
  CHECK(leaf_bound(CompactionParams{Rational(3), 10, 1}) == 4);
  CHECK(min_count_for(Rational(1, 400000), 1000000) == 3);
  CHECK(min_count_for(Rational(1, 400000), 10) == 1);
  CHECK(min_count_for(Rational(1, 4), 12) == 3);
  CHECK_THROWS_AS(threshold(CompactionParams{Rational(0), 10, 1}), RangeError);
  CHECK_THROWS_AS(threshold(CompactionParams{Rational(1), 0, 1}), RangeError);
  CHECK_THROWS_AS(threshold(CompactionParams{Rational(1), 10, 0}), RangeError);
}

TEST_CASE("retained set and leaves match brute force") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 60; ++round) {
    const std::size_t a = 2 + rng() % 3;
    const std::size_t n = 20 + rng() % 200;
    const std::size_t depth = 1 + rng() % 6;
    const std::uint64_t c = 1 + rng() % 6;
    auto y = oracle::random_codes(rng, n, a);
    Alphabet alpha(std::string_view("ABCD").substr(0, a));
    auto idx = SuffixIndex::build(Sequence(y), alpha, depth);
    auto tree = compact_with_min_count(idx, c);

    auto want = naive_retained(y, depth, c);
    std::map<Codes, std::uint64_t> got;
    tree.for_each_retained([&](std::span<const Code> w, std::uint64_t k) { got[Codes(w.begin(), w.end())] = k; });
    CHECK(got == want);

    std::map<Codes, std::uint64_t> want_leaves;
    for (auto& [w, k] : want) {
      bool maximal = true;
      for (auto& [v, _] : want) maximal = maximal && !is_proper_prefix(w, v);
      if (maximal) want_leaves[w] = k;
    }
    auto leaves = leaves_of(tree);
    CHECK(leaves == want_leaves);
    CHECK(tree.leaf_count() == leaves.size());
    CHECK(tree.retained_count() == want.size());

    // leaves are prefix-free, so their probabilities sum to at most 1
    std::uint64_t mass = 0;
    for (auto& [w, k] : leaves) mass += k;
    CHECK(mass <= n);
  }
}

TEST_CASE("compaction bound and nesting") {
  std::mt19937_64 rng(9);
  Alphabet a("ACGT");
  auto y = testutil::random_seq(rng, 20000, 4);
  auto idx = SuffixIndex::build(y, a, 10);
  std::set<Codes> previous;
  bool first = true;
  for (auto eps : {Rational(1, 100), Rational(1, 20), Rational(1, 10), Rational(1, 2), Rational(1)}) {
    CompactionParams p{eps, 50, 4};
    auto tree = compact(idx, p);
    CHECK(tree.leaf_count() <= leaf_bound(p));
    std::set<Codes> kept;
    tree.for_each_retained([&](std::span<const Code> w, std::uint64_t) { kept.emplace(w.begin(), w.end()); });
    if (!first) CHECK(std::includes(previous.begin(), previous.end(), kept.begin(), kept.end()));
    previous = std::move(kept);
    first = false;
  }
}

TEST_CASE("impossible threshold gives an empty tree with a warning") {
  Alphabet a("AB");
  auto idx = SuffixIndex::build(testutil::seq(a, "ABBABAAB"), a, 3);
  auto tree = compact(idx, CompactionParams{Rational(5), 1, 1});
  CHECK(tree.leaf_count() == 0);
  CHECK(tree.warnings().size() == 2);
  CHECK(tree.longest_match(a.encode("AB"), 2, 3) == 0);
  CHECK(tree.export_standalone().leaf_count() == 0);
}

TEST_CASE("standalone tree answers like the compacted tree and round-trips") {
  std::mt19937_64 rng(21);
  Alphabet a("ACGT");
  auto y = testutil::random_seq(rng, 3000, 4);
  auto idx = SuffixIndex::build(y, a, 7);
  auto tree = compact(idx, CompactionParams{Rational(1, 10), 20, 3});
  auto st = tree.export_standalone();
  st.training_averages = TrainingAverages{Rational(7, 5), Rational(3, 2)};
  st.config_json = R"({"cmd":"compact"})";
  CHECK(st.leaf_count() == tree.leaf_count());

  std::ostringstream text, binary;
  st.save_text(text);
  st.save_binary(binary);
  std::istringstream tin(text.str()), bin(binary.str());
  auto t2 = StandaloneTree::load_text(tin);
  auto b2 = StandaloneTree::load_binary(bin);
  std::ostringstream text2, binary2;
  t2.save_text(text2);
  b2.save_binary(binary2);
  CHECK(text2.str() == text.str());
  CHECK(binary2.str() == binary.str());
  CHECK(t2.epsilon == Rational(1, 10));
  CHECK(t2.min_count == tree.min_count());
  REQUIRE(t2.training_averages.has_value());
  CHECK(t2.training_averages->all == Rational(3, 2));
  CHECK(t2.config_json == st.config_json);

  for (int q = 0; q < 2000; ++q) {
    auto x = oracle::random_codes(rng, 12, 4);
    const std::size_t i = 1 + rng() % 12;
    const std::size_t cap = 1 + rng() % 7;
    const auto want = tree.longest_match(x, i, cap);
    CHECK(st.longest_match(x, i, cap) == want);
    CHECK(t2.longest_match(x, i, cap) == want);
    CHECK(b2.longest_match(x, i, cap) == want);
  }

  std::istringstream bad("#ctxtree-tree v1\n#alphabet=AB\n");
  CHECK_THROWS_AS(StandaloneTree::load_text(bad), FormatError);
  StandaloneTree manual(Alphabet("AB"), 3);
  manual.add_leaf(std::vector<Code>{0, 1}, 2);
  CHECK_THROWS_AS(manual.add_leaf(std::vector<Code>{0}, 3), FormatError);
  CHECK_THROWS_AS(manual.add_leaf(std::vector<Code>{0, 1, 1}, 1), FormatError);
}

TEST_CASE("no-op compaction leaves are the maximal contexts") {
  Alphabet a("ABCDE");
  auto y = testutil::seq(a, "ABACDCBEDEDE");
  auto idx = SuffixIndex::build(y, a, 3);
  auto leaves = leaves_of(compact_with_min_count(idx, 1));
  std::set<std::string> names;
  for (auto& [w, _] : leaves) names.insert(a.decode(w));
  // contexts of length 3, plus BA at the left edge, which cannot grow
  std::set<std::string> want = {"BA", "ABA", "CAB", "DCA", "CDC", "BCD", "EBC", "DEB", "EDE", "DED"};
  CHECK(names == want);
}

TEST_CASE("pruned mass diagnostic against per-window brute force") {
  Alphabet a("ABC");
  std::string text;
  for (int k = 0; k < 30; ++k) text += "AB";
  text[25] = 'C';
  auto y = testutil::seq(a, text);
  auto yc = testutil::codes(y);
  auto idx = SuffixIndex::build(y, a, 3);
  CompactionParams p{Rational(1, 2), 6, 1};  // tau = 1/12, min_count = 5
  auto tree = compact(idx, p);
  REQUIRE(tree.min_count() == 5);

  std::uint64_t total = 0;
  const std::size_t windows = y.size() - p.test_length;
  for (std::size_t s = 1; s <= windows; ++s) {
    Codes x(yc.begin() + static_cast<long>(s - 1), yc.begin() + static_cast<long>(s - 1 + p.test_length));
    for (std::size_t i = 1; i <= x.size(); ++i) {
      auto full = oracle::longest_match(yc, x, i, 3, 1);
      auto kept = oracle::longest_match(yc, x, i, 3, 5);
      total += full > 0 && kept != full;
    }
  }
  CHECK(total > 0);
  CHECK(pruned_mass_bound(idx, p) == make_rational(total, windows));
}
