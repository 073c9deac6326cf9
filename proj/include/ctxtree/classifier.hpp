#pragma once

// Average-common-length classification.
//
//   L(Y)    average match length when sliding along the training sequence
//   L(X|Y)  average match length when sliding along a test sequence
//   D(X|Y)  = (L(X|Y) - L(Y)) / L_max;  X is acceptable iff D > T
//
// A match base supplies the per-position match: the full index
// (min_count = 1), a compacted tree, a standalone tree or an explicit
// feature set. Everything on the decision path is an exact rational.

#include "ctxtree/compaction.hpp"
#include "ctxtree/feature_set.hpp"
#include "ctxtree/parallel.hpp"
#include "ctxtree/rational.hpp"
#include "ctxtree/suffix_index.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctxtree {

template <class B>
concept MatchBase = requires(const B& b, std::span<const Code> s, std::size_t i, std::size_t cap) {
  { b.longest_match(s, i, cap) } -> std::convertible_to<std::size_t>;
  { b.max_depth() } -> std::convertible_to<std::size_t>;
};

/// The index queried with an occurrence threshold. min_count = 1 is the
/// uncompacted reference.
struct IndexBase {
  const SuffixIndex* index;
  std::uint64_t min_count = 1;

  std::size_t longest_match(std::span<const Code> x, std::size_t i, std::size_t cap) const {
    return index->longest_match(x, i, cap, min_count);
  }
  std::size_t max_depth() const { return index->max_depth(); }
};

struct MatchProfile {
  std::vector<std::uint32_t> lengths;  // l_i for i = 1..n, stored 0-based
  std::uint64_t matched = 0;           // #{i : l_i >= 1}
  std::uint64_t total_length = 0;      // sum of l_i
};

template <MatchBase B>
MatchProfile match_profile(const B& base, std::span<const Code> s, std::size_t cap) {
  MatchProfile p;
  p.lengths.resize(s.size());
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const auto len = static_cast<std::uint32_t>(base.longest_match(s, i, cap));
    p.lengths[i - 1] = len;
    p.matched += len > 0 ? 1 : 0;
    p.total_length += len;
  }
  return p;
}

template <MatchBase B>
MatchProfile match_profile(const B& base, std::span<const Code> s) {
  return match_profile(base, s, base.max_depth());
}

enum class AvgMode {
  matched,  // sum over matched positions / number of matched positions
  all,      // sum / all positions (unmatched count as 0)
};

AvgMode parse_avg_mode(std::string_view name);
std::string_view to_string(AvgMode mode);

/// nullopt when the denominator is zero.
std::optional<Rational> average_length(const MatchProfile& profile, AvgMode mode);

/// Average for a training profile; throws UndefinedAverage when nothing matched.
Rational required_average(const MatchProfile& profile, AvgMode mode);

struct TrainingStats {
  Rational average;       // L(Y)
  std::size_t max_depth;  // L_max
  AvgMode mode;
};

template <MatchBase B>
TrainingStats training_stats(const B& base, std::span<const Code> y, AvgMode mode = AvgMode::matched) {
  return {required_average(match_profile(base, y), mode), base.max_depth(), mode};
}

template <MatchBase B>
Rational avg_train_length(const B& base, std::span<const Code> y, AvgMode mode = AvgMode::matched) {
  return required_average(match_profile(base, y), mode);
}

template <MatchBase B>
Rational avg_test_length(const B& base, std::span<const Code> x, AvgMode mode = AvgMode::matched) {
  return required_average(match_profile(base, x), mode);
}

enum class Decision { acceptable, not_acceptable };
std::string_view to_string(Decision decision);

struct SimilarityReport {
  std::string name;
  Rational train_average;                 // L(Y)
  std::optional<Rational> test_average;   // L(X|Y); nullopt when undefined
  std::size_t max_depth = 0;              // L_max
  std::optional<Rational> similarity;     // D; nullopt when undefined
  Rational threshold;                     // T
  Decision decision = Decision::not_acceptable;
  std::uint64_t matched_positions = 0;
  std::uint64_t length = 0;
  std::uint64_t total_match_length = 0;
  std::uint32_t longest = 0;
  std::uint64_t unknown_symbols = 0;
  /// "no-matches" when L(X|Y) is undefined; the report is then not acceptable.
  std::vector<std::string> flags;

  bool scored() const { return similarity.has_value(); }
};

/// D = (L(X|Y) - L(Y)) / L_max, acceptable iff D > T.
SimilarityReport similarity_from_profile(const MatchProfile& profile, const TrainingStats& stats,
                                         const Rational& threshold, std::string name = {});

template <MatchBase B>
SimilarityReport similarity(const B& base, const TrainingStats& stats, std::span<const Code> x,
                            const Rational& threshold, std::string name = {}) {
  auto report = similarity_from_profile(match_profile(base, x, stats.max_depth), stats, threshold, std::move(name));
  report.unknown_symbols = static_cast<std::uint64_t>(std::count(x.begin(), x.end(), kUnknownCode));
  return report;
}

template <MatchBase B>
SimilarityReport similarity(const B& base, const TrainingStats& stats, const Sequence& x, const Rational& threshold) {
  return similarity(base, stats, x.codes(), threshold, x.name());
}

/// Scores every test; reports come back in input order whatever `threads` is.
template <MatchBase B>
std::vector<SimilarityReport> score_all(const B& base, const TrainingStats& stats, std::span<const Sequence> tests,
                                        const Rational& threshold, unsigned threads = 1) {
  std::vector<SimilarityReport> out(tests.size());
  parallel_for(tests.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) out[k] = similarity(base, stats, tests[k], threshold);
  });
  return out;
}

struct RankedEntry {
  std::size_t input_index;
  SimilarityReport report;
};

/// Descending by D, stable for ties; unscored reports sink to the bottom.
std::vector<RankedEntry> rank_reports(std::vector<SimilarityReport> reports);

template <MatchBase B>
std::vector<RankedEntry> sort_tests(const B& base, const TrainingStats& stats, std::span<const Sequence> tests,
                                    const Rational& threshold, unsigned threads = 1) {
  return rank_reports(score_all(base, stats, tests, threshold, threads));
}

}  // namespace ctxtree
