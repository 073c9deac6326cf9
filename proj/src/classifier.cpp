#include "ctxtree/classifier.hpp"

#include "ctxtree/error.hpp"

#include <algorithm>

namespace ctxtree {

AvgMode parse_avg_mode(std::string_view name) {
  if (name == "matched") return AvgMode::matched;
  if (name == "all") return AvgMode::all;
  throw InputError("unknown averaging mode: " + std::string(name));
}

std::string_view to_string(AvgMode mode) { return mode == AvgMode::matched ? "matched" : "all"; }

std::string_view to_string(Decision decision) {
  return decision == Decision::acceptable ? "acceptable" : "not-acceptable";
}

std::optional<Rational> average_length(const MatchProfile& profile, AvgMode mode) {
  const std::uint64_t denominator = mode == AvgMode::matched ? profile.matched : profile.lengths.size();
  // a profile with no matched position has no defined average in either mode
  if (denominator == 0 || profile.matched == 0) return std::nullopt;
  return make_rational(profile.total_length, denominator);
}

Rational required_average(const MatchProfile& profile, AvgMode mode) {
  auto avg = average_length(profile, mode);
  if (!avg) throw UndefinedAverage("average match length is undefined: no position matched");
  return *avg;
}

SimilarityReport similarity_from_profile(const MatchProfile& profile, const TrainingStats& stats,
                                         const Rational& threshold, std::string name) {
  if (stats.max_depth < 1) throw RangeError("L_max must be at least 1");
  SimilarityReport r;
  r.name = std::move(name);
  r.train_average = stats.average;
  r.max_depth = stats.max_depth;
  r.threshold = threshold;
  r.matched_positions = profile.matched;
  r.length = profile.lengths.size();
  r.total_match_length = profile.total_length;
  if (!profile.lengths.empty()) r.longest = *std::max_element(profile.lengths.begin(), profile.lengths.end());
  r.test_average = average_length(profile, stats.mode);
  if (!r.test_average) {
    r.flags.emplace_back("no-matches");
    r.decision = Decision::not_acceptable;
    return r;
  }
  r.similarity = (*r.test_average - stats.average) / Rational(stats.max_depth);
  r.decision = *r.similarity > threshold ? Decision::acceptable : Decision::not_acceptable;
  return r;
}

std::vector<RankedEntry> rank_reports(std::vector<SimilarityReport> reports) {
  std::vector<RankedEntry> out;
  out.reserve(reports.size());
  for (std::size_t k = 0; k < reports.size(); ++k) out.push_back({k, std::move(reports[k])});
  std::stable_sort(out.begin(), out.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.report.scored() != b.report.scored()) return a.report.scored();
    if (!a.report.scored()) return false;
    return *a.report.similarity > *b.report.similarity;
  });
  return out;
}

}  // namespace ctxtree
