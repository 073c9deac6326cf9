#include "ctxtree/window_scan.hpp"

#include <algorithm>

namespace ctxtree {

MatchMasks::MatchMasks(std::vector<std::uint64_t> masks, std::size_t max_depth)
    : masks_(std::move(masks)), max_depth_(max_depth) {
  length_prefix_.assign(masks_.size() + 1, 0);
  matched_prefix_.assign(masks_.size() + 1, 0);
  for (std::size_t p = 0; p < masks_.size(); ++p) {
    const std::size_t len = full_length(p);
    length_prefix_[p + 1] = length_prefix_[p] + len;
    matched_prefix_[p + 1] = matched_prefix_[p] + (len > 0 ? 1 : 0);
  }
}

DiffPrefix::DiffPrefix(const MatchMasks& ref, const MatchMasks& cand) {
  if (ref.size() != cand.size()) throw RangeError("match masks cover different sequences");
  prefix_.assign(ref.size() + 1, 0);
  for (std::size_t p = 0; p < ref.size(); ++p) {
    const std::size_t r = ref.full_length(p);
    const bool differs = r > 0 && cand.full_length(p) != r;
    prefix_[p + 1] = prefix_[p] + (differs ? 1 : 0);
  }
}

WindowTotals window_totals(const MatchMasks& ref, const MatchMasks& cand, const DiffPrefix& diff, std::size_t start,
                           std::size_t width) {
  const std::size_t depth = std::max(ref.max_depth(), cand.max_depth());
  const std::size_t truncated = depth == 0 ? 0 : std::min(width, depth - 1);
  const std::size_t base = start - 1;

  WindowTotals t;
  for (std::size_t k = 1; k <= truncated; ++k) {
    const std::size_t p = base + k - 1;
    const std::size_t r = longest_within(ref.mask(p), k);
    const std::size_t c = longest_within(cand.mask(p), k);
    t.ref_sum += r;
    t.ref_matched += r > 0 ? 1 : 0;
    t.cand_sum += c;
    t.cand_matched += c > 0 ? 1 : 0;
    t.diff_positions += (r > 0 && c != r) ? 1 : 0;
  }
  const std::size_t begin = base + truncated;
  const std::size_t end = base + width;
  t.ref_sum += ref.length_sum(begin, end);
  t.ref_matched += ref.matched_count(begin, end);
  t.cand_sum += cand.length_sum(begin, end);
  t.cand_matched += cand.matched_count(begin, end);
  t.diff_positions += diff.sum(begin, end);
  return t;
}

}  // namespace ctxtree
