#pragma once

// Sliding-window aggregation of per-position match lengths.
//
// A window starting at s is classified as a standalone sequence, so at its
// k-th position only contexts of length <= k are visible. For each position
// of Y we keep the set of matching context lengths as a bit mask (bit j-1
// for length j); the truncated match is then the highest set bit below k.
// Positions deeper than max_depth into a window see their full match, so a
// window costs O(max_depth) plus prefix-sum lookups.

#include "ctxtree/error.hpp"
#include "ctxtree/parallel.hpp"
#include "ctxtree/sequence.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace ctxtree {

inline constexpr std::size_t kMaxWindowDepth = 64;

inline std::uint64_t low_bits(std::size_t k) {
  return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

/// Longest length in `mask` not exceeding `cap`, or 0.
inline std::size_t longest_within(std::uint64_t mask, std::size_t cap) {
  const std::uint64_t m = mask & low_bits(cap);
  return m == 0 ? 0 : static_cast<std::size_t>(64 - std::countl_zero(m));
}

class MatchMasks {
 public:
  MatchMasks() = default;
  MatchMasks(std::vector<std::uint64_t> masks, std::size_t max_depth);

  std::size_t size() const { return masks_.size(); }
  std::size_t max_depth() const { return max_depth_; }
  std::uint64_t mask(std::size_t pos0) const { return masks_[pos0]; }
  std::size_t full_length(std::size_t pos0) const { return longest_within(masks_[pos0], 64); }

  /// Prefix sums over full (untruncated) lengths and matched indicators.
  std::uint64_t length_sum(std::size_t begin0, std::size_t end0) const {
    return length_prefix_[end0] - length_prefix_[begin0];
  }
  std::uint64_t matched_count(std::size_t begin0, std::size_t end0) const {
    return matched_prefix_[end0] - matched_prefix_[begin0];
  }

 private:
  std::vector<std::uint64_t> masks_;
  std::size_t max_depth_ = 0;
  std::vector<std::uint64_t> length_prefix_;
  std::vector<std::uint64_t> matched_prefix_;
};

/// A base whose matching lengths at a position always form {1..J}.
template <class B>
concept PrefixClosedBase = requires(const B& b, std::span<const Code> s, std::size_t i, std::size_t cap) {
  { b.longest_match(s, i, cap) } -> std::convertible_to<std::size_t>;
  { b.max_depth() } -> std::convertible_to<std::size_t>;
};

template <class B>
concept MaskedBase = requires(const B& b, std::span<const Code> s, std::size_t i, std::size_t cap) {
  { b.match_mask(s, i, cap) } -> std::convertible_to<std::uint64_t>;
  { b.max_depth() } -> std::convertible_to<std::size_t>;
};

template <class B>
std::uint64_t match_mask_at(const B& base, std::span<const Code> s, std::size_t i, std::size_t cap) {
  if constexpr (MaskedBase<B>) {
    return base.match_mask(s, i, cap);
  } else {
    return low_bits(base.longest_match(s, i, cap));
  }
}

/// Match masks of `base` at every position of `y`.
template <class B>
MatchMasks compute_masks(const B& base, std::span<const Code> y, unsigned threads = 1) {
  const std::size_t depth = base.max_depth();
  if (depth > kMaxWindowDepth) {
    throw RangeError("window evaluation supports match depths up to 64, got " + std::to_string(depth));
  }
  std::vector<std::uint64_t> masks(y.size());
  parallel_for(y.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) masks[p] = match_mask_at(base, y, p + 1, depth);
  });
  return MatchMasks(std::move(masks), depth);
}

struct WindowTotals {
  std::uint64_t ref_sum = 0;
  std::uint64_t ref_matched = 0;
  std::uint64_t cand_sum = 0;
  std::uint64_t cand_matched = 0;
  /// Positions where the reference matches and the candidate's truncated
  /// match length differs from it.
  std::uint64_t diff_positions = 0;
};

/// Per-position indicator prefix sums of "reference matches, candidate
/// differs" on full lengths; pairs with window_totals.
class DiffPrefix {
 public:
  DiffPrefix(const MatchMasks& ref, const MatchMasks& cand);
  std::uint64_t sum(std::size_t begin0, std::size_t end0) const { return prefix_[end0] - prefix_[begin0]; }

 private:
  std::vector<std::uint64_t> prefix_;
};

/// Totals for the window of `width` positions starting at 1-based `start`.
/// Both mask sets must cover the same sequence with the same depth.
WindowTotals window_totals(const MatchMasks& ref, const MatchMasks& cand, const DiffPrefix& diff, std::size_t start,
                           std::size_t width);

}  // namespace ctxtree
