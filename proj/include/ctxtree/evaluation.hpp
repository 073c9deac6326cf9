#pragma once

// Sliding-window evaluation of a compacted classifier against its reference.
//
// Every length-N window of Y (starts 1 .. N'-N) is classified as a
// standalone test sequence by both bases at the same threshold T. The
// reference decides which windows are acceptable (q is their fraction);
// p_delta is the fraction of those the candidate rejects, checked against
// epsilon / q.

#include "ctxtree/classifier.hpp"
#include "ctxtree/compaction.hpp"
#include "ctxtree/rational.hpp"
#include "ctxtree/window_scan.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctxtree {

struct EvalParams {
  std::size_t window = 1;  // N
  Rational threshold{0};   // T
  CompactionParams compaction;
  AvgMode mode = AvgMode::matched;
  unsigned threads = 1;
  std::uint64_t seed = 0;  // echoed into reports only
  bool keep_windows = false;
};

/// Match masks over Y plus the training average they imply.
struct PreparedBase {
  MatchMasks masks;
  TrainingStats stats;
};

PreparedBase prepare_masks(MatchMasks masks, AvgMode mode);

template <MatchBase B>
PreparedBase prepare(const B& base, std::span<const Code> y, AvgMode mode, unsigned threads = 1) {
  return prepare_masks(compute_masks(base, y, threads), mode);
}

struct WindowRecord {
  std::size_t start = 0;
  std::optional<Rational> ref_similarity;
  std::optional<Rational> cand_similarity;
  bool ref_accepts = false;
  bool cand_accepts = false;
  std::uint64_t diff_positions = 0;
};

struct EvalReport {
  std::uint64_t window_count = 0;
  std::uint64_t accepted_ref = 0;
  std::uint64_t accepted_cand = 0;
  std::uint64_t rejected_by_cand = 0;       // among windows the reference accepts
  std::uint64_t accepted_by_cand_only = 0;  // reference rejects, candidate accepts
  Rational q{0};
  Rational p_delta{0};
  std::optional<Rational> bound;  // epsilon / q; nullopt when q = 0
  bool pass = true;
  bool vacuous = false;  // q = 0
  /// Mean number of positions per window whose reference match exists and
  /// whose candidate match differs.
  Rational pruned_mass{0};
  /// Flipped windows containing such a position, and the remainder, which
  /// flipped only because the training average moved.
  std::uint64_t flips_with_pruned_hit = 0;
  std::uint64_t flips_without_pruned_hit = 0;
  Rational ref_train_average{0};
  Rational cand_train_average{0};
  std::vector<WindowRecord> windows;
};

/// Pure function of the preceding EvalReport fields.
bool bound_holds(const Rational& p_delta, const std::optional<Rational>& bound);

/// Throws RangeError when the bases cover different sequences or depths, or
/// when N >= N'.
EvalReport window_eval(const PreparedBase& ref, const PreparedBase& cand, const EvalParams& params);

template <MatchBase R, MatchBase C>
EvalReport window_eval(const R& ref, const C& cand, std::span<const Code> y, const EvalParams& params) {
  return window_eval(prepare(ref, y, params.mode, params.threads), prepare(cand, y, params.mode, params.threads),
                     params);
}

/// Window starts (1-based) that `base` accepts at threshold T.
std::vector<std::size_t> accepted_windows(const PreparedBase& base, std::size_t window, const Rational& threshold);

/// Fraction of `accept_set` windows that `base` rejects; nullopt for an
/// empty accept set.
std::optional<Rational> error_rate(const PreparedBase& base, std::size_t window, const Rational& threshold,
                                   std::span<const std::size_t> accept_set);

/// Mean positions per window where `ref` matches and `cand` differs.
Rational pruned_mass(const PreparedBase& ref, const PreparedBase& cand, std::size_t window);

}  // namespace ctxtree
