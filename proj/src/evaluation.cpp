#include "ctxtree/evaluation.hpp"

#include "ctxtree/error.hpp"
#include "ctxtree/parallel.hpp"

#include <mutex>

namespace ctxtree {

namespace {

// D > T  <=>  avg > L(Y) + T * L_max
Rational acceptance_cutoff(const TrainingStats& stats, const Rational& threshold) {
  return stats.average + threshold * Rational(stats.max_depth);
}

std::optional<Rational> window_average(std::uint64_t sum, std::uint64_t matched, std::size_t width, AvgMode mode) {
  if (matched == 0) return std::nullopt;
  return make_rational(sum, mode == AvgMode::matched ? matched : width);
}

bool accepts(std::uint64_t sum, std::uint64_t matched, std::size_t width, AvgMode mode, const Rational& cutoff) {
  auto avg = window_average(sum, matched, width, mode);
  return avg && *avg > cutoff;
}

std::optional<Rational> window_similarity(std::uint64_t sum, std::uint64_t matched, std::size_t width,
                                          const TrainingStats& stats) {
  auto avg = window_average(sum, matched, width, stats.mode);
  if (!avg) return std::nullopt;
  return (*avg - stats.average) / Rational(stats.max_depth);
}

void check_compatible(const PreparedBase& ref, const PreparedBase& cand, std::size_t window) {
  if (ref.masks.size() != cand.masks.size()) throw RangeError("mismatched bases: different training lengths");
  if (ref.stats.max_depth != cand.stats.max_depth) throw RangeError("mismatched bases: different L_max");
  if (ref.stats.mode != cand.stats.mode) throw RangeError("mismatched bases: different averaging modes");
  window_count(ref.masks.size(), window);
}

}  // namespace

PreparedBase prepare_masks(MatchMasks masks, AvgMode mode) {
  const std::size_t n = masks.size();
  MatchProfile whole;
  whole.total_length = masks.length_sum(0, n);
  whole.matched = masks.matched_count(0, n);
  whole.lengths.resize(n);  // only the size matters for the average
  const std::size_t depth = masks.max_depth();
  // A base that matches nowhere in Y matches in none of its windows either,
  // so its (undefined) training average never reaches a decision.
  Rational average = average_length(whole, mode).value_or(Rational(0));
  return PreparedBase{std::move(masks), TrainingStats{std::move(average), depth, mode}};
}

bool bound_holds(const Rational& p_delta, const std::optional<Rational>& bound) {
  return !bound || p_delta <= *bound;
}

EvalReport window_eval(const PreparedBase& ref, const PreparedBase& cand, const EvalParams& params) {
  check_compatible(ref, cand, params.window);
  params.compaction.validate();
  const std::size_t width = params.window;
  const std::size_t windows = window_count(ref.masks.size(), width);
  const Rational ref_cutoff = acceptance_cutoff(ref.stats, params.threshold);
  const Rational cand_cutoff = acceptance_cutoff(cand.stats, params.threshold);
  const DiffPrefix diff(ref.masks, cand.masks);

  struct Tally {
    std::uint64_t accepted_ref = 0, accepted_cand = 0, rejected_by_cand = 0, cand_only = 0;
    std::uint64_t diff_total = 0, flips_hit = 0, flips_shift = 0;
  };

  EvalReport report;
  if (params.keep_windows) report.windows.resize(windows);

  Tally total;
  std::mutex tally_mutex;
  parallel_for(windows, params.threads, [&](std::size_t begin, std::size_t end) {
    Tally t;
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t start = k + 1;
      const WindowTotals w = window_totals(ref.masks, cand.masks, diff, start, width);
      const bool ref_ok = accepts(w.ref_sum, w.ref_matched, width, ref.stats.mode, ref_cutoff);
      const bool cand_ok = accepts(w.cand_sum, w.cand_matched, width, cand.stats.mode, cand_cutoff);
      t.accepted_ref += ref_ok;
      t.accepted_cand += cand_ok;
      t.diff_total += w.diff_positions;
      if (ref_ok && !cand_ok) {
        ++t.rejected_by_cand;
        ++(w.diff_positions > 0 ? t.flips_hit : t.flips_shift);
      }
      if (!ref_ok && cand_ok) ++t.cand_only;
      if (params.keep_windows) {
        report.windows[k] = WindowRecord{start,
                                         window_similarity(w.ref_sum, w.ref_matched, width, ref.stats),
                                         window_similarity(w.cand_sum, w.cand_matched, width, cand.stats),
                                         ref_ok,
                                         cand_ok,
                                         w.diff_positions};
      }
    }
    std::lock_guard lock(tally_mutex);
    total.accepted_ref += t.accepted_ref;
    total.accepted_cand += t.accepted_cand;
    total.rejected_by_cand += t.rejected_by_cand;
    total.cand_only += t.cand_only;
    total.diff_total += t.diff_total;
    total.flips_hit += t.flips_hit;
    total.flips_shift += t.flips_shift;
  });

  report.window_count = windows;
  report.accepted_ref = total.accepted_ref;
  report.accepted_cand = total.accepted_cand;
  report.rejected_by_cand = total.rejected_by_cand;
  report.accepted_by_cand_only = total.cand_only;
  report.flips_with_pruned_hit = total.flips_hit;
  report.flips_without_pruned_hit = total.flips_shift;
  report.q = make_rational(total.accepted_ref, windows);
  report.pruned_mass = make_rational(total.diff_total, windows);
  report.ref_train_average = ref.stats.average;
  report.cand_train_average = cand.stats.average;
  if (total.accepted_ref == 0) {
    report.vacuous = true;
    report.p_delta = 0;
    report.bound.reset();
  } else {
    report.p_delta = make_rational(total.rejected_by_cand, total.accepted_ref);
    report.bound = params.compaction.epsilon / report.q;
  }
  report.pass = bound_holds(report.p_delta, report.bound);
  return report;
}

std::vector<std::size_t> accepted_windows(const PreparedBase& base, std::size_t window, const Rational& threshold) {
  const std::size_t windows = window_count(base.masks.size(), window);
  const Rational cutoff = acceptance_cutoff(base.stats, threshold);
  const DiffPrefix diff(base.masks, base.masks);
  std::vector<std::size_t> out;
  for (std::size_t start = 1; start <= windows; ++start) {
    const WindowTotals w = window_totals(base.masks, base.masks, diff, start, window);
    if (accepts(w.ref_sum, w.ref_matched, window, base.stats.mode, cutoff)) out.push_back(start);
  }
  return out;
}

std::optional<Rational> error_rate(const PreparedBase& base, std::size_t window, const Rational& threshold,
                                   std::span<const std::size_t> accept_set) {
  const std::size_t windows = window_count(base.masks.size(), window);
  if (accept_set.empty()) return std::nullopt;
  const Rational cutoff = acceptance_cutoff(base.stats, threshold);
  const DiffPrefix diff(base.masks, base.masks);
  std::uint64_t rejected = 0;
  for (std::size_t start : accept_set) {
    if (start < 1 || start > windows) throw RangeError("accept set holds a window start out of range");
    const WindowTotals w = window_totals(base.masks, base.masks, diff, start, window);
    if (!accepts(w.ref_sum, w.ref_matched, window, base.stats.mode, cutoff)) ++rejected;
  }
  return make_rational(rejected, accept_set.size());
}

Rational pruned_mass(const PreparedBase& ref, const PreparedBase& cand, std::size_t window) {
  check_compatible(ref, cand, window);
  const std::size_t windows = window_count(ref.masks.size(), window);
  const DiffPrefix diff(ref.masks, cand.masks);
  std::uint64_t total = 0;
  for (std::size_t start = 1; start <= windows; ++start) {
    total += window_totals(ref.masks, cand.masks, diff, start, window).diff_positions;
  }
  return make_rational(total, windows);
}

}  // namespace ctxtree
