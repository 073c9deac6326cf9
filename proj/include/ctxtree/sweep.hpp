#pragma once

// Grid driver over (epsilon, f, N, T).
//
// Universal mode compares the full index with its compaction. Feature mode
// compares a feature classifier with the same classifier restricted to the
// features the compaction kept. A cell that throws records its error and
// the sweep goes on.

#include "ctxtree/evaluation.hpp"
#include "ctxtree/feature_set.hpp"
#include "ctxtree/suffix_index.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ctxtree {

struct SweepGrid {
  std::vector<Rational> epsilons;
  std::vector<std::uint64_t> budgets;  // f
  std::vector<std::size_t> windows;    // N
  std::vector<Rational> thresholds;    // T

  std::size_t size() const { return epsilons.size() * budgets.size() * windows.size() * thresholds.size(); }
};

enum class SweepMode { universal, features };
SweepMode parse_sweep_mode(std::string_view name);
std::string_view to_string(SweepMode mode);

struct SweepInput {
  const SuffixIndex* index = nullptr;
  const FeatureSet* features = nullptr;  // required in feature mode
  SweepMode mode = SweepMode::universal;
  AvgMode avg_mode = AvgMode::matched;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

struct SweepCell {
  Rational epsilon{0};
  std::uint64_t budget = 0;
  std::size_t window = 0;
  Rational threshold{0};
  std::uint64_t min_count = 0;
  std::uint64_t leaf_count = 0;
  std::uint64_t leaf_bound = 0;
  std::uint64_t retained_features = 0;  // feature mode only
  std::optional<EvalReport> report;
  std::string error;

  bool ok() const { return report.has_value(); }
};

struct SweepSummary {
  std::size_t cells = 0;
  std::size_t errors = 0;
  std::size_t violations = 0;     // p_delta > epsilon / q
  std::size_t leaf_overflows = 0; // leaf_count > ceil(N f / epsilon)
  std::size_t vacuous = 0;
};

/// Cells in grid order: epsilon outermost, then f, N, T.
std::vector<SweepCell> sweep(const SweepInput& input, const SweepGrid& grid);

SweepSummary summarize(const std::vector<SweepCell>& cells);

/// CSV with a '# config=' first line; failed cells keep their grid columns
/// and an error column.
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells, std::uint64_t seed,
                     const std::string& config_json);

}  // namespace ctxtree
