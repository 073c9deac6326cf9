#pragma once

// Frequency-pruned context tree.
//
// Given an error budget epsilon, the test length N and a feature budget f,
// every context with empirical probability below tau = epsilon / (N f) is
// dropped. The retained set K is prefix-closed, its maximal elements (the
// leaves) form a prefix-free set, so sum(P(leaf)) <= 1 and there are at most
// 1 / tau = N f / epsilon leaves whatever the training length.
//
// Compaction reads only counts. It has no feature-set input.

#include "ctxtree/context_trie.hpp"
#include "ctxtree/rational.hpp"
#include "ctxtree/suffix_index.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctxtree {

struct CompactionParams {
  Rational epsilon{1};
  std::uint64_t test_length = 1;     // N
  std::uint64_t feature_budget = 1;  // f

  /// Throws RangeError unless epsilon > 0, N >= 1 and f >= 1.
  void validate() const;
};

/// tau = epsilon / (N f), exactly.
Rational threshold(const CompactionParams& params);

/// ceil(N f / epsilon).
std::uint64_t leaf_bound(const CompactionParams& params);

/// Smallest count c >= 1 with c / N' >= tau.
std::uint64_t min_count_for(const Rational& tau, std::uint64_t source_length);

class StandaloneTree;

class CompactedTree {
 public:
  std::uint64_t min_count() const { return min_count_; }
  std::size_t max_depth() const { return index_->max_depth(); }
  const SuffixIndex& index() const { return *index_; }
  const std::optional<CompactionParams>& params() const { return params_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Whether the backward context w is in K. Throws DepthExceeded past L_max.
  bool retained(std::span<const Code> w) const;

  /// Longest retained context ending at 1-based position i, capped.
  std::size_t longest_match(std::span<const Code> x, std::size_t i, std::size_t cap) const {
    return index_->longest_match(x, i, cap, min_count_);
  }

  /// Leaves in lexicographic code order with their counts.
  void for_each_leaf(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const;

  /// Every retained context (internal nodes and leaves) with its count.
  void for_each_retained(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const;

  std::uint64_t leaf_count() const;
  std::uint64_t retained_count() const;

  StandaloneTree export_standalone() const;

  friend CompactedTree compact(const SuffixIndex& index, const CompactionParams& params);
  friend CompactedTree compact_with_min_count(const SuffixIndex& index, std::uint64_t min_count);

 private:
  CompactedTree(const SuffixIndex& index, std::uint64_t min_count) : index_(&index), min_count_(min_count) {}
  void walk(const std::function<void(std::span<const Code>, std::uint64_t, bool)>& visit) const;

  const SuffixIndex* index_;
  std::uint64_t min_count_;
  std::optional<CompactionParams> params_;
  std::vector<std::string> warnings_;
};

/// The retained set for tau(params) over `index`. The index must outlive the
/// tree. An impossible threshold gives an empty tree with a warning.
CompactedTree compact(const SuffixIndex& index, const CompactionParams& params);

/// Same pruning rule with an explicit count threshold.
CompactedTree compact_with_min_count(const SuffixIndex& index, std::uint64_t min_count);

/// Mean, over the N' - N windows of the indexed sequence, of the number of
/// window positions whose full-index match exists but whose compacted match
/// differs. Each window is read as a standalone sequence.
Rational pruned_mass_bound(const SuffixIndex& index, const CompactionParams& params, unsigned threads = 1);

struct TrainingAverages {
  Rational matched;  // sum / matched positions
  Rational all;      // sum / all positions
};

/// Self-contained compacted tree: the leaf strings with their counts and the
/// metadata needed to classify without the training sequence.
class StandaloneTree {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  StandaloneTree(Alphabet alphabet, std::size_t max_depth);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t max_depth() const { return max_depth_; }
  std::uint64_t leaf_count() const { return leaf_count_; }

  std::uint64_t source_length = 0;
  std::uint64_t test_length = 0;
  Rational epsilon{0};
  std::uint64_t feature_budget = 0;
  std::uint64_t min_count = 1;
  std::optional<TrainingAverages> training_averages;
  std::string config_json = "{}";

  /// Adds a leaf. Leaves must form a prefix-free set.
  void add_leaf(std::span<const Code> w, std::uint64_t count);

  bool retained(std::span<const Code> w) const;
  std::size_t longest_match(std::span<const Code> x, std::size_t i, std::size_t cap) const;
  void for_each_leaf(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const;

  /// Text form: '#key=value' header lines then one "<leaf>\t<count>" per line
  /// in code order.
  void save_text(std::ostream& out) const;
  static StandaloneTree load_text(std::istream& in);

  void save_binary(std::ostream& out) const;
  static StandaloneTree load_binary(std::istream& in);

  /// Picks the form from the first bytes.
  static StandaloneTree load_file(const std::string& path);

 private:
  Alphabet alphabet_;
  std::size_t max_depth_;
  ContextTrie trie_;
  std::uint64_t leaf_count_ = 0;
};

}  // namespace ctxtree
