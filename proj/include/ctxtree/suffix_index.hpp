#pragma once

// Occurrence-count index over the backward contexts of a training sequence.
//
// The context Y_i(j) = (y_i, ..., y_{i-j+1}) is a forward substring of the
// reversed sequence R = reverse(Y) starting at offset N' - i. So
// count(w) = number of suffixes of R having w as a prefix, which is the
// size of an interval of the suffix array of R. The first few levels of
// intervals are tabulated; deeper steps binary-search inside the current
// interval, so a walk of length d costs O(d) table or O(log N') steps.

#include "ctxtree/rational.hpp"
#include "ctxtree/sequence.hpp"
#include "ctxtree/suffix_array.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ctxtree {

/// count / N' as an exact fraction.
struct EmpiricalProb {
  std::uint64_t count = 0;
  std::uint64_t total = 1;

  Rational value() const { return make_rational(count, total); }

  friend bool operator>=(const EmpiricalProb& p, const Rational& tau) { return p.value() >= tau; }
  friend bool operator<(const EmpiricalProb& p, const Rational& tau) { return p.value() < tau; }
};

/// Half-open range [lo, hi) of suffix-array rows.
struct SaInterval {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;

  std::uint64_t size() const { return hi - lo; }
  bool empty() const { return hi == lo; }
};

class SuffixIndex {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;
  static constexpr std::uint32_t kStructureSuffixArray = 1;

  /// Requires 1 <= max_depth < |y|; every code of y must be < alphabet.size().
  static SuffixIndex build(const Sequence& y, const Alphabet& alphabet, std::size_t max_depth);

  std::size_t source_length() const { return reversed_.size(); }
  std::size_t max_depth() const { return max_depth_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }

  /// The indexed training sequence, recovered from storage.
  Sequence training_sequence() const;

  /// Position of a walk down the (implicit) context tree.
  struct Cursor {
    SaInterval interval;
    std::size_t depth = 0;
    std::uint64_t table_key = 0;

    std::uint64_t count() const { return interval.size(); }
  };

  Cursor root() const;

  /// Extends the cursor's context by one older symbol. Returns false, leaving
  /// the cursor untouched, if the extension never occurs or the code is
  /// outside the alphabet. Depth is not capped here.
  bool extend(Cursor& cursor, Code code) const;

  /// Exact occurrence count of the backward context w. Throws DepthExceeded
  /// when |w| > max_depth(), RangeError when w is empty.
  std::uint64_t count(std::span<const Code> w) const;

  EmpiricalProb empirical_prob(std::span<const Code> w) const { return {count(w), source_length()}; }

  /// Largest j <= min(i, cap, max_depth()) with count(context_at(x, i, j))
  /// >= min_count, or 0. i is 1-based. Costs O(result + 1) walk steps.
  std::size_t longest_match(std::span<const Code> x, std::size_t i, std::size_t cap,
                            std::uint64_t min_count) const;

  /// Largest single-symbol count; an upper bound for every count.
  std::uint64_t max_symbol_count() const;

  /// Binary container: header {magic, format version, structure kind,
  /// alphabet, N', L_max, config} then R and the suffix array. The lookup
  /// table is rebuilt on load, so save(load(bytes)) == bytes.
  void save(std::ostream& out, const std::string& config_json = "{}") const;
  static SuffixIndex load(std::istream& in, const Alphabet* expected_alphabet = nullptr,
                          std::string* config_json = nullptr);

  void save_file(const std::string& path, const std::string& config_json = "{}") const;
  static SuffixIndex load_file(const std::string& path, const Alphabet* expected_alphabet = nullptr,
                               std::string* config_json = nullptr);

  std::span<const SaIndex> suffix_array() const { return sa_; }
  std::size_t table_depth() const { return table_depth_; }

 private:
  SuffixIndex() = default;
  void build_table();
  SaInterval narrow(SaInterval interval, std::size_t depth, Code code) const;

  Alphabet alphabet_;
  std::size_t max_depth_ = 0;
  std::vector<Code> reversed_;
  std::vector<SaIndex> sa_;

  // Intervals of every context of length 1..table_depth_, keyed by the
  // base-A value of the context; level d starts at table_offset_[d].
  std::size_t table_depth_ = 0;
  std::vector<std::uint64_t> table_offset_;
  std::vector<SaInterval> table_;
};

}  // namespace ctxtree
