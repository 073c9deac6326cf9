#pragma once

#include "ctxtree/context_trie.hpp"
#include "ctxtree/sequence.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ctxtree {

class CompactedTree;
class SuffixIndex;

/// An explicit set of feature strings, each read as a backward context: the
/// feature "BA" matches at position i when x_i = B and x_{i-1} = A.
///
/// Prefix-freeness is checked and reported, never enforced. When several
/// features match at one position the longest wins.
class FeatureSet {
 public:
  /// Duplicates are dropped. Throws InputError for an empty set or an empty
  /// member.
  FeatureSet(std::vector<std::vector<Code>> features, std::size_t alphabet_size);

  static FeatureSet parse(std::span<const std::string> features, const Alphabet& alphabet);

  std::size_t size() const { return features_.size(); }
  bool empty() const { return features_.empty(); }
  std::size_t alphabet_size() const { return trie_.alphabet_size(); }
  const std::vector<std::vector<Code>>& features() const { return features_; }

  /// L_max used to normalize similarity. For a filtered set this stays the
  /// longest length of the set it was filtered from.
  std::size_t max_depth() const { return max_depth_; }

  bool is_prefix_free() const { return prefix_violations().empty(); }
  /// (shorter, longer) index pairs where features()[shorter] is a proper
  /// prefix of features()[longer].
  std::vector<std::pair<std::size_t, std::size_t>> prefix_violations() const;

  /// Every trie node with a child has all alphabet_size() children.
  bool is_full_tree() const;

  bool contains(std::span<const Code> w) const;

  /// Length of the longest feature equal to context_at(x, i, j) for some
  /// j <= cap, or 0.
  std::size_t longest_match(std::span<const Code> x, std::size_t i, std::size_t cap) const;

  /// Bit j-1 set for every matching feature length j <= min(cap, 64).
  std::uint64_t match_mask(std::span<const Code> x, std::size_t i, std::size_t cap) const;

  /// Members satisfying `keep`; may be empty, keeps max_depth().
  FeatureSet filtered(const std::function<bool(std::span<const Code>)>& keep) const;

  std::vector<std::string> to_strings(const Alphabet& alphabet) const;

 private:
  FeatureSet(std::size_t alphabet_size, std::size_t max_depth) : trie_(alphabet_size), max_depth_(max_depth) {}
  void add(std::vector<Code> w);

  std::vector<std::vector<Code>> features_;
  ContextTrie trie_;
  std::size_t max_depth_ = 0;
};

/// The features present in the compacted tree's retained set; what a
/// feature-based classifier can still see after compaction.
FeatureSet retained_features(const FeatureSet& features, const CompactedTree& tree);

/// Feature manifest: one feature per line, '#' starts a comment line.
void write_feature_manifest(std::ostream& out, const FeatureSet& features, const Alphabet& alphabet,
                            const std::string& config_json = {});
FeatureSet read_feature_manifest(std::istream& in, const Alphabet& alphabet);
FeatureSet read_feature_manifest_file(const std::string& path, const Alphabet& alphabet);

}  // namespace ctxtree
