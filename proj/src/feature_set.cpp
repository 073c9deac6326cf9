#include "ctxtree/feature_set.hpp"

#include "ctxtree/compaction.hpp"
#include "ctxtree/error.hpp"
#include "ctxtree/window_scan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace ctxtree {

FeatureSet::FeatureSet(std::vector<std::vector<Code>> features, std::size_t alphabet_size) : trie_(alphabet_size) {
  if (features.empty()) throw InputError("a feature set needs at least one feature");
  for (auto& w : features) {
    if (w.empty()) throw InputError("empty feature");
    max_depth_ = std::max(max_depth_, w.size());
    add(std::move(w));
  }
}

void FeatureSet::add(std::vector<Code> w) {
  if (trie_.insert(w)) features_.push_back(std::move(w));
}

FeatureSet FeatureSet::parse(std::span<const std::string> features, const Alphabet& alphabet) {
  std::vector<std::vector<Code>> encoded;
  encoded.reserve(features.size());
  for (const auto& f : features) encoded.push_back(alphabet.encode(f));
  return FeatureSet(std::move(encoded), alphabet.size());
}

std::vector<std::pair<std::size_t, std::size_t>> FeatureSet::prefix_violations() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < features_.size(); ++a) {
    for (std::size_t b = 0; b < features_.size(); ++b) {
      const auto& s = features_[a];
      const auto& l = features_[b];
      if (s.size() < l.size() && std::equal(s.begin(), s.end(), l.begin())) out.emplace_back(a, b);
    }
  }
  return out;
}

bool FeatureSet::is_full_tree() const {
  for (std::uint32_t node = 0; node < trie_.node_count(); ++node) {
    if (!trie_.has_children(node)) continue;
    for (std::size_t c = 0; c < trie_.alphabet_size(); ++c) {
      if (trie_.child(node, static_cast<Code>(c)) == ContextTrie::kNone) return false;
    }
  }
  return true;
}

bool FeatureSet::contains(std::span<const Code> w) const {
  const auto node = trie_.find(w);
  return node != ContextTrie::kNone && trie_.terminal(node);
}

std::size_t FeatureSet::longest_match(std::span<const Code> x, std::size_t i, std::size_t cap) const {
  if (i < 1 || i > x.size()) throw RangeError("longest_match position out of range");
  const std::size_t limit = std::min(i, cap);
  std::uint32_t node = 0;
  std::size_t best = 0;
  for (std::size_t j = 1; j <= limit; ++j) {
    node = trie_.child(node, x[i - j]);
    if (node == ContextTrie::kNone) break;
    if (trie_.terminal(node)) best = j;
  }
  return best;
}

std::uint64_t FeatureSet::match_mask(std::span<const Code> x, std::size_t i, std::size_t cap) const {
  if (i < 1 || i > x.size()) throw RangeError("match_mask position out of range");
  const std::size_t limit = std::min({i, cap, kMaxWindowDepth});
  std::uint32_t node = 0;
  std::uint64_t mask = 0;
  for (std::size_t j = 1; j <= limit; ++j) {
    node = trie_.child(node, x[i - j]);
    if (node == ContextTrie::kNone) break;
    if (trie_.terminal(node)) mask |= std::uint64_t{1} << (j - 1);
  }
  return mask;
}

FeatureSet FeatureSet::filtered(const std::function<bool(std::span<const Code>)>& keep) const {
  FeatureSet out(trie_.alphabet_size(), max_depth_);
  for (const auto& w : features_) {
    if (keep(w)) out.add(w);
  }
  return out;
}

std::vector<std::string> FeatureSet::to_strings(const Alphabet& alphabet) const {
  std::vector<std::string> out;
  out.reserve(features_.size());
  for (const auto& w : features_) out.push_back(alphabet.decode(w));
  return out;
}

FeatureSet retained_features(const FeatureSet& features, const CompactedTree& tree) {
  return features.filtered([&](std::span<const Code> w) { return w.size() <= tree.max_depth() && tree.retained(w); });
}

void write_feature_manifest(std::ostream& out, const FeatureSet& features, const Alphabet& alphabet,
                            const std::string& config_json) {
  out << "# alphabet=" << alphabet.symbols() << '\n';
  if (!config_json.empty()) out << "# config=" << config_json << '\n';
  for (const auto& s : features.to_strings(alphabet)) out << s << '\n';
}

FeatureSet read_feature_manifest(std::istream& in, const Alphabet& alphabet) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    line.erase(0, start);
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  return FeatureSet::parse(lines, alphabet);
}

FeatureSet read_feature_manifest_file(const std::string& path, const Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_feature_manifest(in, alphabet);
}

}  // namespace ctxtree
