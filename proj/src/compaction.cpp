#include "ctxtree/compaction.hpp"

#include "ctxtree/error.hpp"
#include "ctxtree/window_scan.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ctxtree {

void CompactionParams::validate() const {
  if (epsilon <= 0) throw RangeError("epsilon must be positive");
  if (test_length < 1) throw RangeError("test length N must be at least 1");
  if (feature_budget < 1) throw RangeError("feature budget f must be at least 1");
}

Rational threshold(const CompactionParams& params) {
  params.validate();
  return params.epsilon / (Rational(params.test_length) * Rational(params.feature_budget));
}

std::uint64_t leaf_bound(const CompactionParams& params) {
  params.validate();
  return ceil_to_u64(Rational(params.test_length) * Rational(params.feature_budget) / params.epsilon);
}

std::uint64_t min_count_for(const Rational& tau, std::uint64_t source_length) {
  return std::max<std::uint64_t>(1, ceil_to_u64(tau * Rational(source_length)));
}

CompactedTree compact(const SuffixIndex& index, const CompactionParams& params) {
  const Rational tau = threshold(params);
  CompactedTree tree(index, min_count_for(tau, index.source_length()));
  tree.params_ = params;
  if (tau > 1) tree.warnings_.push_back("threshold " + to_string(tau) + " exceeds 1");
  if (tree.min_count_ > index.max_symbol_count()) {
    tree.warnings_.push_back("threshold exceeds every empirical probability; the tree is empty");
  }
  return tree;
}

CompactedTree compact_with_min_count(const SuffixIndex& index, std::uint64_t min_count) {
  if (min_count < 1) throw RangeError("min_count must be at least 1");
  CompactedTree tree(index, min_count);
  if (min_count > index.max_symbol_count()) {
    tree.warnings_.push_back("threshold exceeds every empirical probability; the tree is empty");
  }
  return tree;
}

bool CompactedTree::retained(std::span<const Code> w) const {
  if (w.empty()) return true;
  return index_->count(w) >= min_count_;
}

void CompactedTree::walk(const std::function<void(std::span<const Code>, std::uint64_t, bool)>& visit) const {
  struct Entry {
    SuffixIndex::Cursor cursor;
    Code code;
  };
  const std::size_t alphabet = index_->alphabet_size();
  const std::size_t depth_cap = index_->max_depth();

  auto retained_children = [&](const SuffixIndex::Cursor& parent, std::vector<Entry>& out) {
    out.clear();
    if (parent.depth >= depth_cap) return;
    for (std::size_t c = 0; c < alphabet; ++c) {
      SuffixIndex::Cursor child = parent;
      if (index_->extend(child, static_cast<Code>(c)) && child.count() >= min_count_) {
        out.push_back({child, static_cast<Code>(c)});
      }
    }
  };

  std::vector<Code> path;
  std::vector<Entry> stack;
  std::vector<Entry> kids;
  retained_children(index_->root(), kids);
  stack.assign(kids.rbegin(), kids.rend());
  while (!stack.empty()) {
    Entry e = stack.back();
    stack.pop_back();
    path.resize(e.cursor.depth - 1);
    path.push_back(e.code);
    retained_children(e.cursor, kids);
    visit(path, e.cursor.count(), kids.empty());
    stack.insert(stack.end(), kids.rbegin(), kids.rend());
  }
}

void CompactedTree::for_each_leaf(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const {
  walk([&](std::span<const Code> w, std::uint64_t count, bool leaf) {
    if (leaf) visit(w, count);
  });
}

void CompactedTree::for_each_retained(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const {
  walk([&](std::span<const Code> w, std::uint64_t count, bool) { visit(w, count); });
}

std::uint64_t CompactedTree::leaf_count() const {
  std::uint64_t n = 0;
  walk([&](std::span<const Code>, std::uint64_t, bool leaf) { n += leaf ? 1 : 0; });
  return n;
}

std::uint64_t CompactedTree::retained_count() const {
  std::uint64_t n = 0;
  walk([&](std::span<const Code>, std::uint64_t, bool) { ++n; });
  return n;
}

StandaloneTree CompactedTree::export_standalone() const {
  StandaloneTree out(index_->alphabet(), index_->max_depth());
  out.source_length = index_->source_length();
  out.min_count = min_count_;
  if (params_) {
    out.test_length = params_->test_length;
    out.epsilon = params_->epsilon;
    out.feature_budget = params_->feature_budget;
  }
  for_each_leaf([&](std::span<const Code> w, std::uint64_t count) { out.add_leaf(w, count); });
  return out;
}

Rational pruned_mass_bound(const SuffixIndex& index, const CompactionParams& params, unsigned threads) {
  const Sequence y = index.training_sequence();
  const std::size_t windows = window_count(y.size(), params.test_length);
  const CompactedTree full = compact_with_min_count(index, 1);
  const CompactedTree pruned = compact(index, params);

  const MatchMasks ref = compute_masks(full, y.codes(), threads);
  const MatchMasks cand = compute_masks(pruned, y.codes(), threads);
  const DiffPrefix diff(ref, cand);

  std::uint64_t total = 0;
  for (std::size_t start = 1; start <= windows; ++start) {
    total += window_totals(ref, cand, diff, start, params.test_length).diff_positions;
  }
  return make_rational(total, windows);
}

// ---------------------------------------------------------------------------
// StandaloneTree

namespace {

constexpr char kTreeMagic[8] = {'C', 'T', 'X', 'T', 'T', 'R', 'E', 'E'};
constexpr const char* kTextHeader = "#ctxtree-tree v1";

template <class T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw FormatError("truncated tree file");
  return value;
}

void put_string(std::ostream& out, const std::string& s) {
  put(out, static_cast<std::uint64_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
  const auto size = get<std::uint64_t>(in);
  if (size > (std::uint64_t{1} << 24)) throw FormatError("bad string length in tree file");
  std::string s(size, '\0');
  if (!in.read(s.data(), static_cast<std::streamsize>(size))) throw FormatError("truncated tree file");
  return s;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad value for " + key + ": " + text);
  }
}

}  // namespace

StandaloneTree::StandaloneTree(Alphabet alphabet, std::size_t max_depth)
    : alphabet_(std::move(alphabet)), max_depth_(max_depth), trie_(alphabet_.size()) {}

void StandaloneTree::add_leaf(std::span<const Code> w, std::uint64_t count) {
  if (w.empty() || w.size() > max_depth_) throw RangeError("leaf length outside 1..L_max");
  const std::uint32_t existing = trie_.find(w);
  if (existing != ContextTrie::kNone && (trie_.terminal(existing) || trie_.has_children(existing))) {
    throw FormatError("leaf set is not prefix-free");
  }
  // a proper prefix that is already a leaf also breaks prefix-freeness
  std::uint32_t node = 0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    node = trie_.child(node, w[k]);
    if (node == ContextTrie::kNone) break;
    if (trie_.terminal(node)) throw FormatError("leaf set is not prefix-free");
  }
  trie_.insert(w, count);
  ++leaf_count_;
}

bool StandaloneTree::retained(std::span<const Code> w) const {
  if (w.size() > max_depth_) throw DepthExceeded("context longer than the tree depth");
  return trie_.find(w) != ContextTrie::kNone;
}

std::size_t StandaloneTree::longest_match(std::span<const Code> x, std::size_t i, std::size_t cap) const {
  if (i < 1 || i > x.size()) throw RangeError("longest_match position out of range");
  const std::size_t limit = std::min({i, cap, max_depth_});
  std::uint32_t node = 0;
  std::size_t j = 0;
  while (j < limit) {
    node = trie_.child(node, x[i - 1 - j]);
    if (node == ContextTrie::kNone) break;
    ++j;
  }
  return j;
}

void StandaloneTree::for_each_leaf(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const {
  trie_.for_each_terminal(visit);
}

void StandaloneTree::save_text(std::ostream& out) const {
  out << kTextHeader << '\n';
  out << "#alphabet=" << alphabet_.symbols() << '\n';
  out << "#source_length=" << source_length << '\n';
  out << "#test_length=" << test_length << '\n';
  out << "#epsilon=" << to_string(epsilon) << '\n';
  out << "#feature_budget=" << feature_budget << '\n';
  out << "#min_count=" << min_count << '\n';
  out << "#max_depth=" << max_depth_ << '\n';
  if (training_averages) {
    out << "#train_avg_matched=" << to_string(training_averages->matched) << '\n';
    out << "#train_avg_all=" << to_string(training_averages->all) << '\n';
  }
  out << "#leaf_count=" << leaf_count_ << '\n';
  out << "#config=" << config_json << '\n';
  for_each_leaf([&](std::span<const Code> w, std::uint64_t count) {
    out << alphabet_.decode(w) << '\t' << count << '\n';
  });
  if (!out) throw std::ios_base::failure("failed writing tree");
}

StandaloneTree StandaloneTree::load_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTextHeader) throw FormatError("not a text tree file (bad header)");
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> body;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw FormatError("bad header line: " + line);
      fields.emplace_back(line.substr(1, eq - 1), line.substr(eq + 1));
    } else {
      body.push_back(line);
    }
  }
  auto field = [&](const std::string& key) -> const std::string* {
    for (const auto& [k, v] : fields) {
      if (k == key) return &v;
    }
    return nullptr;
  };
  auto required = [&](const std::string& key) -> const std::string& {
    const std::string* v = field(key);
    if (!v) throw FormatError("tree file lacks #" + key);
    return *v;
  };

  Alphabet alphabet;
  try {
    alphabet = Alphabet(required("alphabet"));
  } catch (const InputError& e) {
    throw FormatError(std::string("bad tree alphabet: ") + e.what());
  }
  StandaloneTree tree(alphabet, parse_u64("max_depth", required("max_depth")));
  tree.source_length = parse_u64("source_length", required("source_length"));
  tree.test_length = parse_u64("test_length", required("test_length"));
  tree.feature_budget = parse_u64("feature_budget", required("feature_budget"));
  tree.min_count = parse_u64("min_count", required("min_count"));
  try {
    tree.epsilon = parse_rational(required("epsilon"));
    if (const auto* m = field("train_avg_matched")) {
      tree.training_averages = TrainingAverages{parse_rational(*m), parse_rational(required("train_avg_all"))};
    }
  } catch (const InputError& e) {
    throw FormatError(std::string("bad rational in tree header: ") + e.what());
  }
  if (const auto* c = field("config")) tree.config_json = *c;

  for (const auto& row : body) {
    auto tab = row.find('\t');
    if (tab == std::string::npos) throw FormatError("bad leaf line: " + row);
    std::vector<Code> codes;
    try {
      codes = alphabet.encode(row.substr(0, tab));
    } catch (const InputError& e) {
      throw FormatError(std::string("bad leaf string: ") + e.what());
    }
    tree.add_leaf(codes, parse_u64("leaf count", row.substr(tab + 1)));
  }
  if (const auto* n = field("leaf_count"); n && parse_u64("leaf_count", *n) != tree.leaf_count_) {
    throw FormatError("leaf_count header disagrees with the leaf lines");
  }
  return tree;
}

void StandaloneTree::save_binary(std::ostream& out) const {
  out.write(kTreeMagic, sizeof kTreeMagic);
  put(out, kFormatVersion);
  put_string(out, std::string(alphabet_.symbols()));
  put(out, source_length);
  put(out, test_length);
  put_string(out, to_string(epsilon));
  put(out, feature_budget);
  put(out, min_count);
  put(out, static_cast<std::uint64_t>(max_depth_));
  put(out, static_cast<std::uint8_t>(training_averages ? 1 : 0));
  if (training_averages) {
    put_string(out, to_string(training_averages->matched));
    put_string(out, to_string(training_averages->all));
  }
  put_string(out, config_json);
  put(out, leaf_count_);
  for_each_leaf([&](std::span<const Code> w, std::uint64_t count) {
    put(out, static_cast<std::uint32_t>(w.size()));
    out.write(reinterpret_cast<const char*>(w.data()), static_cast<std::streamsize>(w.size()));
    put(out, count);
  });
  if (!out) throw std::ios_base::failure("failed writing tree");
}

StandaloneTree StandaloneTree::load_binary(std::istream& in) {
  char magic[sizeof kTreeMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kTreeMagic, sizeof magic) != 0) {
    throw FormatError("not a binary tree file (bad magic)");
  }
  if (auto version = get<std::uint32_t>(in); version != kFormatVersion) {
    throw FormatError("unsupported tree format version " + std::to_string(version));
  }
  Alphabet alphabet;
  try {
    alphabet = Alphabet(get_string(in));
  } catch (const InputError& e) {
    throw FormatError(std::string("bad tree alphabet: ") + e.what());
  }
  const auto source_length = get<std::uint64_t>(in);
  const auto test_length = get<std::uint64_t>(in);
  const auto epsilon_text = get_string(in);
  const auto feature_budget = get<std::uint64_t>(in);
  const auto min_count = get<std::uint64_t>(in);
  const auto max_depth = get<std::uint64_t>(in);
  StandaloneTree tree(alphabet, max_depth);
  tree.source_length = source_length;
  tree.test_length = test_length;
  tree.feature_budget = feature_budget;
  tree.min_count = min_count;
  try {
    tree.epsilon = parse_rational(epsilon_text);
    if (get<std::uint8_t>(in) != 0) {
      auto matched = parse_rational(get_string(in));
      auto all = parse_rational(get_string(in));
      tree.training_averages = TrainingAverages{matched, all};
    }
  } catch (const InputError& e) {
    throw FormatError(std::string("bad rational in tree file: ") + e.what());
  }
  tree.config_json = get_string(in);
  const auto leaves = get<std::uint64_t>(in);
  std::vector<Code> w;
  for (std::uint64_t k = 0; k < leaves; ++k) {
    const auto len = get<std::uint32_t>(in);
    if (len == 0 || len > max_depth) throw FormatError("bad leaf length in tree file");
    w.resize(len);
    if (!in.read(reinterpret_cast<char*>(w.data()), len)) throw FormatError("truncated tree file");
    for (Code c : w) {
      if (c >= alphabet.size()) throw FormatError("leaf code outside the alphabet");
    }
    tree.add_leaf(w, get<std::uint64_t>(in));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after tree body");
  return tree;
}

StandaloneTree StandaloneTree::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  char first[sizeof kTreeMagic] = {};
  in.read(first, sizeof first);
  in.clear();
  in.seekg(0);
  if (std::memcmp(first, kTreeMagic, sizeof first) == 0) return load_binary(in);
  return load_text(in);
}

}  // namespace ctxtree
