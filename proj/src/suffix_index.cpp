#include "ctxtree/suffix_index.hpp"

#include "ctxtree/error.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace ctxtree {

namespace {

constexpr char kIndexMagic[8] = {'C', 'T', 'X', 'T', 'I', 'D', 'X', '\0'};
constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 22;

static_assert(std::endian::native == std::endian::little, "persistence assumes a little-endian host");

template <class T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw FormatError("truncated index file");
  return value;
}

}  // namespace

SuffixIndex SuffixIndex::build(const Sequence& y, const Alphabet& alphabet, std::size_t max_depth) {
  if (max_depth < 1 || max_depth >= y.size()) {
    throw RangeError("L_max must satisfy 1 <= L_max < N' (L_max=" + std::to_string(max_depth) +
                     ", N'=" + std::to_string(y.size()) + ")");
  }
  SuffixIndex index;
  index.alphabet_ = alphabet;
  index.max_depth_ = max_depth;
  index.reversed_.assign(y.codes().rbegin(), y.codes().rend());
  for (Code c : index.reversed_) {
    if (c >= alphabet.size()) throw InputError("training sequence holds a symbol outside its alphabet");
  }
  index.sa_ = build_suffix_array(index.reversed_, alphabet.size());
  index.build_table();
  return index;
}

void SuffixIndex::build_table() {
  const std::uint64_t a = alphabet_.size();
  const std::uint64_t n = reversed_.size();
  const std::uint64_t budget = std::min(kMaxTableEntries, std::max<std::uint64_t>(a, 2 * n));

  table_offset_.assign(1, 0);
  std::uint64_t total = 0;
  std::uint64_t level_size = 1;
  table_depth_ = 0;
  while (table_depth_ < max_depth_) {
    level_size *= a;
    if (total + level_size > budget) break;
    table_offset_.push_back(total);
    total += level_size;
    ++table_depth_;
  }
  table_.assign(total, SaInterval{});

  for (std::uint64_t row = 0; row < n; ++row) {
    const auto start = static_cast<std::uint64_t>(sa_[row]);
    const std::uint64_t depth = std::min<std::uint64_t>(table_depth_, n - start);
    std::uint64_t key = 0;
    for (std::uint64_t d = 1; d <= depth; ++d) {
      key = key * a + reversed_[start + d - 1];
      SaInterval& entry = table_[table_offset_[d] + key];
      if (entry.hi == 0) entry.lo = static_cast<std::uint32_t>(row);
      entry.hi = static_cast<std::uint32_t>(row + 1);
    }
  }
}

Sequence SuffixIndex::training_sequence() const {
  return Sequence(std::vector<Code>(reversed_.rbegin(), reversed_.rend()));
}

SuffixIndex::Cursor SuffixIndex::root() const {
  return Cursor{SaInterval{0, static_cast<std::uint32_t>(reversed_.size())}, 0, 0};
}

SaInterval SuffixIndex::narrow(SaInterval interval, std::size_t depth, Code code) const {
  const std::size_t n = reversed_.size();
  auto symbol_at = [&](std::uint32_t row) -> int {
    const auto pos = static_cast<std::size_t>(sa_[row]) + depth;
    return pos < n ? reversed_[pos] : -1;
  };
  std::uint32_t lo = interval.lo;
  std::uint32_t hi = interval.hi;
  // first row with symbol >= code
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (symbol_at(mid) < code) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const std::uint32_t first = lo;
  hi = interval.hi;
  // first row with symbol > code
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (symbol_at(mid) <= code) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return SaInterval{first, lo};
}

bool SuffixIndex::extend(Cursor& cursor, Code code) const {
  if (code >= alphabet_.size() || cursor.interval.empty()) return false;
  const std::size_t depth = cursor.depth + 1;
  SaInterval next;
  std::uint64_t key = 0;
  if (depth <= table_depth_) {
    key = cursor.table_key * alphabet_.size() + code;
    next = table_[table_offset_[depth] + key];
  } else {
    next = narrow(cursor.interval, cursor.depth, code);
  }
  if (next.empty()) return false;
  cursor.interval = next;
  cursor.depth = depth;
  cursor.table_key = key;
  return true;
}

std::uint64_t SuffixIndex::count(std::span<const Code> w) const {
  if (w.empty()) throw RangeError("count of the empty context");
  if (w.size() > max_depth_) {
    throw DepthExceeded("context length " + std::to_string(w.size()) + " exceeds index depth " +
                        std::to_string(max_depth_));
  }
  Cursor cursor = root();
  for (Code c : w) {
    if (!extend(cursor, c)) return 0;
  }
  return cursor.count();
}

std::size_t SuffixIndex::longest_match(std::span<const Code> x, std::size_t i, std::size_t cap,
                                       std::uint64_t min_count) const {
  if (i < 1 || i > x.size()) throw RangeError("longest_match position out of range");
  if (min_count < 1) throw RangeError("longest_match needs min_count >= 1");
  const std::size_t limit = std::min({i, cap, max_depth_});
  Cursor cursor = root();
  std::size_t best = 0;
  for (std::size_t j = 1; j <= limit; ++j) {
    if (!extend(cursor, x[i - j]) || cursor.count() < min_count) break;
    best = j;
  }
  return best;
}

std::uint64_t SuffixIndex::max_symbol_count() const {
  std::uint64_t best = 0;
  for (std::size_t c = 0; c < alphabet_.size(); ++c) {
    Cursor cursor = root();
    if (extend(cursor, static_cast<Code>(c))) best = std::max(best, cursor.count());
  }
  return best;
}

void SuffixIndex::save(std::ostream& out, const std::string& config_json) const {
  out.write(kIndexMagic, sizeof kIndexMagic);
  put(out, kFormatVersion);
  put(out, kStructureSuffixArray);
  put(out, static_cast<std::uint32_t>(alphabet_.size()));
  out.write(alphabet_.symbols().data(), static_cast<std::streamsize>(alphabet_.size()));
  put(out, static_cast<std::uint64_t>(reversed_.size()));
  put(out, static_cast<std::uint64_t>(max_depth_));
  put(out, static_cast<std::uint64_t>(config_json.size()));
  out.write(config_json.data(), static_cast<std::streamsize>(config_json.size()));
  out.write(reinterpret_cast<const char*>(reversed_.data()), static_cast<std::streamsize>(reversed_.size()));
  out.write(reinterpret_cast<const char*>(sa_.data()),
            static_cast<std::streamsize>(sa_.size() * sizeof(SaIndex)));
  if (!out) throw std::ios_base::failure("failed writing index");
}

SuffixIndex SuffixIndex::load(std::istream& in, const Alphabet* expected_alphabet, std::string* config_json) {
  char magic[sizeof kIndexMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kIndexMagic, sizeof magic) != 0) {
    throw FormatError("not an index file (bad magic)");
  }
  if (auto version = get<std::uint32_t>(in); version != kFormatVersion) {
    throw FormatError("unsupported index format version " + std::to_string(version));
  }
  if (auto kind = get<std::uint32_t>(in); kind != kStructureSuffixArray) {
    throw FormatError("unsupported index structure kind " + std::to_string(kind));
  }
  const auto alphabet_size = get<std::uint32_t>(in);
  if (alphabet_size < 2 || alphabet_size > kMaxAlphabetSize) throw FormatError("bad alphabet size in index");
  std::string symbols(alphabet_size, '\0');
  if (!in.read(symbols.data(), alphabet_size)) throw FormatError("truncated index file");

  SuffixIndex index;
  try {
    index.alphabet_ = Alphabet(symbols);
  } catch (const InputError& e) {
    throw FormatError(std::string("bad alphabet in index: ") + e.what());
  }
  if (index.alphabet_.symbols() != symbols) throw FormatError("index alphabet is not canonical");
  if (expected_alphabet && !(*expected_alphabet == index.alphabet_)) {
    throw FormatError("index alphabet '" + symbols + "' does not match expected '" +
                      std::string(expected_alphabet->symbols()) + "'");
  }
  const auto n = get<std::uint64_t>(in);
  const auto depth = get<std::uint64_t>(in);
  if (n < 2 || n >= static_cast<std::uint64_t>(std::numeric_limits<SaIndex>::max()) || depth < 1 || depth >= n) {
    throw FormatError("bad index dimensions");
  }
  const auto config_size = get<std::uint64_t>(in);
  if (config_size > (std::uint64_t{1} << 24)) throw FormatError("bad config block size");
  std::string config(config_size, '\0');
  if (!in.read(config.data(), static_cast<std::streamsize>(config_size))) throw FormatError("truncated index file");
  if (config_json) *config_json = std::move(config);

  index.max_depth_ = depth;
  index.reversed_.resize(n);
  if (!in.read(reinterpret_cast<char*>(index.reversed_.data()), static_cast<std::streamsize>(n))) {
    throw FormatError("truncated index file");
  }
  index.sa_.resize(n);
  if (!in.read(reinterpret_cast<char*>(index.sa_.data()), static_cast<std::streamsize>(n * sizeof(SaIndex)))) {
    throw FormatError("truncated index file");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after index body");
  for (Code c : index.reversed_) {
    if (c >= alphabet_size) throw FormatError("index text holds a code outside the alphabet");
  }
  for (SaIndex v : index.sa_) {
    if (v < 0 || static_cast<std::uint64_t>(v) >= n) throw FormatError("suffix array entry out of range");
  }
  index.build_table();
  return index;
}

void SuffixIndex::save_file(const std::string& path, const std::string& config_json) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  save(out, config_json);
}

SuffixIndex SuffixIndex::load_file(const std::string& path, const Alphabet* expected_alphabet,
                                   std::string* config_json) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return load(in, expected_alphabet, config_json);
}

}  // namespace ctxtree
