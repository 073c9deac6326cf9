#include "ctxtree/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace ctxtree {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

Alphabet::Alphabet(std::string_view symbols) {
  codes_.fill(kUnknownCode);
  std::string sorted(symbols);
  std::sort(sorted.begin(), sorted.end(),
            [](char a, char b) { return static_cast<unsigned char>(a) < static_cast<unsigned char>(b); });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (char c : sorted) {
    if (is_space(c)) throw InputError("whitespace cannot be an alphabet symbol");
  }
  if (sorted.size() < 2) throw InputError("an alphabet needs at least two distinct symbols");
  if (sorted.size() > kMaxAlphabetSize) throw InputError("alphabet larger than 255 symbols");
  symbols_ = std::move(sorted);
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    codes_[static_cast<unsigned char>(symbols_[k])] = static_cast<Code>(k);
  }
}

Alphabet Alphabet::infer(std::string_view text) {
  std::array<bool, 256> seen{};
  for (char c : text) {
    if (!is_space(c)) seen[static_cast<unsigned char>(c)] = true;
  }
  std::string symbols;
  for (int b = 0; b < 256; ++b) {
    if (seen[b]) symbols.push_back(static_cast<char>(b));
  }
  return Alphabet(symbols);
}

std::vector<Code> Alphabet::encode(std::string_view text) const {
  std::vector<Code> out;
  out.reserve(text.size());
  for (char c : text) {
    auto code = this->code(c);
    if (!code) throw InputError(std::string("symbol '") + c + "' is not in the alphabet");
    out.push_back(*code);
  }
  return out;
}

std::string Alphabet::decode(std::span<const Code> codes) const {
  std::string out;
  out.reserve(codes.size());
  for (Code c : codes) out.push_back(symbol(c));
  return out;
}

Sequence::Sequence(std::vector<Code> codes, std::string name) : codes_(std::move(codes)), name_(std::move(name)) {
  if (codes_.empty()) throw InputError("empty sequence");
}

std::size_t Sequence::unknown_count() const {
  return static_cast<std::size_t>(std::count(codes_.begin(), codes_.end(), kUnknownCode));
}

std::vector<RawRecord> read_records(std::istream& in, SequenceFormat format) {
  std::vector<RawRecord> records;
  std::string line;
  if (format == SequenceFormat::plain) {
    RawRecord record;
    while (std::getline(in, line)) {
      for (char c : line) {
        if (!is_space(c)) record.symbols.push_back(c);
      }
    }
    if (record.symbols.empty()) throw InputError("empty input");
    records.push_back(std::move(record));
    return records;
  }

  bool in_record = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '>') {
      std::string name = line.substr(1);
      while (!name.empty() && is_space(name.back())) name.pop_back();
      records.push_back({std::move(name), {}});
      in_record = true;
      continue;
    }
    for (char c : line) {
      if (is_space(c)) continue;
      if (!in_record) throw InputError("FASTA sequence data before the first '>' header");
      records.back().symbols.push_back(c);
    }
  }
  std::erase_if(records, [](const RawRecord& r) { return r.symbols.empty(); });
  if (records.empty()) throw InputError("empty input");
  return records;
}

Sequence encode_record(const RawRecord& record, const Alphabet& alphabet, SymbolPolicy policy) {
  std::vector<Code> codes;
  codes.reserve(record.symbols.size());
  for (char c : record.symbols) {
    auto code = alphabet.code(c);
    if (!code) {
      if (policy == SymbolPolicy::strict) {
        throw InputError(std::string("symbol '") + c + "' is not in the alphabet" +
                         (record.name.empty() ? "" : " (record " + record.name + ")"));
      }
      codes.push_back(kUnknownCode);
    } else {
      codes.push_back(*code);
    }
  }
  return Sequence(std::move(codes), record.name);
}

LoadedSequences load_sequences(std::istream& in, SequenceFormat format, const std::optional<Alphabet>& alphabet,
                               SymbolPolicy policy) {
  auto records = read_records(in, format);
  LoadedSequences out;
  if (alphabet) {
    out.alphabet = *alphabet;
  } else {
    std::string all;
    for (const auto& r : records) all += r.symbols;
    out.alphabet = Alphabet::infer(all);
  }
  out.records.reserve(records.size());
  for (const auto& r : records) out.records.push_back(encode_record(r, out.alphabet, policy));
  return out;
}

LoadedSequence load_sequence(std::istream& in, SequenceFormat format, const std::optional<Alphabet>& alphabet) {
  auto loaded = load_sequences(in, format, alphabet, SymbolPolicy::strict);
  if (loaded.records.size() != 1) {
    throw InputError("expected a single sequence record, found " + std::to_string(loaded.records.size()));
  }
  return {std::move(loaded.alphabet), std::move(loaded.records.front())};
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return in;
}

}  // namespace

LoadedSequences load_sequences_file(const std::string& path, SequenceFormat format,
                                    const std::optional<Alphabet>& alphabet, SymbolPolicy policy) {
  auto in = open_input(path);
  return load_sequences(in, format, alphabet, policy);
}

LoadedSequence load_sequence_file(const std::string& path, SequenceFormat format,
                                  const std::optional<Alphabet>& alphabet) {
  auto in = open_input(path);
  return load_sequence(in, format, alphabet);
}

void write_plain(std::ostream& out, const Sequence& s, const Alphabet& alphabet) {
  out << alphabet.decode(s.codes()) << '\n';
}

void write_fasta(std::ostream& out, const Sequence& s, const Alphabet& alphabet, std::size_t line_width) {
  out << '>' << s.name() << '\n';
  const auto codes = s.codes();
  std::string line;
  for (std::size_t pos = 0; pos < codes.size(); pos += line_width) {
    line = alphabet.decode(codes.subspan(pos, std::min(line_width, codes.size() - pos)));
    out << line << '\n';
  }
}

SequenceFormat parse_format(std::string_view name) {
  if (name == "plain") return SequenceFormat::plain;
  if (name == "fasta") return SequenceFormat::fasta;
  throw InputError("unknown sequence format: " + std::string(name));
}

std::vector<Code> context_at(std::span<const Code> s, std::size_t i, std::size_t j) {
  if (j < 1 || j > i || i > s.size()) {
    throw RangeError("context_at: need 1 <= j <= i <= length (i=" + std::to_string(i) +
                     ", j=" + std::to_string(j) + ", length=" + std::to_string(s.size()) + ")");
  }
  std::vector<Code> out(j);
  for (std::size_t k = 0; k < j; ++k) out[k] = s[i - 1 - k];
  return out;
}

std::size_t window_count(std::size_t length, std::size_t width) {
  if (width < 1 || width >= length) {
    throw RangeError("window length " + std::to_string(width) + " must satisfy 1 <= N < " +
                     std::to_string(length));
  }
  return length - width;
}

}  // namespace ctxtree
