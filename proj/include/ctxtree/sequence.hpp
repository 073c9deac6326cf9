#pragma once

// Alphabet handling, sequence ingestion and window iteration.
//
// Positions are 1-based in every public function that takes one, so that
// context_at(s, i, j) reads (s_i, s_{i-1}, ..., s_{i-j+1}). Storage is
// 0-based: position i lives at codes()[i - 1].

#include "ctxtree/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctxtree {

using Code = std::uint8_t;

/// Code given to a test symbol that is not in the training alphabet. It
/// never matches any context.
inline constexpr Code kUnknownCode = 0xFF;
inline constexpr std::size_t kMaxAlphabetSize = 255;

class Alphabet {
 public:
  Alphabet() { codes_.fill(kUnknownCode); }

  /// Distinct symbols, sorted by byte value; codes are ranks in that order.
  explicit Alphabet(std::string_view symbols);

  /// The sorted set of symbols occurring in `text` (whitespace excluded).
  static Alphabet infer(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  std::string_view symbols() const { return symbols_; }

  std::optional<Code> code(char symbol) const {
    Code c = codes_[static_cast<unsigned char>(symbol)];
    if (c == kUnknownCode) return std::nullopt;
    return c;
  }
  char symbol(Code code) const { return code < symbols_.size() ? symbols_[code] : '?'; }

  std::vector<Code> encode(std::string_view text) const;  // throws on unknown symbols
  std::string decode(std::span<const Code> codes) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::string symbols_;
  std::array<Code, 256> codes_{};
};

class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<Code> codes, std::string name = {});

  std::size_t size() const { return codes_.size(); }
  std::span<const Code> codes() const { return codes_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Symbol at 1-based position i.
  Code at(std::size_t i) const { return codes_[i - 1]; }

  /// Number of positions holding kUnknownCode.
  std::size_t unknown_count() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<Code> codes_;
  std::string name_;
};

enum class SequenceFormat { plain, fasta };

enum class SymbolPolicy {
  strict,   // a symbol outside the alphabet is an InputError
  lenient,  // such symbols are stored as kUnknownCode
};

struct RawRecord {
  std::string name;
  std::string symbols;
};

/// Splits a stream into records. Plain text yields one record with all
/// whitespace removed; FASTA yields one record per '>' header.
std::vector<RawRecord> read_records(std::istream& in, SequenceFormat format);

Sequence encode_record(const RawRecord& record, const Alphabet& alphabet, SymbolPolicy policy);

struct LoadedSequences {
  Alphabet alphabet;
  std::vector<Sequence> records;
};

/// Loads every record. Without `alphabet` the alphabet is inferred over
/// all records and the policy is irrelevant.
LoadedSequences load_sequences(std::istream& in, SequenceFormat format,
                               const std::optional<Alphabet>& alphabet = std::nullopt,
                               SymbolPolicy policy = SymbolPolicy::strict);

struct LoadedSequence {
  Alphabet alphabet;
  Sequence sequence;
};

/// Loads exactly one record. Multi-record FASTA is rejected rather than
/// concatenated, so no context spans a record boundary.
LoadedSequence load_sequence(std::istream& in, SequenceFormat format,
                             const std::optional<Alphabet>& alphabet = std::nullopt);

LoadedSequences load_sequences_file(const std::string& path, SequenceFormat format,
                                    const std::optional<Alphabet>& alphabet = std::nullopt,
                                    SymbolPolicy policy = SymbolPolicy::strict);
LoadedSequence load_sequence_file(const std::string& path, SequenceFormat format,
                                  const std::optional<Alphabet>& alphabet = std::nullopt);

void write_plain(std::ostream& out, const Sequence& s, const Alphabet& alphabet);
void write_fasta(std::ostream& out, const Sequence& s, const Alphabet& alphabet, std::size_t line_width = 80);

SequenceFormat parse_format(std::string_view name);

/// The backward context (s_i, s_{i-1}, ..., s_{i-j+1}); requires 1 <= j <= i <= |s|.
std::vector<Code> context_at(std::span<const Code> s, std::size_t i, std::size_t j);
inline std::vector<Code> context_at(const Sequence& s, std::size_t i, std::size_t j) {
  return context_at(s.codes(), i, j);
}

struct Window {
  std::size_t start;  // 1-based
  std::span<const Code> codes;
};

/// Number of sliding windows of length `width`: |s| - width. Throws
/// RangeError unless 1 <= width < |s|.
std::size_t window_count(std::size_t length, std::size_t width);

/// The |s| - width windows with starts 1 ... |s| - width, in order. The view
/// refers into `s`, which must outlive it.
inline auto windows(const Sequence& s, std::size_t width) {
  const std::size_t count = window_count(s.size(), width);
  return std::views::iota(std::size_t{1}, count + 1) |
         std::views::transform([codes = s.codes(), width](std::size_t start) {
           return Window{start, codes.subspan(start - 1, width)};
         });
}

}  // namespace ctxtree
