#include "ctxtree/error.hpp"
#include "ctxtree/rational.hpp"
#include "ctxtree/sequence.hpp"

#include <doctest.h>

#include <sstream>

using namespace ctxtree;

TEST_CASE("alphabet codes are byte-order ranks") {
  Alphabet a("DBCA");
  CHECK(a.symbols() == "ABCD");
  CHECK(*a.code('A') == 0);
  CHECK(*a.code('D') == 3);
  CHECK_FALSE(a.code('E').has_value());
  CHECK(a.decode(a.encode("CAB")) == "CAB");
  CHECK_THROWS_AS(a.encode("AXB"), InputError);
  CHECK_THROWS_AS(Alphabet("AAAA"), InputError);
  CHECK(Alphabet::infer("ABA\nCD E").symbols() == "ABCDE");
}

TEST_CASE("plain and fasta records") {
  std::istringstream plain("ABAC\nDCBE\n  DEDE\n");
  auto p = load_sequence(plain, SequenceFormat::plain);
  CHECK(p.sequence.size() == 12);
  CHECK(p.alphabet.symbols() == "ABCDE");

  std::istringstream fasta(">one first\nACGT\nAC\n>two\nGG\n");
  auto f = load_sequences(fasta, SequenceFormat::fasta);
  REQUIRE(f.records.size() == 2);
  CHECK(f.records[0].name() == "one first");
  CHECK(f.records[0].size() == 6);
  CHECK(f.records[1].size() == 2);

  std::istringstream two(">a\nAC\n>b\nCA\n");
  CHECK_THROWS_AS(load_sequence(two, SequenceFormat::fasta), InputError);

  std::istringstream empty("  \n");
  CHECK_THROWS_AS(load_sequence(empty, SequenceFormat::plain), InputError);

  std::istringstream headless("ACGT\n>x\nAC\n");
  CHECK_THROWS_AS(load_sequences(headless, SequenceFormat::fasta), InputError);
}

TEST_CASE("lenient loading marks unknown symbols") {
  Alphabet a("AB");
  std::istringstream in(">t\nAZB\n");
  auto loaded = load_sequences(in, SequenceFormat::fasta, a, SymbolPolicy::lenient);
  CHECK(loaded.records[0].unknown_count() == 1);
  CHECK(loaded.records[0].at(2) == kUnknownCode);
  std::istringstream again(">t\nAZB\n");
  CHECK_THROWS_AS(load_sequences(again, SequenceFormat::fasta, a, SymbolPolicy::strict), InputError);
}

TEST_CASE("fasta writer round-trips") {
  Alphabet a("ACGT");
  Sequence s(a.encode("ACGTACGTACG"), "r1");
  std::ostringstream out;
  write_fasta(out, s, a, 4);
  CHECK(out.str() == ">r1\nACGT\nACGT\nACG\n");
  std::istringstream in(out.str());
  CHECK(load_sequence(in, SequenceFormat::fasta, a).sequence == s);
}

TEST_CASE("backward contexts") {
  Alphabet a("ABCDE");
  Sequence y(a.encode("ABACDCBEDEDE"));
  CHECK(a.decode(context_at(y, 3, 3)) == "ABA");
  CHECK(a.decode(context_at(y, 6, 2)) == "CD");
  CHECK(a.decode(context_at(y, 1, 1)) == "A");
  CHECK_THROWS_AS(context_at(y, 2, 3), RangeError);
  CHECK_THROWS_AS(context_at(y, 13, 1), RangeError);
  CHECK_THROWS_AS(context_at(y, 4, 0), RangeError);
}

TEST_CASE("sliding windows") {
  Alphabet a("ABCDE");
  Sequence y(a.encode("ABACDCBEDEDE"));
  CHECK(window_count(12, 4) == 8);
  CHECK_THROWS_AS(window_count(12, 12), RangeError);
  CHECK_THROWS_AS(window_count(12, 0), RangeError);
  std::vector<std::string> got;
  for (auto w : windows(y, 4)) got.push_back(a.decode(w.codes));
  REQUIRE(got.size() == 8);
  CHECK(got.front() == "ABAC");
  CHECK(got.back() == "EDED");
}

TEST_CASE("rational literals") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/10") == Rational(-1, 10));
  CHECK(parse_rational("0.05") == Rational(1, 20));
  CHECK(parse_rational("-.5") == Rational(-1, 2));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5E2") == 250);
  CHECK(to_string(Rational(-1, 10)) == "-1/10");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(to_decimal(Rational(-1, 10)) == "-0.1");
  CHECK(ceil_to_u64(Rational(7, 2)) == 4);
  CHECK(ceil_to_u64(Rational(8, 2)) == 4);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}
