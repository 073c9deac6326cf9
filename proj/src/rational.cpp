#include "ctxtree/rational.hpp"

#include "ctxtree/error.hpp"

#include <cctype>
#include <charconv>

namespace ctxtree {

namespace {

using boost::multiprecision::mpz_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_int pow10(long exponent) {
  mpz_int result = 1;
  for (long k = 0; k < exponent; ++k) result *= 10;
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw InputError("invalid rational literal: " + original);
    const mpz_int d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in rational literal: " + original);
    value = Rational(mpz_int(std::string(num)), d);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
      if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) {
        throw InputError("invalid exponent in rational literal: " + original);
      }
      text = text.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    bool seen_point = false;
    for (char c : text) {
      if (c == '.' && !seen_point) {
        seen_point = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (seen_point) ++fraction_digits;
      } else {
        throw InputError("invalid rational literal: " + original);
      }
    }
    if (digits.empty()) throw InputError("invalid rational literal: " + original);
    exponent -= fraction_digits;
    if (exponent > 4000 || exponent < -4000) throw InputError("exponent out of range: " + original);
    const mpz_int mantissa{digits};
    value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (boost::multiprecision::denominator(value) == 1) return boost::multiprecision::numerator(value).str();
  return value.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_decimal(const Rational& value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, to_double(value));
  return std::string(buf, ptr);
}

std::uint64_t ceil_to_u64(const Rational& value) {
  if (value < 0) throw RangeError("ceil_to_u64 of a negative value");
  const mpz_int& num = boost::multiprecision::numerator(value);
  const mpz_int& den = boost::multiprecision::denominator(value);
  mpz_int q = num / den;
  if (q * den != num) q += 1;
  if (q > mpz_int(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
  return q.convert_to<std::uint64_t>();
}

}  // namespace ctxtree
