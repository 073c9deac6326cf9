#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ctxtree {

/// Exact rational used for every probability, average and threshold that
/// takes part in a comparison. Floating point only appears when rendering.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "3", "-1/10", "0.05", "-.5" or "1e-3" exactly.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Shortest decimal that round-trips the nearest double, e.g. "-0.1".
std::string to_decimal(const Rational& value);

/// Smallest integer c with c >= value. Requires value >= 0.
std::uint64_t ceil_to_u64(const Rational& value);

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  return Rational(boost::multiprecision::mpz_int(num), boost::multiprecision::mpz_int(den));
}

}  // namespace ctxtree
