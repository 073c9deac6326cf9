#pragma once

// Brute-force reference implementations. Deliberately dumb: every value is
// recomputed from the raw sequence by direct scanning.

#include "ctxtree/rational.hpp"
#include "ctxtree/sequence.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using ctxtree::Code;
using ctxtree::Rational;
using Codes = std::vector<Code>;

// (s_i, s_{i-1}, ..., s_{i-j+1}), i 1-based
inline Codes context(const Codes& s, std::size_t i, std::size_t j) {
  Codes w;
  for (std::size_t k = 0; k < j; ++k) w.push_back(s[i - 1 - k]);
  return w;
}

inline std::uint64_t count(const Codes& y, const Codes& w) {
  std::uint64_t c = 0;
  for (std::size_t i = w.size(); i <= y.size(); ++i) c += context(y, i, w.size()) == w;
  return c;
}

inline std::size_t longest_match(const Codes& y, const Codes& x, std::size_t i, std::size_t cap,
                                 std::uint64_t min_count) {
  std::size_t best = 0;
  for (std::size_t j = 1; j <= std::min(i, cap); ++j) {
    if (count(y, context(x, i, j)) >= min_count) best = j;
  }
  return best;
}

inline std::size_t feature_match(const std::vector<Codes>& features, const Codes& x, std::size_t i) {
  std::size_t best = 0;
  for (const auto& f : features) {
    if (f.size() <= i && context(x, i, f.size()) == f) best = std::max(best, f.size());
  }
  return best;
}

// Sliding scan: per-position match lengths of x under `match(x, i)`.
template <class Match>
std::vector<std::size_t> profile(const Codes& x, Match match) {
  std::vector<std::size_t> p;
  for (std::size_t i = 1; i <= x.size(); ++i) p.push_back(match(x, i));
  return p;
}

inline std::optional<Rational> average(const std::vector<std::size_t>& p, bool matched_only) {
  std::uint64_t sum = 0, matched = 0;
  for (auto l : p) {
    sum += l;
    matched += l > 0;
  }
  if (matched == 0) return std::nullopt;
  return ctxtree::make_rational(sum, matched_only ? matched : p.size());
}

struct WindowResult {
  std::optional<Rational> similarity;
  bool accepts = false;
};

// Every window y[s .. s+n-1] (s = 1 .. |y| - n) classified standalone.
template <class Match>
std::vector<WindowResult> windows(const Codes& y, std::size_t n, Match match, const Rational& train_average,
                                  std::size_t l_max, const Rational& threshold, bool matched_only) {
  std::vector<WindowResult> out;
  for (std::size_t s = 1; s + n <= y.size(); ++s) {
    Codes x(y.begin() + static_cast<std::ptrdiff_t>(s - 1), y.begin() + static_cast<std::ptrdiff_t>(s - 1 + n));
    auto avg = average(profile(x, match), matched_only);
    WindowResult r;
    if (avg) {
      r.similarity = (*avg - train_average) / Rational(l_max);
      r.accepts = *r.similarity > threshold;
    }
    out.push_back(r);
  }
  return out;
}

inline Codes random_codes(std::mt19937_64& rng, std::size_t n, std::size_t alphabet) {
  Codes s(n);
  for (auto& c : s) c = static_cast<Code>(rng() % alphabet);
  return s;
}

}  // namespace oracle
