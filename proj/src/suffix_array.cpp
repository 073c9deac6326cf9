#include "ctxtree/suffix_array.hpp"

#include "ctxtree/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ctxtree {

namespace {

template <class Text>
std::vector<SaIndex> sa_naive(const Text& s) {
  const auto n = static_cast<SaIndex>(s.size());
  std::vector<SaIndex> sa(n);
  std::iota(sa.begin(), sa.end(), 0);
  std::sort(sa.begin(), sa.end(), [&](SaIndex l, SaIndex r) {
    if (l == r) return false;
    while (l < n && r < n) {
      if (s[l] != s[r]) return s[l] < s[r];
      ++l;
      ++r;
    }
    return l == n;
  });
  return sa;
}

// Induced sorting over an integer text with symbols in [0, upper].
template <class Text>
std::vector<SaIndex> sa_is(const Text& s, SaIndex upper) {
  const auto n = static_cast<SaIndex>(s.size());
  if (n == 0) return {};
  if (n < 16) return sa_naive(s);

  std::vector<SaIndex> sa(n);
  std::vector<bool> ls(n);  // true: S-type
  for (SaIndex i = n - 2; i >= 0; --i) {
    ls[i] = (s[i] == s[i + 1]) ? ls[i + 1] : (s[i] < s[i + 1]);
  }
  std::vector<SaIndex> sum_l(upper + 1), sum_s(upper + 1);
  for (SaIndex i = 0; i < n; ++i) {
    if (!ls[i]) {
      ++sum_s[s[i]];
    } else {
      ++sum_l[s[i] + 1];
    }
  }
  for (SaIndex i = 0; i <= upper; ++i) {
    sum_s[i] += sum_l[i];
    if (i < upper) sum_l[i + 1] += sum_s[i];
  }

  auto induce = [&](const std::vector<SaIndex>& lms) {
    std::fill(sa.begin(), sa.end(), -1);
    std::vector<SaIndex> buf(upper + 1);
    std::copy(sum_s.begin(), sum_s.end(), buf.begin());
    for (SaIndex d : lms) {
      if (d == n) continue;
      sa[buf[s[d]]++] = d;
    }
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    sa[buf[s[n - 1]]++] = n - 1;
    for (SaIndex i = 0; i < n; ++i) {
      SaIndex v = sa[i];
      if (v >= 1 && !ls[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
    }
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    for (SaIndex i = n - 1; i >= 0; --i) {
      SaIndex v = sa[i];
      if (v >= 1 && ls[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
    }
  };

  std::vector<SaIndex> lms_map(n + 1, -1);
  SaIndex m = 0;
  for (SaIndex i = 1; i < n; ++i) {
    if (!ls[i - 1] && ls[i]) lms_map[i] = m++;
  }
  std::vector<SaIndex> lms;
  lms.reserve(m);
  for (SaIndex i = 1; i < n; ++i) {
    if (!ls[i - 1] && ls[i]) lms.push_back(i);
  }

  induce(lms);

  if (m) {
    std::vector<SaIndex> sorted_lms;
    sorted_lms.reserve(m);
    for (SaIndex v : sa) {
      if (lms_map[v] != -1) sorted_lms.push_back(v);
    }
    std::vector<SaIndex> rec_s(m);
    SaIndex rec_upper = 0;
    rec_s[lms_map[sorted_lms[0]]] = 0;
    for (SaIndex i = 1; i < m; ++i) {
      SaIndex l = sorted_lms[i - 1];
      SaIndex r = sorted_lms[i];
      SaIndex end_l = (lms_map[l] + 1 < m) ? lms[lms_map[l] + 1] : n;
      SaIndex end_r = (lms_map[r] + 1 < m) ? lms[lms_map[r] + 1] : n;
      bool same = true;
      if (end_l - l != end_r - r) {
        same = false;
      } else {
        while (l < end_l) {
          if (s[l] != s[r]) break;
          ++l;
          ++r;
        }
        if (l == n || s[l] != s[r]) same = false;
      }
      if (!same) ++rec_upper;
      rec_s[lms_map[sorted_lms[i]]] = rec_upper;
    }
    std::vector<SaIndex>().swap(lms_map);

    auto rec_sa = sa_is(rec_s, rec_upper);
    std::vector<SaIndex>().swap(rec_s);
    for (SaIndex i = 0; i < m; ++i) sorted_lms[i] = lms[rec_sa[i]];
    std::vector<SaIndex>().swap(rec_sa);
    induce(sorted_lms);
  }
  return sa;
}

}  // namespace

std::vector<SaIndex> build_suffix_array(std::span<const Code> text, std::size_t alphabet_size) {
  if (text.size() >= static_cast<std::size_t>(std::numeric_limits<SaIndex>::max())) {
    throw RangeError("text too long for a 32-bit suffix array");
  }
  if (alphabet_size == 0) throw RangeError("empty alphabet");
  for (Code c : text) {
    if (c >= alphabet_size) throw RangeError("symbol code outside alphabet in suffix array input");
  }
  return sa_is(text, static_cast<SaIndex>(alphabet_size - 1));
}

}  // namespace ctxtree
