// Suffix array index over an explicit word, with the pattern-range search
// used to answer internal pattern count / match queries.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "seqpred/core.hpp"

namespace seqpred {

namespace detail {

// SA-IS over integer text with values in [0, upper]. Induced sorting with a
// virtual sentinel smaller than every symbol, so a proper prefix sorts first.
inline std::vector<int> sa_is(const std::vector<int>& s, int upper) {
  const int n = static_cast<int>(s.size());
  if (n == 0) return {};
  if (n == 1) return {0};
  if (n == 2) return s[0] < s[1] ? std::vector<int>{0, 1} : std::vector<int>{1, 0};

  std::vector<int> sa(n);
  std::vector<char> ls(n, 0);  // 1 = S-type
  for (int i = n - 2; i >= 0; --i) ls[i] = (s[i] == s[i + 1]) ? ls[i + 1] : (s[i] < s[i + 1]);

  std::vector<int> sum_l(upper + 1, 0), sum_s(upper + 1, 0);
  for (int i = 0; i < n; ++i) {
    if (!ls[i]) {
      ++sum_s[s[i]];
    } else {
      ++sum_l[s[i] + 1];
    }
  }
  for (int i = 0; i <= upper; ++i) {
    sum_s[i] += sum_l[i];
    if (i < upper) sum_l[i + 1] += sum_s[i];
  }

  auto induce = [&](const std::vector<int>& lms) {
    std::fill(sa.begin(), sa.end(), -1);
    std::vector<int> buf(sum_s);
    for (int d : lms) {
      if (d == n) continue;
      sa[buf[s[d]]++] = d;
    }
    buf = sum_l;
    sa[buf[s[n - 1]]++] = n - 1;
    for (int i = 0; i < n; ++i) {
      const int v = sa[i];
      if (v >= 1 && !ls[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
    }
    buf = sum_l;
    for (int i = n - 1; i >= 0; --i) {
      const int v = sa[i];
      if (v >= 1 && ls[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
    }
  };

  std::vector<int> lms_map(n + 1, -1);
  std::vector<int> lms;
  for (int i = 1; i < n; ++i) {
    if (!ls[i - 1] && ls[i]) {
      lms_map[i] = static_cast<int>(lms.size());
      lms.push_back(i);
    }
  }
  const int m = static_cast<int>(lms.size());
  induce(lms);

  if (m > 0) {
    std::vector<int> sorted_lms;
    sorted_lms.reserve(m);
    for (int v : sa)
      if (lms_map[v] != -1) sorted_lms.push_back(v);
    std::vector<int> rec_s(m);
    int rec_upper = 0;
    rec_s[lms_map[sorted_lms[0]]] = 0;
    for (int i = 1; i < m; ++i) {
      int l = sorted_lms[i - 1], r = sorted_lms[i];
      const int end_l = (lms_map[l] + 1 < m) ? lms[lms_map[l] + 1] : n;
      const int end_r = (lms_map[r] + 1 < m) ? lms[lms_map[r] + 1] : n;
      bool same = true;
      if (end_l - l != end_r - r) {
        same = false;
      } else {
        while (l < end_l && s[l] == s[r]) {
          ++l;
          ++r;
        }
        if (l == n || s[l] != s[r]) same = false;
      }
      if (!same) ++rec_upper;
      rec_s[lms_map[sorted_lms[i]]] = rec_upper;
    }
    const auto rec_sa = sa_is(rec_s, rec_upper);
    for (int i = 0; i < m; ++i) sorted_lms[i] = lms[rec_sa[i]];
    induce(sorted_lms);
  }
  return sa;
}

}  // namespace detail

/// Suffix array of `text` (rank -> position), ranks by the standard
/// lexicographic order on symbol indices.
inline std::vector<std::uint32_t> build_suffix_array(std::span<const Symbol> text) {
  if (text.empty()) return {};
  std::vector<int> s(text.begin(), text.end());
  const int upper = *std::max_element(s.begin(), s.end());
  const auto sa = detail::sa_is(s, upper);
  return {sa.begin(), sa.end()};
}

/// Kasai: lcp[r] = LCE(sa[r-1], sa[r]), lcp[0] = 0.
inline std::vector<std::uint32_t> build_lcp_array(std::span<const Symbol> text,
                                                  std::span<const std::uint32_t> sa,
                                                  std::span<const std::uint32_t> isa) {
  const std::size_t n = text.size();
  std::vector<std::uint32_t> lcp(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (isa[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[isa[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[isa[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

/// Inclusive rank interval [first, last].
struct RankRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t width() const { return last - first + 1; }
  friend bool operator==(const RankRange&, const RankRange&) = default;
};

/// Oracle-access tally for one pattern-range search.
struct ProbeCounter {
  std::size_t ra = 0;
  std::size_t sa = 0;
  std::size_t isa = 0;
  std::size_t lce = 0;
  std::size_t total() const { return ra + sa + isa + lce; }
};

/// Worst-case oracle calls of one pattern_range search: three binary searches
/// of at most floor(log2 n) + 1 steps and two probes per step, the inverse
/// lookup, and the two-probe symbol check.
inline std::size_t pattern_range_probe_bound(std::size_t n) {
  std::size_t steps = 1;
  while ((n >> steps) != 0) ++steps;  // floor(log2 n) + 1
  return 6 * steps + 3;
}

class SuffixIndex {
 public:
  explicit SuffixIndex(std::vector<Symbol> text) : text_(std::move(text)) {
    if (text_.empty()) throw std::invalid_argument("suffix index requires a nonempty word");
    sa_ = build_suffix_array(text_);
    isa_.assign(text_.size(), 0);
    for (std::size_t r = 0; r < sa_.size(); ++r) isa_[sa_[r]] = static_cast<std::uint32_t>(r);
  }
  explicit SuffixIndex(std::span<const Symbol> text) : SuffixIndex(std::vector<Symbol>(text.begin(), text.end())) {}
  explicit SuffixIndex(const Word& w) : SuffixIndex(w.data()) {}

  std::size_t size() const { return text_.size(); }
  std::span<const Symbol> text() const { return text_; }
  std::span<const std::uint32_t> suffix_array() const { return sa_; }
  std::span<const std::uint32_t> inverse_suffix_array() const { return isa_; }

  Symbol ra(std::size_t i) const { return text_.at(i); }
  std::size_t sa(std::size_t r) const { return sa_.at(r); }
  std::size_t isa(std::size_t i) const { return isa_.at(i); }

  /// Longest common prefix of the suffixes starting at i and j.
  std::size_t lce(std::size_t i, std::size_t j) const {
    const std::size_t n = text_.size();
    if (i >= n || j >= n) throw std::out_of_range("lce position out of range");
    if (i == j) return n - i;
    std::size_t k = 0;
    while (i + k < n && j + k < n && text_[i + k] == text_[j + k]) ++k;
    return k;
  }

  /// Maximal rank interval of suffixes having x[i:]·a as a prefix, found with
  /// three binary searches over the suffix array; nullopt when no suffix does.
  std::optional<RankRange> pattern_range(std::size_t i, Symbol a, ProbeCounter* probes = nullptr) const {
    const std::size_t n = text_.size();
    if (i >= n) throw std::out_of_range("pattern_range position out of range");
    ProbeCounter local;
    ProbeCounter& pc = probes ? *probes : local;
    auto SA = [&](std::size_t r) { ++pc.sa; return static_cast<std::size_t>(sa_[r]); };
    auto ISA = [&](std::size_t p) { ++pc.isa; return static_cast<std::size_t>(isa_[p]); };
    auto LCE = [&](std::size_t p, std::size_t q) { ++pc.lce; return lce(p, q); };
    auto RA = [&](std::size_t p) {
      ++pc.ra;
      // Every suffix strictly inside the x[i:]-prefixed range is longer than
      // x[i:], so the probe stays inside the text.
      if (p >= n) throw std::logic_error("pattern_range read past the end of the text");
      return text_[p];
    };

    using SInt = std::int64_t;
    const std::size_t len = n - i;
    const std::size_t range_start = ISA(i);

    // Upper end of the block of suffixes that start with x[i:].
    SInt left = static_cast<SInt>(range_start), right = static_cast<SInt>(n) - 1;
    std::size_t range_limit = range_start;
    while (left <= right) {
      const SInt mid = left + (right - left) / 2;
      const std::size_t j = SA(static_cast<std::size_t>(mid));
      if (LCE(i, j) >= len) {
        range_limit = static_cast<std::size_t>(mid);
        left = mid + 1;
      } else {
        right = mid - 1;
      }
    }
    if (range_limit == range_start) return std::nullopt;

    // Leftmost rank whose symbol at offset len is >= a.
    std::optional<std::size_t> r_start, r_end;
    left = static_cast<SInt>(range_start) + 1;
    right = static_cast<SInt>(range_limit);
    while (left <= right) {
      const SInt mid = left + (right - left) / 2;
      const std::size_t j = SA(static_cast<std::size_t>(mid));
      if (RA(j + len) >= a) {
        r_start = static_cast<std::size_t>(mid);
        right = mid - 1;
      } else {
        left = mid + 1;
      }
    }
    if (!r_start || RA(SA(*r_start) + len) != a) return std::nullopt;

    // Rightmost rank whose symbol at offset len is <= a.
    left = static_cast<SInt>(*r_start);
    right = static_cast<SInt>(range_limit);
    while (left <= right) {
      const SInt mid = left + (right - left) / 2;
      const std::size_t j = SA(static_cast<std::size_t>(mid));
      if (RA(j + len) <= a) {
        r_end = static_cast<std::size_t>(mid);
        left = mid + 1;
      } else {
        right = mid - 1;
      }
    }
    return RankRange{*r_start, *r_end};
  }

  /// Number of j with x[i:]·a a prefix of x[j:].
  std::size_t ipc(std::size_t i, Symbol a, ProbeCounter* probes = nullptr) const {
    const auto range = pattern_range(i, a, probes);
    return range ? range->width() : 0;
  }

  /// Some j with x[i:]·a a prefix of x[j:]: the lowest-ranked such suffix.
  std::optional<std::size_t> ipm(std::size_t i, Symbol a, ProbeCounter* probes = nullptr) const {
    const auto range = pattern_range(i, a, probes);
    if (!range) return std::nullopt;
    if (probes) ++probes->sa;
    return static_cast<std::size_t>(sa_[range->first]);
  }

 private:
  std::vector<Symbol> text_;
  std::vector<std::uint32_t> sa_;
  std::vector<std::uint32_t> isa_;
};

}  // namespace seqpred
