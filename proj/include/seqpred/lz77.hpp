// Greedy LZ77 and k-aligned LZ77 factorizations, their validators, and the
// shortest-path oracle for the minimum number of LZ77-type factors.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpred/core.hpp"
#include "seqpred/suffix_index.hpp"

namespace seqpred {

/// Literal (first occurrence of a symbol) or copy of `length` symbols from
/// `source`. Copies may overlap their own destination.
struct Factor {
  enum class Kind { kLiteral, kCopy };
  Kind kind = Kind::kLiteral;
  Symbol symbol = 0;        // literals
  std::size_t source = 0;   // copies
  std::size_t length = 1;

  static Factor literal(Symbol s) { return {Kind::kLiteral, s, 0, 1}; }
  static Factor copy(std::size_t src, std::size_t len) { return {Kind::kCopy, 0, src, len}; }
  bool is_literal() const { return kind == Kind::kLiteral; }

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Factorization {
  std::vector<Factor> entries;

  std::size_t size() const { return entries.size(); }
  std::size_t total_length() const {
    std::size_t n = 0;
    for (const auto& f : entries) n += f.length;
    return n;
  }
  /// Start positions l_j of every factor.
  std::vector<std::size_t> starts() const {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    for (const auto& f : entries) {
      out.push_back(pos);
      pos += f.length;
    }
    return out;
  }
};

namespace detail {

// Segment tree over a fixed array: range minimum and nearest-below searches.
class MinTree {
 public:
  explicit MinTree(std::span<const std::uint32_t> a) : n_(a.size()) {
    size_ = 1;
    while (size_ < n_) size_ <<= 1;
    tree_.assign(2 * size_, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t i = 0; i < n_; ++i) tree_[size_ + i] = a[i];
    for (std::size_t i = size_; i-- > 1;) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
  }

  std::uint32_t min(std::size_t lo, std::size_t hi) const {  // inclusive
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t l = lo + size_, r = hi + size_ + 1; l < r; l >>= 1, r >>= 1) {
      if (l & 1) best = std::min(best, tree_[l++]);
      if (r & 1) best = std::min(best, tree_[--r]);
    }
    return best;
  }

  /// Largest k <= hi with a[k] < v.
  std::optional<std::size_t> last_below(std::size_t hi, std::uint32_t v) const {
    return last_below(1, 0, size_ - 1, hi, v);
  }
  /// Smallest k >= lo with a[k] < v.
  std::optional<std::size_t> first_below(std::size_t lo, std::uint32_t v) const {
    return first_below(1, 0, size_ - 1, lo, v);
  }

 private:
  std::optional<std::size_t> last_below(std::size_t node, std::size_t nl, std::size_t nr, std::size_t hi,
                                        std::uint32_t v) const {
    if (nl > hi || tree_[node] >= v) return std::nullopt;
    if (nl == nr) return nl;
    const std::size_t mid = (nl + nr) / 2;
    if (auto r = last_below(2 * node + 1, mid + 1, nr, hi, v)) return r;
    return last_below(2 * node, nl, mid, hi, v);
  }
  std::optional<std::size_t> first_below(std::size_t node, std::size_t nl, std::size_t nr, std::size_t lo,
                                         std::uint32_t v) const {
    if (nr < lo || nl >= n_ || tree_[node] >= v) return std::nullopt;
    if (nl == nr) return nl;
    const std::size_t mid = (nl + nr) / 2;
    if (auto r = first_below(2 * node, nl, mid, lo, v)) return r;
    return first_below(2 * node + 1, mid + 1, nr, lo, v);
  }

  std::size_t n_;
  std::size_t size_;
  std::vector<std::uint32_t> tree_;
};

inline std::size_t scan_lce(std::span<const Symbol> x, std::size_t i, std::size_t j) {
  std::size_t k = 0;
  while (i + k < x.size() && j + k < x.size() && x[i + k] == x[j + k]) ++k;
  return k;
}

// Greedy parse by previous/next-smaller-position candidates in suffix array
// order: among earlier positions, the longest match with suffix i is one of
// the two nearest ranks whose position precedes i.
inline Factorization greedy_parse(std::span<const Symbol> x, bool leftmost_sources) {
  Factorization f;
  const std::size_t n = x.size();
  if (n == 0) return f;
  const auto sa = build_suffix_array(x);
  std::vector<std::uint32_t> isa(n);
  for (std::size_t r = 0; r < n; ++r) isa[sa[r]] = static_cast<std::uint32_t>(r);

  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> psv(n, kNone), nsv(n, kNone), stack;
  stack.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    while (!stack.empty() && sa[stack.back()] > sa[r]) stack.pop_back();
    if (!stack.empty()) psv[r] = sa[stack.back()];
    stack.push_back(static_cast<std::uint32_t>(r));
  }
  stack.clear();
  for (std::size_t r = n; r-- > 0;) {
    while (!stack.empty() && sa[stack.back()] > sa[r]) stack.pop_back();
    if (!stack.empty()) nsv[r] = sa[stack.back()];
    stack.push_back(static_cast<std::uint32_t>(r));
  }

  std::optional<MinTree> lcp_tree, sa_tree;
  if (leftmost_sources) {
    const auto lcp = build_lcp_array(x, sa, isa);
    lcp_tree.emplace(lcp);
    sa_tree.emplace(sa);
  }

  std::size_t i = 0;
  while (i < n) {
    const std::size_t r = isa[i];
    std::size_t len = 0, src = 0;
    for (std::uint32_t cand : {psv[r], nsv[r]}) {
      if (cand == kNone) continue;
      const std::size_t l = scan_lce(x, i, cand);
      if (l > len) {
        len = l;
        src = cand;
      }
    }
    if (len == 0) {
      f.entries.push_back(Factor::literal(x[i]));
      i += 1;
      continue;
    }
    if (leftmost_sources) {
      // Ranks [lo, hi] share a prefix of length len with suffix i.
      const auto left = lcp_tree->last_below(r, static_cast<std::uint32_t>(len));
      const auto right = r + 1 < n ? lcp_tree->first_below(r + 1, static_cast<std::uint32_t>(len)) : std::nullopt;
      const std::size_t lo = left ? *left : 0;
      const std::size_t hi = right ? *right - 1 : n - 1;
      src = sa_tree->min(lo, hi);
    }
    f.entries.push_back(Factor::copy(src, len));
    i += len;
  }
  return f;
}

}  // namespace detail

/// Greedy LZ77 factorization; each copy records its leftmost source.
inline Factorization greedy_lz77(std::span<const Symbol> x) {
  if (x.empty()) throw std::invalid_argument("greedy_lz77 needs a nonempty word");
  return detail::greedy_parse(x, true);
}
inline Factorization greedy_lz77(const Word& x) { return greedy_lz77(x.symbols()); }

/// Number of factors of the greedy LZ77 factorization.
inline std::size_t lzc(std::span<const Symbol> x) {
  if (x.empty()) return 0;
  return detail::greedy_parse(x, false).size();
}
inline std::size_t lzc(const Word& x) { return lzc(x.symbols()); }

/// Checks the LZ77-type conditions: literals introduce new symbols, copies
/// match an earlier (possibly overlapping) source.
inline Violations validate_lz77_type(std::span<const Symbol> x, const Factorization& f) {
  Violations out;
  std::vector<char> seen(1, 0);
  auto mark = [&](Symbol s) {
    if (s >= seen.size()) seen.resize(s + 1, 0);
    seen[s] = 1;
  };
  auto was_seen = [&](Symbol s) { return s < seen.size() && seen[s]; };
  std::size_t pos = 0;
  for (std::size_t j = 0; j < f.entries.size(); ++j) {
    const auto& e = f.entries[j];
    if (e.length == 0) {
      out.push_back({j, "empty factor", ""});
      continue;
    }
    if (pos + e.length > x.size()) {
      out.push_back({j, "length", "factor runs past the end of the word"});
      break;
    }
    if (e.is_literal()) {
      if (e.length != 1) out.push_back({j, "length", "literal factors have length 1"});
      if (x[pos] != e.symbol) out.push_back({j, "literal mismatch", ""});
      if (was_seen(x[pos])) out.push_back({j, "literal not new", "symbol already occurred"});
    } else {
      if (e.source >= pos) {
        out.push_back({j, "source not earlier", ""});
      } else {
        for (std::size_t k = 0; k < e.length; ++k) {
          if (x[e.source + k] != x[pos + k]) {
            out.push_back({j, "copy mismatch", "at offset " + std::to_string(k)});
            break;
          }
        }
      }
    }
    for (std::size_t k = 0; k < e.length; ++k) mark(x[pos + k]);
    pos += e.length;
  }
  if (pos != x.size() && (out.empty() || out.back().kind != "length"))
    out.push_back({f.entries.size(), "length", "factor lengths do not sum to the word length"});
  return out;
}

struct FactorizationBudget {
  std::size_t max_length = std::size_t{1} << 12;
};

/// Minimum number of factors over all LZ77-type factorizations, by shortest
/// path over positions. Independent of the greedy parser: longest previous
/// factors come from a quadratic diagonal scan.
inline std::size_t min_factorization_size(std::span<const Symbol> x, FactorizationBudget budget = {}) {
  const std::size_t n = x.size();
  if (n > budget.max_length)
    throw BudgetExceeded("minimum factorization oracle limited to length " + std::to_string(budget.max_length));
  if (n == 0) return 0;
  std::vector<std::size_t> lpf(n, 0);
  for (std::size_t d = 1; d < n; ++d) {
    std::size_t run = 0;
    for (std::size_t p = n; p-- > d;) {
      run = (x[p] == x[p - d]) ? run + 1 : 0;
      lpf[p] = std::max(lpf[p], run);
    }
  }
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n + 1, kInf);
  dist[0] = 0;
  std::vector<char> seen;
  for (std::size_t p = 0; p < n; ++p) {
    const Symbol s = x[p];
    const bool fresh = s >= seen.size() || !seen[s];
    if (dist[p] != kInf) {
      if (fresh) dist[p + 1] = std::min(dist[p + 1], dist[p] + 1);
      for (std::size_t len = 1; len <= lpf[p]; ++len) dist[p + len] = std::min(dist[p + len], dist[p] + 1);
    }
    if (s >= seen.size()) seen.resize(s + 1, 0);
    seen[s] = 1;
  }
  return dist[n];
}
inline std::size_t min_factorization_size(const Word& x, FactorizationBudget budget = {}) {
  return min_factorization_size(x.symbols(), budget);
}

/// Factor of a k-aligned factorization: a whole aligned block of size
/// k^level (the last one may be cut short), copied from an earlier aligned
/// block of the same size, or a literal new symbol at level 0.
struct KFactor {
  std::size_t level = 0;
  std::optional<std::size_t> source_block;  // absent for literals
  std::size_t length = 1;

  bool is_literal() const { return !source_block.has_value(); }
  friend bool operator==(const KFactor&, const KFactor&) = default;
};

struct KFactorization {
  std::size_t base = 2;
  std::vector<KFactor> entries;
  std::size_t size() const { return entries.size(); }
};

namespace detail {
inline std::optional<std::size_t> checked_pow(std::size_t k, std::size_t e) {
  std::size_t p = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (p > std::numeric_limits<std::size_t>::max() / k) return std::nullopt;
    p *= k;
  }
  return p;
}
}  // namespace detail

/// Greedy k-aligned factorization: at each start, the highest level whose
/// aligned block (or the prefix of it left in the word) matches an earlier
/// aligned block of that level.
inline KFactorization greedy_k_lz77(std::span<const Symbol> x, std::size_t k) {
  if (k < 2) throw std::invalid_argument("base must be at least 2");
  if (x.empty()) throw std::invalid_argument("greedy_k_lz77 needs a nonempty word");
  KFactorization f{k, {}};
  const std::size_t n = x.size();
  std::size_t start = 0;
  while (start < n) {
    std::size_t top = 0;
    std::vector<std::size_t> sizes{1};
    if (start > 0) {
      std::size_t rest = start;
      while (rest % k == 0) {
        rest /= k;
        ++top;
        sizes.push_back(sizes.back() * k);
      }
    }
    std::optional<KFactor> chosen;
    if (start > 0) {
      for (std::size_t level = top + 1; level-- > 0 && !chosen;) {
        const std::size_t block = sizes[level];
        const std::size_t len = std::min(block, n - start);
        for (std::size_t i = 0; i < start / block; ++i) {
          if (std::equal(x.begin() + static_cast<std::ptrdiff_t>(i * block),
                         x.begin() + static_cast<std::ptrdiff_t>(i * block + len),
                         x.begin() + static_cast<std::ptrdiff_t>(start))) {
            chosen = KFactor{level, i, len};
            break;
          }
        }
      }
    }
    if (!chosen) chosen = KFactor{0, std::nullopt, 1};
    start += chosen->length;
    f.entries.push_back(*chosen);
  }
  return f;
}
inline KFactorization greedy_k_lz77(const Word& x, std::size_t k) { return greedy_k_lz77(x.symbols(), k); }

/// Checks alignment, block length, literal novelty and source containment.
inline Violations validate_k_lz77_type(std::span<const Symbol> x, std::size_t k, const KFactorization& f) {
  Violations out;
  if (k < 2) {
    out.push_back({0, "base", "base must be at least 2"});
    return out;
  }
  const std::size_t n = x.size();
  std::size_t start = 0;
  for (std::size_t j = 0; j < f.entries.size(); ++j) {
    const auto& e = f.entries[j];
    const auto block = detail::checked_pow(k, e.level);
    if (!block) {
      out.push_back({j, "level", "level too large"});
      break;
    }
    if (start % *block != 0) out.push_back({j, "alignment", "start not divisible by k^level"});
    const bool last = j + 1 == f.entries.size();
    if (e.length == 0 || e.length > *block || (!last && e.length != *block))
      out.push_back({j, "length", "factor must fill its aligned block"});
    if (start + e.length > n) {
      out.push_back({j, "length", "factor runs past the end of the word"});
      break;
    }
    if (e.is_literal()) {
      if (e.level != 0) out.push_back({j, "level", "literals live at level 0"});
      if (std::find(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(start), x[start]) !=
          x.begin() + static_cast<std::ptrdiff_t>(start))
        out.push_back({j, "literal not new", ""});
    } else {
      const std::size_t i = *e.source_block;
      if (i >= start / *block) {
        out.push_back({j, "source not earlier", ""});
      } else if (!std::equal(x.begin() + static_cast<std::ptrdiff_t>(i * *block),
                             x.begin() + static_cast<std::ptrdiff_t>(i * *block + e.length),
                             x.begin() + static_cast<std::ptrdiff_t>(start))) {
        out.push_back({j, "copy mismatch", ""});
      }
    }
    start += e.length;
  }
  if (start != n) out.push_back({f.entries.size(), "length", "factor lengths do not sum to the word length"});
  return out;
}

/// The same factors read as an ordinary LZ77-type factorization.
inline Factorization as_lz77(std::span<const Symbol> x, const KFactorization& f) {
  Factorization out;
  std::size_t start = 0;
  for (const auto& e : f.entries) {
    if (e.is_literal()) {
      out.entries.push_back(Factor::literal(x[start]));
    } else {
      const auto block = detail::checked_pow(f.base, e.level).value();
      out.entries.push_back(Factor::copy(*e.source_block * block, e.length));
    }
    start += e.length;
  }
  return out;
}

}  // namespace seqpred
