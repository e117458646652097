#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "seqpred/generators.hpp"
#include "seqpred/suffix_index.hpp"

namespace {

using namespace seqpred;

std::vector<Symbol> random_text(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
  std::vector<Symbol> x(n);
  for (auto& s : x) s = static_cast<Symbol>(rng() % sigma);
  return x;
}

std::vector<std::uint32_t> naive_suffix_array(const std::vector<Symbol>& x) {
  std::vector<std::uint32_t> sa(x.size());
  std::iota(sa.begin(), sa.end(), 0u);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(x.begin() + a, x.end(), x.begin() + b, x.end());
  });
  return sa;
}

std::size_t scan_lce(const std::vector<Symbol>& x, std::size_t i, std::size_t j) {
  std::size_t k = 0;
  while (i + k < x.size() && j + k < x.size() && x[i + k] == x[j + k]) ++k;
  return k;
}

std::vector<std::size_t> brute_occurrences(const std::vector<Symbol>& x, std::size_t i, Symbol a) {
  std::vector<Symbol> pat(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
  pat.push_back(a);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j + pat.size() <= x.size(); ++j)
    if (std::equal(pat.begin(), pat.end(), x.begin() + static_cast<std::ptrdiff_t>(j))) out.push_back(j);
  return out;
}

std::size_t derived_probe_bound(std::size_t n) { return 6 * (floor_log2(n) + 1) + 3; }

TEST(SuffixArray, HandSorted) {
  const auto abab = Word::from_chars("ab", "abab");
  const SuffixIndex idx(abab);
  EXPECT_EQ(std::vector<std::uint32_t>(idx.suffix_array().begin(), idx.suffix_array().end()),
            (std::vector<std::uint32_t>{2, 0, 3, 1}));
  EXPECT_EQ(std::vector<std::uint32_t>(idx.inverse_suffix_array().begin(), idx.inverse_suffix_array().end()),
            (std::vector<std::uint32_t>{1, 3, 0, 2}));
  EXPECT_EQ(build_suffix_array(Word::from_chars("a", "aaa").symbols()), (std::vector<std::uint32_t>{2, 1, 0}));
}

TEST(SuffixArray, MatchesNaiveSort) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_text(rng, 1 + rng() % 64, 1 + rng() % 4);
    EXPECT_EQ(build_suffix_array(x), naive_suffix_array(x));
  }
  const auto tm = thue_morse(4096);
  EXPECT_EQ(build_suffix_array(tm.symbols()), naive_suffix_array(tm.data()));
}

TEST(SuffixArray, EmptyTextRejectedByIndex) { EXPECT_THROW(SuffixIndex(std::vector<Symbol>{}), std::invalid_argument); }

TEST(Lcp, KasaiMatchesScan) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_text(rng, 1 + rng() % 64, 1 + rng() % 3);
    const SuffixIndex idx(x);
    const auto lcp = build_lcp_array(x, idx.suffix_array(), idx.inverse_suffix_array());
    EXPECT_EQ(lcp[0], 0u);
    for (std::size_t r = 1; r < x.size(); ++r) EXPECT_EQ(lcp[r], scan_lce(x, idx.sa(r - 1), idx.sa(r)));
  }
}

TEST(Lce, Examples) {
  const SuffixIndex idx(Word::from_chars("ab", "abab"));
  EXPECT_EQ(idx.lce(0, 2), 2u);
  EXPECT_EQ(idx.lce(1, 1), 3u);
  EXPECT_THROW(idx.lce(0, 4), std::out_of_range);
}

TEST(Lce, MatchesScan) {
  std::mt19937_64 rng(3);
  const auto x = random_text(rng, 64, 2);
  const SuffixIndex idx(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) EXPECT_EQ(idx.lce(i, j), i == j ? x.size() - i : scan_lce(x, i, j));
}

TEST(PatternRange, HandExamples) {
  const SuffixIndex idx(Word::from_chars("ab", "abab"));
  const auto r = idx.pattern_range(2, 0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->width(), 1u);
  EXPECT_EQ(idx.sa(r->first), 0u);
  EXPECT_FALSE(idx.pattern_range(2, 1));
  // x[0:] has no strictly longer occurrence.
  EXPECT_FALSE(idx.pattern_range(0, 0));
  EXPECT_THROW(idx.pattern_range(4, 0), std::out_of_range);
}

TEST(Ipc, HandExamples) {
  const SuffixIndex idx(Word::from_chars("ab", "abababab"));
  EXPECT_EQ(idx.ipc(4, 0), 2u);
  EXPECT_EQ(idx.ipc(4, 1), 0u);
  const SuffixIndex small(Word::from_chars("abc", "abab"));
  EXPECT_EQ(small.ipc(3, 2), 0u);
}

TEST(Ipm, HandExamples) {
  const SuffixIndex idx(Word::from_chars("ab", "abab"));
  EXPECT_EQ(idx.ipm(2, 0), std::size_t{0});
  EXPECT_FALSE(idx.ipm(2, 1));
}

// Property: range, count and match agree with a quadratic scan on every
// (i, a), and the range is exactly the ranks of the occurrences.
TEST(PatternRange, MatchesBruteForceOnRandomWords) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t sigma = 2 + rng() % 3;
    const auto x = random_text(rng, 2 + rng() % 63, sigma);
    const SuffixIndex idx(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (Symbol a = 0; a < sigma; ++a) {
        const auto occ = brute_occurrences(x, i, a);
        const auto range = idx.pattern_range(i, a);
        ASSERT_EQ(idx.ipc(i, a), occ.size());
        ASSERT_EQ(range.has_value(), !occ.empty());
        if (!range) {
          EXPECT_FALSE(idx.ipm(i, a));
          continue;
        }
        std::vector<std::size_t> ranks;
        for (auto j : occ) ranks.push_back(idx.isa(j));
        std::sort(ranks.begin(), ranks.end());
        EXPECT_EQ(ranks.front(), range->first);
        EXPECT_EQ(ranks.back(), range->last);
        const auto m = idx.ipm(i, a);
        ASSERT_TRUE(m);
        EXPECT_TRUE(std::binary_search(occ.begin(), occ.end(), *m));
      }
    }
  }
}

// Three binary searches over at most n ranks, three probes per step, plus the
// initial inverse lookup and the two-probe symbol check.
TEST(PatternRange, ProbeCountWithinDerivedBound) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t sigma = 2 + rng() % 3;
    const auto x = random_text(rng, 2 + rng() % 63, sigma);
    const SuffixIndex idx(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (Symbol a = 0; a < sigma; ++a) {
        ProbeCounter pc;
        idx.pattern_range(i, a, &pc);
        EXPECT_LE(pc.total(), derived_probe_bound(x.size())) << "n=" << x.size();
        EXPECT_EQ(pc.isa, 1u);
      }
    }
  }
}

// Exhaustive over all binary words of length 2..10: the worst case probe
// count for each n is frozen here.
TEST(PatternRange, WorstCaseProbesSmallLengths) {
  const std::vector<std::size_t> frozen{0, 0, 11, 13, 17, 19, 19, 21, 23, 25, 25};
  for (std::size_t n = 2; n <= 10; ++n) {
    std::size_t worst = 0;
    for (std::uint32_t code = 0; code < (1u << n); ++code) {
      std::vector<Symbol> x(n);
      for (std::size_t b = 0; b < n; ++b) x[b] = (code >> b) & 1;
      const SuffixIndex idx(x);
      for (std::size_t i = 0; i < n; ++i)
        for (Symbol a = 0; a < 2; ++a) {
          ProbeCounter pc;
          idx.pattern_range(i, a, &pc);
          worst = std::max(worst, pc.total());
        }
    }
    EXPECT_EQ(worst, frozen[n]) << "n=" << n;
    EXPECT_EQ(pattern_range_probe_bound(n), derived_probe_bound(n));
    EXPECT_LE(worst, derived_probe_bound(n));
  }
}

}  // namespace
