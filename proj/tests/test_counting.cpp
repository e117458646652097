#include <gtest/gtest.h>

#include <cmath>

#include "seqpred/counting.hpp"
#include "seqpred/generators.hpp"

namespace {

using namespace seqpred;

Word bits(std::string_view s) { return Word::from_chars("01", s); }

TEST(CountingComplexity, SingleSymbols) {
  EXPECT_DOUBLE_EQ(counting_complexity(1, 1, lzc_measure(), 2), 1.0);
  EXPECT_DOUBLE_EQ(counting_complexity(1, 5, lzc_measure(), 3), std::log2(3.0));
}

TEST(CountingComplexity, EveryWordQualifiesAtItsLength) {
  EXPECT_DOUBLE_EQ(counting_complexity(4, 4, lzc_measure(), 2), 4.0);
}

TEST(CountingComplexity, EmptyClassIsMinusInfinity) {
  EXPECT_TRUE(std::isinf(counting_complexity(3, 0, lzc_measure(), 2)));
}

// Hand census at length 8: constant words, one switch at either end, and the
// two alternating words.
TEST(CountingComplexity, LengthEightCensus) {
  EXPECT_EQ(count_words_within(8, 2, lzc_measure(), 2), 2u);
  EXPECT_EQ(count_words_within(8, 3, lzc_measure(), 2), 8u);
  const std::vector<std::uint64_t> frozen{0, 0, 2, 8, 68, 194, 256, 256, 256};
  for (std::size_t m = 0; m < frozen.size(); ++m) EXPECT_EQ(count_words_within(8, m, lzc_measure(), 2), frozen[m]);
}

TEST(CountingComplexity, NonDecreasingInBound) {
  for (std::size_t n = 1; n <= 10; ++n) {
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m <= n; ++m) {
      const double v = counting_complexity(n, m, lzc_measure(), 2);
      EXPECT_GE(v, prev);
      prev = v;
    }
    EXPECT_DOUBLE_EQ(prev, static_cast<double>(n));
  }
}

// The census agrees with the shortest-path minimum factorization oracle.
TEST(CountingComplexity, MatchesMinimumFactorizationCensus) {
  const ComplexityMeasure dp{"min-factors", [](std::span<const Symbol> x) { return min_factorization_size(x); }};
  for (std::size_t n = 1; n <= 9; ++n)
    for (std::size_t m = 1; m <= n; ++m)
      EXPECT_EQ(count_words_within(n, m, lzc_measure(), 2), count_words_within(n, m, dp, 2));
}

TEST(CountingComplexity, AutomaticityCensus) {
  const auto ac = automaticity_measure(2, 2);
  EXPECT_EQ(count_words_within(8, 1, ac, 2), 2u);
  EXPECT_EQ(count_words_within(8, 4, ac, 2), 256u);
}

TEST(CountingComplexity, BudgetIsExplicit) {
  EXPECT_THROW(count_words_within(12, 3, lzc_measure(), 2, EnumerationBudget{1000}), BudgetExceeded);
}

TEST(PluralityRun, ConstantWordMakesNoMistakes) {
  const auto x = bits("0000000000");
  const auto res = plurality_run(x.symbols(), 2, lzc_measure());
  EXPECT_EQ(res.record.mistakes, 0u);
  for (const auto& chk : check_phase_bounds(res.log, lzc_measure(), 2)) EXPECT_TRUE(chk.holds);
}

TEST(PluralityRun, SingleSymbol) {
  for (auto s : {"0", "1"}) {
    const auto x = bits(s);
    EXPECT_LE(plurality_run(x.symbols(), 2, lzc_measure()).record.mistakes, 1u);
  }
}

TEST(PluralityRun, ThueMorsePhases) {
  const auto x = thue_morse(12);
  const auto res = plurality_run(x.symbols(), 2, lzc_measure());
  EXPECT_EQ(res.record.mistakes, 6u);
  ASSERT_EQ(res.log.phases.size(), 5u);
  std::size_t total = 0;
  for (const auto& p : res.log.phases) {
    EXPECT_EQ(p.halving_failures, 0u);
    total += p.mistakes;
  }
  EXPECT_EQ(total, res.record.mistakes);
  for (const auto& chk : check_phase_bounds(res.log, lzc_measure(), 2)) EXPECT_TRUE(chk.holds) << chk.phase;
}

// Property: over every binary word of length 8 the per-phase bound holds and
// phases double their bounds.
TEST(PluralityRun, PhaseBoundOnAllShortWords) {
  for (std::uint32_t code = 0; code < 256; ++code) {
    std::vector<Symbol> x(8);
    for (std::size_t b = 0; b < 8; ++b) x[b] = (code >> b) & 1;
    const auto res = plurality_run(x, 2, lzc_measure());
    for (const auto& chk : check_phase_bounds(res.log, lzc_measure(), 2)) ASSERT_TRUE(chk.holds) << code;
    for (std::size_t k = 1; k < res.log.phases.size(); ++k) {
      const auto& a = res.log.phases[k - 1];
      const auto& b = res.log.phases[k];
      EXPECT_TRUE(b.length_bound == 2 * a.length_bound || b.complexity_bound >= 2 * a.complexity_bound);
    }
  }
}

TEST(PluralityRun, RejectsSymbolOutsideAlphabet) {
  const std::vector<Symbol> x{0, 2};
  EXPECT_THROW(plurality_run(x, 2, lzc_measure()), std::invalid_argument);
}

}  // namespace
