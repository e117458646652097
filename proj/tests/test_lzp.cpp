#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "seqpred/corpus.hpp"
#include "seqpred/generators.hpp"
#include "seqpred/lz77.hpp"
#include "seqpred/lzp.hpp"

namespace {

using namespace seqpred;

LzpPredictor fed(std::string_view text, std::string_view chars = "ab") {
  const auto w = Word::from_chars(chars, text);
  LzpPredictor p(w.sigma());
  for (auto s : w.symbols()) p.update(s);
  return p;
}

TEST(LzpUpdate, FirstSymbolIsLiteral) {
  const auto p = fed("a");
  EXPECT_EQ(p.state().entries(), (std::vector<LzpEntry>{LzpEntry::of_symbol(0)}));
}

TEST(LzpUpdate, ExtendsLastFactorWhenExtensionOccurred) {
  auto p = fed("aba");
  p.update(1);
  EXPECT_EQ(p.state().entries(),
            (std::vector<LzpEntry>{LzpEntry::of_symbol(0), LzpEntry::of_symbol(1), LzpEntry::reference(0, 2)}));
}

TEST(LzpUpdate, RepeatedSymbolStartsLengthOneEntry) {
  const auto p = fed("aba");
  EXPECT_EQ(p.state().entries(),
            (std::vector<LzpEntry>{LzpEntry::of_symbol(0), LzpEntry::of_symbol(1), LzpEntry::of_symbol(0)}));
}

TEST(LzpUpdate, RejectsSymbolOutsideAlphabet) {
  LzpPredictor p(2);
  EXPECT_THROW(p.update(2), std::invalid_argument);
}

TEST(LzpPredict, VotesAfterAba) {
  const auto p = fed("aba");
  EXPECT_EQ(p.votes(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.predict(), 1u);
}

TEST(LzpPredict, ColdStartAndTiesGoToSymbolZero) {
  EXPECT_EQ(LzpPredictor(3).predict(), 0u);
  const auto p = fed("ab");
  EXPECT_EQ(p.votes(), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(p.predict(), 0u);
}

TEST(LzpPredict, PredictDoesNotChangeState) {
  auto p = fed("abaab");
  const auto before = p.state();
  (void)p.predict();
  (void)p.votes();
  EXPECT_EQ(p.state(), before);
}

TEST(LzpRun, HandTraceOnAba) {
  LzpPredictor p(2);
  const auto rec = run_predictor(p, Word::from_chars("ab", "aba"));
  EXPECT_EQ(rec.mistake_times, (std::vector<std::size_t>{1}));
}

TEST(Decompress, Examples) {
  EXPECT_EQ(decompress(LzpState(2, {LzpEntry::of_symbol(0), LzpEntry::of_symbol(1), LzpEntry::reference(0, 2)})),
            (std::vector<Symbol>{0, 1, 0, 1}));
  EXPECT_EQ(decompress(LzpState(2, {LzpEntry::of_symbol(0), LzpEntry::reference(0, 3)})),
            (std::vector<Symbol>{0, 0, 0, 0}));
  EXPECT_TRUE(decompress(LzpState(2)).empty());
}

TEST(Decompress, RejectsForwardSourceWithEntryIndex) {
  const LzpState bad(2, {LzpEntry::of_symbol(0), LzpEntry::reference(1, 2)});
  try {
    decompress(bad);
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("entry 1"), std::string::npos);
  }
  EXPECT_THROW(LzpState(2, {LzpEntry::of_symbol(2)}), std::invalid_argument);
}

TEST(StateFromFactorization, RoundTripsAndRejects) {
  const auto x = thue_morse(64);
  const auto p = [&] {
    LzpPredictor q(2);
    for (auto s : x.symbols()) q.update(s);
    return q;
  }();
  const auto rebuilt = lzp_state_from_factorization(2, p.state().as_factorization());
  EXPECT_EQ(rebuilt, p.state());
  const Factorization bad{{Factor::literal(0), Factor::copy(3, 2)}};
  EXPECT_THROW(lzp_state_from_factorization(2, bad), std::invalid_argument);
  const Factorization outside{{Factor::literal(4)}};
  EXPECT_THROW(lzp_state_from_factorization(2, outside), std::invalid_argument);
}

TEST(StateBits, EncodingRule) {
  EXPECT_EQ(lzp_state_bits(LzpState(2)), 0u);
  EXPECT_EQ(lzp_state_bits(LzpState(2, {LzpEntry::of_symbol(0)})), 2u);
  // n = 4: references cost 1 + 2 * ceil(log2 5) = 7 bits.
  EXPECT_EQ(lzp_state_bits(LzpState(2, {LzpEntry::of_symbol(0), LzpEntry::of_symbol(1), LzpEntry::reference(0, 2)})),
            2u + 2u + 7u);
}

TEST(StateBits, ThueMorseWithinLogShape) {
  const auto x = thue_morse(std::size_t{1} << 14);
  LzpPredictor p(2);
  for (auto s : x.symbols()) p.update(s);
  const double shape = static_cast<double>(lzc(x)) * 14.0;
  EXPECT_EQ(p.state_bits(), 752u);
  EXPECT_LE(static_cast<double>(p.state_bits()), 2.0 * shape);
}

// Property: after every prefix the factor list has exactly the boundaries of
// the batch greedy parse.
TEST(LzpState, EqualsGreedyParseOnEveryPrefix) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t sigma = 1 + rng() % 3;
    const auto x = random_word(rng, 1 + rng() % 80, sigma);
    LzpPredictor p(sigma);
    for (std::size_t t = 0; t < x.size(); ++t) {
      p.update(x[t]);
      const auto g = greedy_lz77(x.symbols().first(t + 1));
      ASSERT_EQ(p.state().entries().size(), g.size());
      ASSERT_EQ(p.state().as_factorization().starts(), g.starts());
      ASSERT_EQ(decompress(p.state()), std::vector<Symbol>(x.data().begin(), x.data().begin() + t + 1));
    }
  }
}

TEST(LzpBound, HoldsOnStructuredAndRandomWords) {
  std::vector<Word> words{thue_morse(4096), fibonacci_word(4096), power_block_word(3),
                          characteristic_direct(ContinuedFraction({2, 1, 2, 1, 2, 1, 2, 1}), 4096),
                          morphic_prefix(Morphism::parse("a=ab,b=bc,c=c"), 0, 4096)};
  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) words.push_back(random_word(rng, 1 + rng() % 256));
  for (const auto& x : words) {
    const auto audit = audit_lzp(x.symbols(), x.sigma());
    EXPECT_LE(static_cast<double>(audit.record.mistakes), lzp_mistake_bound(lzc(x), x.size())) << x.size();
    EXPECT_EQ(audit.halving_failures, 0u);
  }
}

TEST(LzpAudit, MatchesPlainRun) {
  const auto x = fibonacci_word(500);
  LzpPredictor p(2);
  const auto plain = run_predictor(p, x, RunOptions{true});
  const auto audit = audit_lzp(x.symbols(), 2, RunOptions{true});
  EXPECT_EQ(audit.record, plain);
  EXPECT_GT(audit.halving_checks, 0u);
}

TEST(LzpBound, Formula) {
  EXPECT_DOUBLE_EQ(lzp_mistake_bound(3, 8), 12.0);
  EXPECT_DOUBLE_EQ(lzp_mistake_bound(1, 1), 1.0);
}

}  // namespace
