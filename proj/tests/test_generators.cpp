#include <gtest/gtest.h>

#include <bit>

#include "seqpred/generators.hpp"

namespace {

using namespace seqpred;

TEST(ThueMorse, KnownPrefixes) {
  EXPECT_EQ(thue_morse(32).to_string(), "01101001100101101001011001101001");
  EXPECT_EQ(thue_morse(1).to_string(), "0");
  EXPECT_THROW(thue_morse(0), std::invalid_argument);
}

TEST(ThueMorse, MatchesBinaryDigitSumParity) {
  const auto w = thue_morse(1024);
  ASSERT_EQ(w.size(), 1024u);
  for (std::size_t t = 0; t < w.size(); ++t) EXPECT_EQ(w[t], static_cast<Symbol>(std::popcount(t) & 1)) << t;
}

TEST(ThueMorse, RejectsLengthAboveCap) { EXPECT_THROW(thue_morse(65, 64), std::length_error); }

TEST(Fibonacci, KnownPrefixes) {
  EXPECT_EQ(fibonacci_word(34).to_string(), "0100101001001010010100100101001001");
  EXPECT_EQ(fibonacci_word(2).to_string(), "01");
}

TEST(Fibonacci, PrefixRecurrence) {
  // u_1 = 0, u_2 = 01, u_(j+2) = u_(j+1) u_j, concatenated independently here.
  std::vector<std::string> u{"0", "01"};
  while (u.back().size() < 1000) u.push_back(u[u.size() - 1] + u[u.size() - 2]);
  const auto w = fibonacci_word(1000).to_string();
  for (const auto& s : u) {
    if (s.size() > w.size()) break;
    EXPECT_EQ(w.substr(0, s.size()), s);
  }
  // The other concatenation order is not a prefix of the word.
  for (std::size_t j = 3; j < u.size() && u[j].size() <= w.size(); ++j)
    EXPECT_NE(w.substr(0, u[j].size()), u[j - 2] + u[j - 1]);
}

TEST(PowerBlock, SmallCases) {
  EXPECT_EQ(power_block_word(0).to_string(), "ab");
  EXPECT_EQ(power_block_word(1).to_string(), "aabbaabb");
}

TEST(PowerBlock, BitRule) {
  for (unsigned k = 0; k <= 3; ++k) {
    const auto w = power_block_word(k);
    ASSERT_EQ(w.size(), std::size_t{2} << (2 * k));
    for (std::size_t t = 0; t < w.size(); ++t) EXPECT_EQ(w[t], (t >> k) & 1) << "k=" << k << " t=" << t;
  }
  EXPECT_EQ(power_block_word(3).size(), 128u);
}

TEST(Characteristic, RationalSlope) {
  EXPECT_EQ(characteristic_direct(Rational{1, 2}, 6).to_string(), "101010");
  EXPECT_THROW(characteristic_direct(Rational{0, 1}, 4), std::invalid_argument);
  EXPECT_THROW(characteristic_direct(Rational{3, 2}, 4), std::invalid_argument);
  const auto one = characteristic_direct(Rational{2, 7}, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_LE(one[0], 1u);
}

TEST(Characteristic, FirstBlocks) {
  const ContinuedFraction golden(std::vector<std::uint64_t>(30, 1));
  const auto s1 = characteristic_blocks(golden, 1);
  EXPECT_EQ(s1.block.to_string(), "1");
  EXPECT_EQ(s1.length, 1u);
  const auto t1 = characteristic_blocks(ContinuedFraction({2}), 1);
  EXPECT_EQ(t1.block.to_string(), "01");
  EXPECT_EQ(t1.length, 2u);
  EXPECT_THROW(characteristic_blocks(ContinuedFraction({2}), 2), std::invalid_argument);
}

TEST(Characteristic, BlocksArePrefixNested) {
  const ContinuedFraction cf({1, 1, 1, 1, 1});
  const auto q = cf.block_lengths(4);
  // q_0 = 1, q_1 = a_1, q_(j+1) = a_(j+1) q_j + q_(j-1).
  EXPECT_EQ(q, (std::vector<std::uint64_t>{1, 1, 2, 3, 5}));
  for (std::size_t j = 2; j <= 4; ++j) {
    const auto prev = characteristic_blocks(cf, j - 1).block.to_string();
    const auto cur = characteristic_blocks(cf, j).block.to_string();
    EXPECT_EQ(cur.size(), q[j]);
    EXPECT_EQ(cur.substr(0, prev.size()), prev);
  }
}

TEST(Characteristic, DirectMatchesBlockRecurrence) {
  const ContinuedFraction golden(std::vector<std::uint64_t>(30, 1));
  EXPECT_EQ(characteristic_direct(golden, 34).to_string(), characteristic_blocks(golden, 8).block.to_string());
  EXPECT_EQ(characteristic_blocks(golden, 8).length, 34u);
  for (const auto& cf : {ContinuedFraction({2, 3, 1, 1}), ContinuedFraction({1, 2, 3, 4, 5, 6, 7, 8}),
                         ContinuedFraction({3, 1, 4, 1, 5, 9, 2, 6})}) {
    for (std::size_t j = 1; j <= cf.depth(); ++j) {
      const auto b = characteristic_blocks(cf, j);
      EXPECT_EQ(characteristic_direct(cf, b.length), b.block) << j;
    }
  }
}

TEST(Characteristic, RejectsZeroCoefficient) { EXPECT_THROW(ContinuedFraction({1, 0}), std::invalid_argument); }

TEST(Morphic, ThueMorseMorphismReproducesThueMorse) {
  const auto h = Morphism::parse("0=01,1=10");
  EXPECT_TRUE(h.uniform(2));
  EXPECT_EQ(morphic_prefix(h, 0, 32), thue_morse(32));
}

TEST(Morphic, LinearAndQuadraticExamples) {
  EXPECT_EQ(morphic_prefix(Morphism::parse("a=ab,b=b"), 0, 10).to_string(), "abbbbbbbbb");
  EXPECT_EQ(morphic_prefix(Morphism::parse("a=ab,b=bc,c=c"), 0, 16).to_string(), "abbcbccbcccbcccc");
}

TEST(Morphic, RejectsBadMorphisms) {
  EXPECT_THROW(morphic_prefix(Morphism::parse("a=ba,b=b"), 0, 4), std::invalid_argument);
  EXPECT_THROW(morphic_prefix(Morphism::parse("a=a,b=b"), 0, 4), std::invalid_argument);
  EXPECT_THROW(Morphism::parse("a=ab"), std::invalid_argument);
  EXPECT_THROW(Morphism::parse("a=ax,b=b"), std::invalid_argument);
}

TEST(Morphic, CodingMapsFixedPoint) {
  const auto h = Morphism::parse("a=ab,b=ca,c=c");
  Coding c{Alphabet::shared_of_chars("01"), {0, 1, 1}};
  const auto w = morphic_prefix(h, 0, c, 12);
  const auto raw = morphic_prefix(h, 0, 12);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(w[i], raw[i] == 0 ? 0u : 1u);
}

TEST(GrowthProfile, Shapes) {
  const auto tm = growth_profile(Morphism::parse("0=01,1=10"), 0, 10);
  ASSERT_EQ(tm.size(), 10u);
  for (std::size_t i = 0; i < tm.size(); ++i) EXPECT_EQ(tm[i], std::uint64_t{2} << i);
  const auto lin = growth_profile(Morphism::parse("a=ab,b=b"), 0, 6);
  EXPECT_EQ(lin, (std::vector<std::uint64_t>{2, 3, 4, 5, 6, 7}));
  const auto quad = growth_profile(Morphism::parse("a=ab,b=bc,c=c"), 0, 12);
  for (std::size_t i = 2; i + 2 < quad.size(); ++i) {
    EXPECT_EQ(quad[i + 2] - 2 * quad[i + 1] + quad[i], quad[i + 1] - 2 * quad[i] + quad[i - 1]);
  }
}

}  // namespace
