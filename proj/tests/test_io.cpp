#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "seqpred/corpus.hpp"
#include "seqpred/io.hpp"
#include "seqpred/lzp.hpp"

namespace {

using namespace seqpred;

TEST(WordFile, RoundTrip) {
  std::mt19937_64 rng(1);
  std::vector<Word> words{thue_morse(100), power_block_word(2), Word::from_chars("ab", ""),
                          Word::parse(std::make_shared<const Alphabet>(std::vector<std::string>{"lo", "hi", "mid"}),
                                      "lo hi mid mid")};
  for (int i = 0; i < 10; ++i) words.push_back(random_word(rng, rng() % 300, 1 + rng() % 5));
  for (const auto& w : words) {
    std::stringstream ss;
    write_word(ss, w);
    const auto back = read_word(ss);
    EXPECT_EQ(back, w);
    EXPECT_EQ(back.alphabet().tokens(), w.alphabet().tokens());
  }
}

TEST(WordFile, HeaderLayout) {
  std::ostringstream os;
  write_word(os, Word::from_chars("ab", "abba"));
  EXPECT_EQ(os.str(), std::string("alphabet=a,b n=4\n") + std::string("\x00\x01\x01\x00", 4));
}

TEST(WordFile, RejectsMalformedInput) {
  std::istringstream truncated(std::string("alphabet=a,b n=4\n") + std::string("\x00\x01", 2));
  EXPECT_THROW(read_word(truncated), FormatError);
  std::istringstream outside(std::string("alphabet=a,b n=1\n") + std::string("\x02", 1));
  EXPECT_THROW(read_word(outside), FormatError);
  std::istringstream no_n("alphabet=a,b\n");
  EXPECT_THROW(read_word(no_n), FormatError);
  std::istringstream dup("alphabet=a,a n=0\n");
  EXPECT_THROW(read_word(dup), FormatError);
}

TEST(DfaFile, RoundTrip) {
  for (const auto& m : {thue_morse_dfa(), power_block_dfa(0), power_block_dfa(3)}) {
    std::stringstream ss;
    write_dfa(ss, m);
    const auto back = read_dfa(ss);
    EXPECT_EQ(back.transitions(), m.transitions());
    EXPECT_EQ(back.outputs(), m.outputs());
    EXPECT_EQ(back.initial(), m.initial());
    EXPECT_EQ(back.base(), m.base());
    EXPECT_EQ(word_from_dfa(back, m.base(), 64), word_from_dfa(m, m.base(), 64));
  }
}

TEST(DfaFile, HandWrittenWithComments) {
  std::istringstream is("dfa states=2 base=2 alphabet=0,1\n# parity\n0 0 1\n\n1 1 0\n");
  EXPECT_EQ(word_from_dfa(read_dfa(is), 2, 32), thue_morse(32));
}

TEST(DfaFile, RejectsMalformedInput) {
  std::istringstream few("dfa states=3 base=2 alphabet=a,b\na 0 1\n");
  EXPECT_THROW(read_dfa(few), FormatError);
  std::istringstream target("dfa states=1 base=2 alphabet=a,b\na 0 4\n");
  EXPECT_THROW(read_dfa(target), FormatError);
  std::istringstream token("dfa states=1 base=2 alphabet=a,b\nc 0 0\n");
  EXPECT_THROW(read_dfa(token), FormatError);
  std::istringstream tag("nfa states=1 base=2 alphabet=a\n");
  EXPECT_THROW(read_dfa(tag), FormatError);
}

TEST(SlpFile, RoundTrip) {
  for (const auto& g : {fibonacci_slp(9), std::get<Slp>(slp_from_dfa(power_block_dfa(2), 2, 32)),
                        binarize(std::get<Slp>(slp_from_dfa(thue_morse_dfa(), 2, 64)))}) {
    std::stringstream ss;
    write_slp(ss, g);
    const auto back = read_slp(ss);
    EXPECT_EQ(back, g);
    EXPECT_TRUE(validate(back).empty());
  }
}

TEST(SlpFile, RejectsMalformedInput) {
  std::istringstream missing("slp root=0 rules=2 alphabet=a,b\n0 #1 a\n");
  EXPECT_THROW(read_slp(missing), FormatError);
  std::istringstream twice("slp root=0 rules=1 alphabet=a,b\n0 a b\n0 b a\n");
  EXPECT_THROW(read_slp(twice), FormatError);
  std::istringstream token("slp root=0 rules=1 alphabet=a,b\n0 a c\n");
  EXPECT_THROW(read_slp(token), FormatError);
  const Slp hashed(std::make_shared<const Alphabet>(std::vector<std::string>{"#x", "y"}),
                   {{SlpRef::term(0), SlpRef::term(1)}}, 0);
  std::ostringstream os;
  EXPECT_THROW(write_slp(os, hashed), std::invalid_argument);
}

TEST(FactorizationFile, RoundTrip) {
  const auto x = fibonacci_word(300);
  const auto f = greedy_lz77(x);
  std::stringstream ss;
  write_factorization(ss, f, x.alphabet());
  const auto back = read_factorization(ss, x.alphabet());
  ASSERT_EQ(back.size(), f.size());
  for (std::size_t j = 0; j < f.size(); ++j) EXPECT_EQ(back.entries[j], f.entries[j]);
}

TEST(FactorizationFile, LzpStateImport) {
  const auto x = thue_morse(200);
  LzpPredictor p(2);
  for (auto s : x.symbols()) p.update(s);
  std::stringstream ss;
  write_factorization(ss, p.state().as_factorization(), x.alphabet());
  EXPECT_EQ(lzp_state_from_factorization(2, read_factorization(ss, x.alphabet())), p.state());
}

TEST(FactorizationFile, RejectsMalformedLines) {
  const auto a = ab_alphabet();
  std::istringstream zero("L a\nC 0 0\n");
  EXPECT_THROW(read_factorization(zero, *a), FormatError);
  std::istringstream kind("X 1\n");
  EXPECT_THROW(read_factorization(kind, *a), FormatError);
  std::istringstream token("L z\n");
  EXPECT_THROW(read_factorization(token, *a), FormatError);
}

TEST(KFactorizationFile, Layout) {
  std::ostringstream os;
  write_k_factorization(os, greedy_k_lz77(Word::from_chars("01", "01010101"), 2));
  EXPECT_EQ(os.str(), "K 0 - 1\nK 0 - 1\nK 1 0 2\nK 2 0 4\n");
}

}  // namespace
