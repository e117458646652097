// Reference word collection shared by the CLI suites and the tests.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "seqpred/automata.hpp"
#include "seqpred/core.hpp"
#include "seqpred/generators.hpp"

namespace seqpred {

struct CorpusWord {
  std::string name;
  Word word;
  /// Known upper bound on the base-2 automaticity, when the word comes from
  /// an explicit automaton.
  std::optional<std::size_t> automaticity_bound;
};

struct CorpusOptions {
  unsigned max_thue_morse_exponent = 14;
  std::size_t long_length = 10'000;
  std::size_t random_words = 200;
  std::size_t random_max_length = 256;
  std::uint64_t seed = 20240601;
};

inline std::vector<ContinuedFraction> corpus_fractions() {
  return {ContinuedFraction({1, 1, 1, 1, 1, 1, 1, 1}), ContinuedFraction({2, 1, 2, 1, 2, 1, 2, 1}),
          ContinuedFraction({1, 2, 3, 4, 5, 6, 7, 8}), ContinuedFraction({3, 1, 4, 1, 5, 9, 2, 6}),
          ContinuedFraction({2, 2, 2, 2, 2, 2, 2, 2})};
}

inline std::vector<std::string> corpus_morphisms() { return {"a=ab,b=bc,c=c", "a=ab,b=aa", "a=abc,b=ac,c=b"}; }

inline std::string cf_name(const ContinuedFraction& cf) {
  std::string s = "[";
  for (std::size_t i = 0; i < cf.depth(); ++i) s += (i ? "," : "") + std::to_string(cf.coefficients()[i]);
  return s + "]";
}

/// Uniform random word over `sigma` symbols named 0..sigma-1.
inline Word random_word(std::mt19937_64& rng, std::size_t n, std::size_t sigma = 2) {
  std::string chars;
  for (std::size_t i = 0; i < sigma; ++i) chars.push_back(static_cast<char>('0' + i));
  std::uniform_int_distribution<Symbol> pick(0, static_cast<Symbol>(sigma - 1));
  std::vector<Symbol> data(n);
  for (auto& s : data) s = pick(rng);
  return Word(Alphabet::shared_of_chars(chars), std::move(data));
}

/// Thue-Morse powers of two, a Fibonacci prefix, power-block words,
/// characteristic and morphic prefixes, and seeded random binary words.
inline std::vector<CorpusWord> standard_corpus(const CorpusOptions& o = {}) {
  std::vector<CorpusWord> out;
  for (unsigned j = 0; j <= o.max_thue_morse_exponent; ++j)
    out.push_back({"thue-morse/2^" + std::to_string(j), thue_morse(std::size_t{1} << j), 2});
  out.push_back({"fibonacci/" + std::to_string(o.long_length), fibonacci_word(o.long_length), std::nullopt});
  for (unsigned p = 0; p <= 3; ++p) out.push_back({"power-block/" + std::to_string(p), power_block_word(p), p + 3});
  for (const auto& cf : corpus_fractions())
    out.push_back({"characteristic/" + cf_name(cf), characteristic_direct(cf, o.long_length), std::nullopt});
  for (const auto& m : corpus_morphisms())
    out.push_back({"morphic/" + m, morphic_prefix(Morphism::parse(m), 0, o.long_length), std::nullopt});
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> len(1, o.random_max_length);
  for (std::size_t i = 0; i < o.random_words; ++i)
    out.push_back({"random/" + std::to_string(i), random_word(rng, len(rng)), std::nullopt});
  return out;
}

}  // namespace seqpred
