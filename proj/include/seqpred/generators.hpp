// Deterministic generators for the sequence families used as test beds.
#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqpred/core.hpp"

namespace seqpred {

/// Default cap on materialized generator output.
inline constexpr std::size_t kDefaultLengthCap = std::size_t{1} << 22;

inline std::shared_ptr<const Alphabet> binary_alphabet() {
  static const auto kBinary = Alphabet::shared_of_chars("01");
  return kBinary;
}

inline std::shared_ptr<const Alphabet> ab_alphabet() {
  static const auto kAb = Alphabet::shared_of_chars("ab");
  return kAb;
}

namespace detail {
inline void check_length(std::size_t n, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("requested length must be at least 1");
  if (n > cap) throw std::length_error("requested length " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}
}  // namespace detail

/// Prefix of length n of the Thue-Morse word, built by repeated
/// concatenation with the complement.
inline Word thue_morse(std::size_t n, std::size_t cap = kDefaultLengthCap) {
  detail::check_length(n, cap);
  std::vector<Symbol> u{0};
  while (u.size() < n) {
    const std::size_t half = u.size();
    u.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) u.push_back(1 - u[i]);
  }
  u.resize(n);
  return Word(binary_alphabet(), std::move(u));
}

/// Prefix of length n of the Fibonacci word: u0 = 0, u1 = 01, u(j+2) = u(j+1) u(j).
inline Word fibonacci_word(std::size_t n, std::size_t cap = kDefaultLengthCap) {
  detail::check_length(n, cap);
  std::vector<Symbol> prev{0}, cur{0, 1};
  while (cur.size() < n) {
    std::vector<Symbol> next(cur);
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur.resize(n);
  return Word(binary_alphabet(), std::move(cur));
}

/// (a^m b^m)^m with m = 2^k, over {a, b}.
inline Word power_block_word(unsigned k, std::size_t cap = kDefaultLengthCap) {
  if (2 * static_cast<std::uint64_t>(k) + 1 >= 63) throw std::length_error("power block exponent too large");
  const std::uint64_t total = std::uint64_t{1} << (2 * k + 1);
  if (total > cap) throw std::length_error("power block word of length " + std::to_string(total) + " exceeds cap");
  const std::size_t m = std::size_t{1} << k;
  std::vector<Symbol> out;
  out.reserve(total);
  for (std::size_t rep = 0; rep < m; ++rep) {
    out.insert(out.end(), m, 0);
    out.insert(out.end(), m, 1);
  }
  return Word(ab_alphabet(), std::move(out));
}

/// Exact rational p/q.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

/// Partial quotients a_1, a_2, ... of theta = [0; a_1, a_2, ...].
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<std::uint64_t> coefficients) : a_(std::move(coefficients)) {
    for (auto v : a_)
      if (v < 1) throw std::invalid_argument("continued fraction coefficients must be >= 1");
  }

  std::size_t depth() const { return a_.size(); }
  const std::vector<std::uint64_t>& coefficients() const { return a_; }

  /// a_j for j >= 1. Past the supplied depth the expansion continues with
  /// partial quotients 1, so every list names an irrational slope.
  std::uint64_t coefficient(std::size_t j) const {
    if (j == 0) throw std::out_of_range("continued fraction coefficients are 1-based");
    return j <= a_.size() ? a_[j - 1] : 1;
  }

  /// Block lengths q_0 .. q_j (q_0 = 1, q_1 = a_1, q_{i+1} = a_{i+1} q_i + q_{i-1}).
  std::vector<std::uint64_t> block_lengths(std::size_t j) const {
    std::vector<std::uint64_t> q{1};
    if (j >= 1) q.push_back(coefficient(1));
    for (std::size_t i = 1; i < j; ++i) q.push_back(checked_step(coefficient(i + 1), q[i], q[i - 1]));
    return q;
  }

  /// First convergent p/q of the (1-extended) expansion with q > min_den.
  Rational convergent_beyond(std::uint64_t min_den) const {
    // p_{-1}=1, q_{-1}=0; p_0=0, q_0=1.
    std::uint64_t p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (std::size_t j = 1; q <= min_den; ++j) {
      const std::uint64_t a = coefficient(j);
      const std::uint64_t p_next = checked_step(a, p, p_prev);
      const std::uint64_t q_next = checked_step(a, q, q_prev);
      p_prev = p;
      q_prev = q;
      p = p_next;
      q = q_next;
    }
    return {p, q};
  }

 private:
  static std::uint64_t checked_step(std::uint64_t a, std::uint64_t x, std::uint64_t y) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (x != 0 && a > (kMax - y) / x) throw std::overflow_error("continued fraction recurrence overflows 64 bits");
    return a * x + y;
  }

  std::vector<std::uint64_t> a_;
};

/// y[t] = floor((t+2) theta) - floor((t+1) theta) for exact rational theta in (0,1).
inline Word characteristic_direct(Rational theta, std::size_t n, std::size_t cap = kDefaultLengthCap) {
  detail::check_length(n, cap);
  if (theta.den == 0 || theta.num == 0 || theta.num >= theta.den)
    throw std::invalid_argument("slope must lie strictly between 0 and 1");
  if (n + 2 > std::numeric_limits<std::uint64_t>::max() / theta.num)
    throw std::overflow_error("characteristic word arithmetic overflows 64 bits");
  std::vector<Symbol> y(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint64_t hi = (t + 2) * theta.num / theta.den;
    const std::uint64_t lo = (t + 1) * theta.num / theta.den;
    y[t] = static_cast<Symbol>(hi - lo);
  }
  return Word(binary_alphabet(), std::move(y));
}

/// Characteristic word of theta = cf, evaluated at the first convergent whose
/// denominator exceeds n + 2 (exact on the first n symbols).
inline Word characteristic_direct(const ContinuedFraction& cf, std::size_t n, std::size_t cap = kDefaultLengthCap) {
  detail::check_length(n, cap);
  return characteristic_direct(cf.convergent_beyond(n + 2), n, cap);
}

struct CharacteristicBlock {
  Word block;
  std::uint64_t length = 0;
};

/// s_0 = 0, s_1 = 0^(a_1 - 1) 1, s_(j+1) = s_j^(a_(j+1)) s_(j-1).
inline CharacteristicBlock characteristic_blocks(const ContinuedFraction& cf, std::size_t j,
                                                 std::size_t cap = kDefaultLengthCap) {
  if (j > cf.depth()) throw std::invalid_argument("block level exceeds continued fraction depth");
  const auto q = cf.block_lengths(j);
  if (q[j] > cap) throw std::length_error("characteristic block exceeds length cap");
  std::vector<Symbol> prev{0};
  if (j == 0) return {Word(binary_alphabet(), prev), 1};
  std::vector<Symbol> cur(cf.coefficient(1) - 1, 0);
  cur.push_back(1);
  for (std::size_t i = 1; i < j; ++i) {
    std::vector<Symbol> next;
    next.reserve(q[i + 1]);
    for (std::uint64_t r = 0; r < cf.coefficient(i + 1); ++r) next.insert(next.end(), cur.begin(), cur.end());
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {Word(binary_alphabet(), std::move(cur)), q[j]};
}

/// Non-erasing morphism on an indexed alphabet.
class Morphism {
 public:
  Morphism(std::shared_ptr<const Alphabet> alphabet, std::vector<std::vector<Symbol>> rules)
      : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
    if (!alphabet_) throw std::invalid_argument("morphism requires an alphabet");
    if (rules_.size() != alphabet_->size()) throw std::invalid_argument("morphism needs one rule per symbol");
    for (std::size_t a = 0; a < rules_.size(); ++a) {
      if (rules_[a].empty())
        throw std::invalid_argument("morphism is erasing on '" + alphabet_->token(static_cast<Symbol>(a)) + "'");
      for (Symbol b : rules_[a])
        if (b >= alphabet_->size()) throw std::invalid_argument("morphism image uses a symbol outside the alphabet");
    }
  }

  /// Parses "a=ab,b=bc,c=c" over single-character symbols; the alphabet is the
  /// left-hand sides in order of appearance.
  static Morphism parse(std::string_view text) {
    std::vector<std::pair<char, std::string>> entries;
    std::size_t i = 0;
    while (i < text.size()) {
      std::size_t comma = text.find(',', i);
      if (comma == std::string_view::npos) comma = text.size();
      auto item = text.substr(i, comma - i);
      if (item.size() < 3 || item[1] != '=') throw std::invalid_argument("morphism rule must look like 'a=ab'");
      entries.emplace_back(item[0], std::string(item.substr(2)));
      i = comma + 1;
    }
    std::string chars;
    for (auto& [lhs, rhs] : entries) chars.push_back(lhs);
    auto alpha = Alphabet::shared_of_chars(chars);
    std::vector<std::vector<Symbol>> rules(entries.size());
    for (std::size_t r = 0; r < entries.size(); ++r) {
      for (char c : entries[r].second) {
        auto idx = alpha->index_of(std::string_view(&c, 1));
        if (!idx) throw std::invalid_argument(std::string("morphism image symbol '") + c + "' has no rule");
        rules[r].push_back(*idx);
      }
    }
    return Morphism(std::move(alpha), std::move(rules));
  }

  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& shared_alphabet() const { return alphabet_; }
  const std::vector<Symbol>& image(Symbol a) const { return rules_.at(a); }
  std::size_t size() const { return rules_.size(); }

  bool prolongable_on(Symbol a) const {
    const auto& img = rules_.at(a);
    return img.size() >= 2 && img[0] == a;
  }

  bool uniform(std::size_t k) const {
    for (const auto& r : rules_)
      if (r.size() != k) return false;
    return true;
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<std::vector<Symbol>> rules_;
};

/// Letter-to-letter map from a morphism alphabet to an output alphabet.
struct Coding {
  std::shared_ptr<const Alphabet> target;
  std::vector<Symbol> map;

  static Coding identity(const std::shared_ptr<const Alphabet>& alphabet) {
    Coding c{alphabet, std::vector<Symbol>(alphabet->size())};
    std::iota(c.map.begin(), c.map.end(), Symbol{0});
    return c;
  }
};

/// coding(h^omega(seed))[:n]. The fixed point satisfies x = h(x[0]) h(x[1]) ...,
/// so it is produced by expanding its own already-generated symbols.
inline Word morphic_prefix(const Morphism& h, Symbol seed, const Coding& coding, std::size_t n,
                           std::size_t cap = kDefaultLengthCap) {
  detail::check_length(n, cap);
  if (seed >= h.size()) throw std::invalid_argument("seed symbol outside the morphism alphabet");
  if (!h.prolongable_on(seed))
    throw std::invalid_argument("morphism is not prolongable on '" + h.alphabet().token(seed) +
                                "': its image must start with the seed and be longer than one symbol");
  if (coding.map.size() != h.size() || !coding.target) throw std::invalid_argument("coding must map every symbol");
  for (Symbol c : coding.map)
    if (c >= coding.target->size()) throw std::invalid_argument("coding maps outside its target alphabet");

  std::vector<Symbol> fixed(h.image(seed));
  std::size_t read = 1;
  while (fixed.size() < n) {
    if (read >= fixed.size()) throw std::runtime_error("seed orbit stopped growing before reaching the requested length");
    const auto& img = h.image(fixed[read++]);
    fixed.insert(fixed.end(), img.begin(), img.end());
  }
  fixed.resize(n);
  for (auto& s : fixed) s = coding.map[s];
  return Word(coding.target, std::move(fixed));
}

inline Word morphic_prefix(const Morphism& h, Symbol seed, std::size_t n, std::size_t cap = kDefaultLengthCap) {
  return morphic_prefix(h, seed, Coding::identity(h.shared_alphabet()), n, cap);
}

/// |h^i(seed)| for i = 1..iters, from per-symbol count vectors.
inline std::vector<std::uint64_t> growth_profile(const Morphism& h, Symbol seed, std::size_t iters) {
  if (iters < 1) throw std::invalid_argument("growth profile needs at least one iteration");
  if (seed >= h.size()) throw std::invalid_argument("seed symbol outside the morphism alphabet");
  if (!h.prolongable_on(seed)) throw std::invalid_argument("morphism is not prolongable on the seed");
  const std::size_t g = h.size();
  std::vector<std::uint64_t> counts(g, 0), next(g);
  counts[seed] = 1;
  std::vector<std::uint64_t> lengths;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t it = 0; it < iters; ++it) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t a = 0; a < g; ++a) {
      if (counts[a] == 0) continue;
      for (Symbol b : h.image(static_cast<Symbol>(a))) {
        if (next[b] > kMax - counts[a]) throw std::overflow_error("growth profile overflows 64 bits");
        next[b] += counts[a];
      }
    }
    counts.swap(next);
    std::uint64_t total = 0;
    for (auto c : counts) {
      if (total > kMax - c) throw std::overflow_error("growth profile overflows 64 bits");
      total += c;
    }
    lengths.push_back(total);
  }
  return lengths;
}

}  // namespace seqpred
