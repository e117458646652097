// Output DFAs over base-k digit strings (most significant digit first),
// automatic-word generation, and small exact automaticity oracles.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqpred/core.hpp"
#include "seqpred/generators.hpp"

namespace seqpred {

using Digit = std::uint32_t;

/// Smallest m with k^m >= n (0 for n <= 1).
inline unsigned padding_width(std::uint64_t n, std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("base must be at least 2");
  unsigned m = 0;
  std::uint64_t p = 1;
  while (p < n) {
    p = (p > UINT64_MAX / k) ? UINT64_MAX : p * k;
    ++m;
  }
  return m;
}

/// <t>_k^m: base-k digits of t padded with leading zeros to width m.
inline std::vector<Digit> base_k_digits(std::uint64_t t, std::uint64_t k, unsigned m) {
  if (k < 2) throw std::invalid_argument("base must be at least 2");
  std::vector<Digit> digits(m, 0);
  for (unsigned j = m; j-- > 0;) {
    digits[j] = static_cast<Digit>(t % k);
    t /= k;
  }
  if (t != 0) throw std::invalid_argument("index does not fit in the requested number of digits");
  return digits;
}

class OutputDfa {
 public:
  OutputDfa(std::size_t base, std::size_t initial, std::vector<std::vector<std::size_t>> transitions,
            std::vector<Symbol> outputs, std::shared_ptr<const Alphabet> output_alphabet)
      : base_(base),
        initial_(initial),
        delta_(std::move(transitions)),
        tau_(std::move(outputs)),
        alphabet_(std::move(output_alphabet)) {
    if (base_ < 2) throw std::invalid_argument("dfa base must be at least 2");
    if (delta_.empty()) throw std::invalid_argument("dfa needs at least one state");
    if (tau_.size() != delta_.size()) throw std::invalid_argument("dfa needs one output per state");
    if (initial_ >= delta_.size()) throw std::invalid_argument("dfa initial state out of range");
    if (!alphabet_) throw std::invalid_argument("dfa needs an output alphabet");
    for (const auto& row : delta_) {
      if (row.size() != base_) throw std::invalid_argument("dfa transition table must have one entry per digit");
      for (auto q : row)
        if (q >= delta_.size()) throw std::invalid_argument("dfa transition target out of range");
    }
    for (auto s : tau_)
      if (s >= alphabet_->size()) throw std::invalid_argument("dfa output outside its alphabet");
  }

  std::size_t states() const { return delta_.size(); }
  std::size_t base() const { return base_; }
  std::size_t initial() const { return initial_; }
  std::size_t next(std::size_t q, Digit d) const { return delta_.at(q).at(d); }
  Symbol output(std::size_t q) const { return tau_.at(q); }
  const std::vector<std::vector<std::size_t>>& transitions() const { return delta_; }
  const std::vector<Symbol>& outputs() const { return tau_; }
  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& shared_alphabet() const { return alphabet_; }

  /// delta*(q, digits).
  std::size_t run(std::size_t q, std::span<const Digit> digits) const {
    for (Digit d : digits) {
      if (d >= base_) throw std::invalid_argument("digit outside the dfa base");
      q = delta_[q][d];
    }
    return q;
  }

 private:
  std::size_t base_;
  std::size_t initial_;
  std::vector<std::vector<std::size_t>> delta_;
  std::vector<Symbol> tau_;
  std::shared_ptr<const Alphabet> alphabet_;
};

/// tau(delta*(q0, digits)).
inline Symbol dfa_eval(const OutputDfa& dfa, std::span<const Digit> digits) {
  return dfa.output(dfa.run(dfa.initial(), digits));
}

/// x[t] = M(<t>_k^m) for t < n with m = ceil(log_k n).
inline Word word_from_dfa(const OutputDfa& dfa, std::size_t k, std::size_t n, std::size_t cap = kDefaultLengthCap) {
  if (k != dfa.base()) throw std::invalid_argument("requested base does not match the dfa base");
  detail::check_length(n, cap);
  const unsigned m = padding_width(n, k);
  std::vector<Symbol> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = dfa_eval(dfa, base_k_digits(t, k, m));
  return Word(dfa.shared_alphabet(), std::move(out));
}

/// Base-2 automaton with p + 3 states generating (a^m b^m)^m, m = 2^p, from
/// (2p+1)-digit addresses: count p leading digits, then latch the next one.
inline OutputDfa power_block_dfa(std::size_t p) {
  const std::size_t sa = p + 1, sb = p + 2;
  std::vector<std::vector<std::size_t>> delta(p + 3);
  std::vector<Symbol> tau(p + 3, 0);
  for (std::size_t i = 0; i < p; ++i) delta[i] = {i + 1, i + 1};
  delta[p] = {sa, sb};
  delta[sa] = {sa, sa};
  delta[sb] = {sb, sb};
  tau[sb] = 1;
  return OutputDfa(2, 0, std::move(delta), std::move(tau), ab_alphabet());
}

/// Two-state parity automaton for the Thue-Morse word.
inline OutputDfa thue_morse_dfa() {
  return OutputDfa(2, 0, {{0, 1}, {1, 0}}, {0, 1}, binary_alphabet());
}

struct AutomaticityResult {
  std::size_t states = 0;
  OutputDfa dfa;
};

struct SearchBudget {
  std::uint64_t max_nodes = 20'000'000;
};

/// Smallest DFA (at most s_max states) with x[t] = M(<t>_k^m), m = ceil(log_k |x|).
/// Exhaustive backtracking that assigns transitions and outputs lazily; new
/// states are numbered in order of first use, which enumerates each DFA up to
/// renaming exactly once. Returns nullopt when no DFA with <= s_max states
/// exists; throws BudgetExceeded rather than answering from a partial search.
inline std::optional<AutomaticityResult> exact_automaticity(std::span<const Symbol> x,
                                                            std::shared_ptr<const Alphabet> alphabet,
                                                            std::size_t k, std::size_t s_max,
                                                            SearchBudget budget = {}) {
  if (x.empty()) throw std::invalid_argument("automaticity needs a nonempty word");
  if (k < 2) throw std::invalid_argument("base must be at least 2");
  const std::size_t n = x.size();
  const unsigned m = padding_width(n, k);
  std::vector<std::vector<Digit>> addr(n);
  for (std::size_t t = 0; t < n; ++t) addr[t] = base_k_digits(t, k, m);

  std::uint64_t nodes = 0;
  for (std::size_t s = 1; s <= s_max; ++s) {
    std::vector<std::vector<int>> delta(s, std::vector<int>(k, -1));
    std::vector<int> tau(s, -1);
    std::size_t used = 1;

    std::function<bool(std::size_t, unsigned, std::size_t)> search = [&](std::size_t t, unsigned pos,
                                                                        std::size_t q) -> bool {
      if (t == n) return true;
      if (pos == m) {
        const int want = static_cast<int>(x[t]);
        if (tau[q] == -1) {
          tau[q] = want;
          if (search(t + 1, 0, 0)) return true;
          tau[q] = -1;
          return false;
        }
        return tau[q] == want && search(t + 1, 0, 0);
      }
      const Digit d = addr[t][pos];
      if (delta[q][d] != -1) return search(t, pos + 1, static_cast<std::size_t>(delta[q][d]));
      const std::size_t limit = std::min(used + 1, s);
      for (std::size_t target = 0; target < limit; ++target) {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("automaticity search exceeded its node budget");
        const bool fresh = target == used;
        if (fresh) ++used;
        delta[q][d] = static_cast<int>(target);
        if (search(t, pos + 1, target)) return true;
        delta[q][d] = -1;
        if (fresh) --used;
      }
      return false;
    };

    if (search(0, 0, 0)) {
      std::vector<std::vector<std::size_t>> table(s, std::vector<std::size_t>(k, 0));
      std::vector<Symbol> out(s, 0);
      for (std::size_t q = 0; q < s; ++q) {
        for (std::size_t d = 0; d < k; ++d)
          if (delta[q][d] != -1) table[q][d] = static_cast<std::size_t>(delta[q][d]);
        if (tau[q] != -1) out[q] = static_cast<Symbol>(tau[q]);
      }
      return AutomaticityResult{s, OutputDfa(k, 0, std::move(table), std::move(out), std::move(alphabet))};
    }
  }
  return std::nullopt;
}

inline std::optional<AutomaticityResult> exact_automaticity(const Word& x, std::size_t k, std::size_t s_max,
                                                            SearchBudget budget = {}) {
  return exact_automaticity(x.symbols(), x.shared_alphabet(), k, s_max, budget);
}

/// Number of distinct aligned blocks x[i k^l : (i+1) k^l] lying fully inside x
/// at level l.
inline std::size_t distinct_aligned_blocks(std::span<const Symbol> x, std::size_t k, unsigned level) {
  std::size_t len = 1;
  for (unsigned i = 0; i < level; ++i) len *= k;
  auto less = [](std::span<const Symbol> a, std::span<const Symbol> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  std::set<std::span<const Symbol>, decltype(less)> seen(less);
  for (std::size_t start = 0; start + len <= x.size(); start += len) seen.insert(x.subspan(start, len));
  return seen.size();
}

/// Max over levels of the number of distinct aligned blocks: every distinct
/// block needs its own state, so this is a lower bound on the automaticity.
inline std::size_t block_state_lower_bound(std::span<const Symbol> x, std::size_t k) {
  if (k < 2) throw std::invalid_argument("base must be at least 2");
  std::size_t best = x.empty() ? 0 : 1;
  std::size_t len = 1;
  for (unsigned level = 0; len <= x.size(); ++level) {
    best = std::max(best, distinct_aligned_blocks(x, k, level));
    if (len > x.size() / k) break;
    len *= k;
  }
  return best;
}

inline std::size_t block_state_lower_bound(const Word& x, std::size_t k) {
  return block_state_lower_bound(x.symbols(), k);
}

}  // namespace seqpred
