// Brute-force counting complexity and the plurality (halving) reference
// predictor over an explicitly enumerated version space.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqpred/automata.hpp"
#include "seqpred/core.hpp"
#include "seqpred/lz77.hpp"

namespace seqpred {

/// A named word complexity measure over symbol indices.
struct ComplexityMeasure {
  std::string name;
  std::function<std::size_t(std::span<const Symbol>)> evaluate;
};

inline ComplexityMeasure lzc_measure() {
  return {"lzc", [](std::span<const Symbol> x) { return lzc(x); }};
}

/// Exact k-automaticity with a state cap; the empty word counts as one state.
inline ComplexityMeasure automaticity_measure(std::size_t k, std::size_t sigma, std::size_t s_max = 8) {
  auto alphabet = std::make_shared<const Alphabet>([&] {
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < sigma; ++i) toks.push_back(std::to_string(i));
    return toks;
  }());
  return {"ac" + std::to_string(k), [=](std::span<const Symbol> x) -> std::size_t {
            if (x.empty()) return 1;
            auto r = exact_automaticity(x, alphabet, k, s_max);
            if (!r) throw BudgetExceeded("automaticity exceeds the state cap");
            return r->states;
          }};
}

struct EnumerationBudget {
  std::uint64_t max_words = std::uint64_t{1} << 20;
};

namespace detail {

inline std::uint64_t checked_power(std::size_t sigma, std::size_t n, const EnumerationBudget& budget) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (p > budget.max_words / sigma) throw BudgetExceeded("enumeration exceeds its word budget");
    p *= sigma;
  }
  return p;
}

/// Word number `idx` of length n, first symbol most significant.
inline void decode_word(std::uint64_t idx, std::size_t sigma, std::vector<Symbol>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Symbol>(idx % sigma);
    idx /= sigma;
  }
}

}  // namespace detail

/// Number of words of length n with complexity <= m.
inline std::uint64_t count_words_within(std::size_t n, std::size_t m, const ComplexityMeasure& c, std::size_t sigma,
                                        EnumerationBudget budget = {}) {
  if (sigma == 0) throw std::invalid_argument("alphabet size must be at least 1");
  const std::uint64_t total = detail::checked_power(sigma, n, budget);
  std::vector<Symbol> w(n);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::decode_word(idx, sigma, w);
    if (c.evaluate(w) <= m) ++count;
  }
  return count;
}

/// log2 of the count above; -infinity when no word qualifies.
inline double counting_complexity(std::size_t n, std::size_t m, const ComplexityMeasure& c, std::size_t sigma,
                                  EnumerationBudget budget = {}) {
  const auto count = count_words_within(n, m, c, sigma, budget);
  return count == 0 ? -std::numeric_limits<double>::infinity() : std::log2(static_cast<double>(count));
}

struct Phase {
  std::size_t start = 0;
  std::size_t complexity_bound = 1;
  std::size_t length_bound = 1;
  std::size_t mistakes = 0;
  /// |V| at the first step of the phase.
  std::uint64_t initial_versions = 0;
  /// Mistaken steps where the surviving version space was more than half.
  std::size_t halving_failures = 0;
};

struct PhaseLog {
  std::vector<Phase> phases;
  std::size_t total_mistakes = 0;
};

struct PluralityResult {
  RunRecord record;
  PhaseLog log;
};

namespace detail {

/// C(u) for every u with |u| <= max_len; table[len][index].
class MeasureCache {
 public:
  MeasureCache(const ComplexityMeasure& c, std::size_t sigma, EnumerationBudget budget)
      : c_(c), sigma_(sigma), budget_(budget) {}

  void extend_to(std::size_t max_len) {
    std::uint64_t total_words = 0;
    for (const auto& t : table_) total_words += t.size();
    while (table_.size() <= max_len) {
      const std::size_t len = table_.size();
      const std::uint64_t count = checked_power(sigma_, len, budget_);
      if (total_words + count > budget_.max_words) throw BudgetExceeded("version space exceeds its word budget");
      total_words += count;
      std::vector<std::uint32_t> values(count);
      std::vector<Symbol> w(len);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        decode_word(idx, sigma_, w);
        values[idx] = static_cast<std::uint32_t>(c_.evaluate(w));
      }
      table_.push_back(std::move(values));
    }
  }

  const std::vector<std::uint32_t>& of_length(std::size_t len) const { return table_.at(len); }

 private:
  const ComplexityMeasure& c_;
  std::size_t sigma_;
  EnumerationBudget budget_;
  std::vector<std::vector<std::uint32_t>> table_;
};

}  // namespace detail

/// Plurality over the version space {u : u[:t] = x, C(u) <= c, |u| <= l};
/// only words longer than t vote. Bounds double as the history outgrows them.
inline PluralityResult plurality_run(std::span<const Symbol> x, std::size_t sigma, const ComplexityMeasure& c,
                                     EnumerationBudget budget = {}, RunOptions opts = {}) {
  if (sigma == 0) throw std::invalid_argument("alphabet size must be at least 1");
  PluralityResult res;
  res.record.n = x.size();
  detail::MeasureCache cache(c, sigma, budget);

  std::size_t cb = 1, lb = 1;
  bool new_phase = true;
  std::uint64_t hist = 0;  // index of x[:t] among words of length t

  // Per-symbol vote counts and the full |V| for history index `h` of length t.
  auto census = [&](std::uint64_t h, std::size_t t, std::vector<std::uint64_t>& votes) {
    std::fill(votes.begin(), votes.end(), 0);
    std::uint64_t size = 0;
    for (std::size_t len = t; len <= lb; ++len) {
      const auto& vals = cache.of_length(len);
      std::uint64_t span = 1;
      for (std::size_t i = t; i < len; ++i) span *= sigma;
      const std::uint64_t lo = h * span;
      const std::uint64_t per_symbol = len > t ? span / sigma : 0;
      for (std::uint64_t idx = lo; idx < lo + span; ++idx) {
        if (vals[idx] > cb) continue;
        ++size;
        if (len > t) ++votes[(idx - lo) / per_symbol];
      }
    }
    return size;
  };

  std::vector<std::uint64_t> votes(sigma);
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t] >= sigma) throw std::invalid_argument("symbol outside the alphabet");
    cache.extend_to(lb);
    const std::uint64_t size = census(hist, t, votes);
    if (new_phase) {
      res.log.phases.push_back({t, cb, lb, 0, size, 0});
      new_phase = false;
    }
    Symbol guess = 0;
    for (Symbol a = 1; a < sigma; ++a)
      if (votes[a] > votes[guess]) guess = a;
    const bool wrong = guess != x[t];
    auto& phase = res.log.phases.back();
    if (wrong) {
      ++phase.mistakes;
      res.record.mistake_times.push_back(t);
      if (2 * votes[x[t]] > size) ++phase.halving_failures;
    }
    hist = hist * sigma + x[t];
    const std::size_t len = t + 1;
    const std::size_t cx = c.evaluate(x.subspan(0, len));
    if (len >= lb) {
      lb *= 2;
      new_phase = true;
    }
    if (cx >= cb) {
      cb = std::max(2 * cb, cx);
      new_phase = true;
    }
    if (opts.record_steps) res.record.steps.push_back({t, guess, x[t], wrong, 0});
  }
  res.record.mistakes = res.record.mistake_times.size();
  res.log.total_mistakes = res.record.mistakes;
  return res;
}

/// Phases whose mistakes exceed log2 of the length-exact census plus one.
struct PhaseCheck {
  std::size_t phase = 0;
  double bound = 0;
  std::size_t mistakes = 0;
  bool holds = true;
};

inline std::vector<PhaseCheck> check_phase_bounds(const PhaseLog& log, const ComplexityMeasure& c, std::size_t sigma,
                                                  EnumerationBudget budget = {}) {
  std::vector<PhaseCheck> out;
  for (std::size_t k = 0; k < log.phases.size(); ++k) {
    const auto& p = log.phases[k];
    const double n_c = counting_complexity(p.length_bound, p.complexity_bound, c, sigma, budget);
    const double bound = n_c + 1.0;
    out.push_back({k, bound, p.mistakes, static_cast<double>(p.mistakes) <= bound});
  }
  return out;
}

}  // namespace seqpred
