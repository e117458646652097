// Lempel-Ziv plurality predictor: the persistent state is the greedy LZ77
// factor list of the history; prediction is a plurality vote over the
// earlier occurrences of the last factor.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpred/core.hpp"
#include "seqpred/lz77.hpp"
#include "seqpred/suffix_index.hpp"

namespace seqpred {

/// One entry of the factor list: a single symbol, or (source, length >= 2).
struct LzpEntry {
  bool literal = true;
  Symbol symbol = 0;
  std::size_t source = 0;
  std::size_t length = 1;

  static LzpEntry of_symbol(Symbol s) { return {true, s, 0, 1}; }
  static LzpEntry reference(std::size_t src, std::size_t len) { return {false, 0, src, len}; }
  friend bool operator==(const LzpEntry&, const LzpEntry&) = default;
};

class LzpState {
 public:
  explicit LzpState(std::size_t sigma) : sigma_(sigma) {
    if (sigma_ == 0) throw std::invalid_argument("alphabet size must be at least 1");
  }
  LzpState(std::size_t sigma, std::vector<LzpEntry> entries) : LzpState(sigma) {
    for (const auto& e : entries) {
      if (e.literal && e.symbol >= sigma_) throw std::invalid_argument("literal outside the alphabet");
      length_ += e.literal ? 1 : e.length;
    }
    entries_ = std::move(entries);
  }

  std::size_t sigma() const { return sigma_; }
  const std::vector<LzpEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Total decompressed length n.
  std::size_t length() const { return length_; }
  std::size_t last_length() const {
    if (entries_.empty()) return 0;
    return entries_.back().literal ? 1 : entries_.back().length;
  }
  /// Start of the last factor in the decompressed history.
  std::size_t last_start() const { return length_ - last_length(); }

  void append_symbol(Symbol a) {
    entries_.push_back(LzpEntry::of_symbol(a));
    length_ += 1;
  }
  void extend_last(std::size_t source) {
    const std::size_t len = last_length() + 1;
    entries_.back() = LzpEntry::reference(source, len);
    length_ += 1;
  }

  /// Factor boundaries in the shared factorization type.
  Factorization as_factorization() const {
    Factorization f;
    for (const auto& e : entries_)
      f.entries.push_back(e.literal ? Factor::literal(e.symbol) : Factor::copy(e.source, e.length));
    return f;
  }

  friend bool operator==(const LzpState&, const LzpState&) = default;

 private:
  std::size_t sigma_;
  std::size_t length_ = 0;
  std::vector<LzpEntry> entries_;
};

/// Left-to-right expansion; references copy symbol by symbol so a source
/// overlapping its destination reads already-copied symbols.
inline std::vector<Symbol> decompress(const LzpState& state) {
  std::vector<Symbol> out;
  out.reserve(state.length());
  for (std::size_t i = 0; i < state.entries().size(); ++i) {
    const auto& e = state.entries()[i];
    if (e.literal) {
      out.push_back(e.symbol);
      continue;
    }
    if (e.source >= out.size())
      throw std::invalid_argument("entry " + std::to_string(i) + " copies from a position not yet decompressed");
    const std::size_t start = out.size();
    for (std::size_t k = 0; k < e.length; ++k) out.push_back(out[e.source + k]);
    if (start == 0) throw std::invalid_argument("entry " + std::to_string(i) + " references an empty history");
  }
  return out;
}

/// Builds a state from a factorization of `x` (length-1 copies become
/// literal entries).
inline LzpState lzp_state_from_factorization(std::span<const Symbol> x, std::size_t sigma, const Factorization& f) {
  std::vector<LzpEntry> entries;
  std::size_t pos = 0;
  for (const auto& e : f.entries) {
    if (pos + e.length > x.size()) throw std::invalid_argument("factorization longer than the word");
    if (e.length == 1) {
      entries.push_back(LzpEntry::of_symbol(x[pos]));
    } else {
      if (e.is_literal()) throw std::invalid_argument("literal factor with length > 1");
      entries.push_back(LzpEntry::reference(e.source, e.length));
    }
    pos += e.length;
  }
  LzpState s(sigma, std::move(entries));
  if (decompress(s) != std::vector<Symbol>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(pos)))
    throw std::invalid_argument("factorization does not reproduce the word");
  return s;
}

/// Builds a state from a stand-alone factorization, expanding copies as it
/// goes so length-1 copies can become symbol entries.
inline LzpState lzp_state_from_factorization(std::size_t sigma, const Factorization& f) {
  std::vector<Symbol> text;
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    const auto& e = f.entries[i];
    if (e.is_literal()) {
      if (e.symbol >= sigma) throw std::invalid_argument("entry " + std::to_string(i) + " is outside the alphabet");
      text.push_back(e.symbol);
      continue;
    }
    if (e.length == 0 || e.source >= text.size())
      throw std::invalid_argument("entry " + std::to_string(i) + " copies from a position not yet decompressed");
    for (std::size_t k = 0; k < e.length; ++k) text.push_back(text[e.source + k]);
  }
  return lzp_state_from_factorization(text, sigma, f);
}

/// Canonical encoding size: a tag bit per entry, ceil(log2 sigma) bits per
/// symbol entry, 2 ceil(log2(n+1)) bits per (source, length) entry.
inline std::uint64_t lzp_state_bits(const LzpState& state) {
  const std::uint64_t sym = ceil_log2(state.sigma());
  const std::uint64_t ref = 2 * std::uint64_t{ceil_log2(state.length() + 1)};
  std::uint64_t bits = 0;
  for (const auto& e : state.entries()) bits += 1 + (e.literal ? sym : ref);
  return bits;
}

/// Votes N_a = IPC(pos, a) for every symbol, pos the start of the last factor.
inline std::vector<std::size_t> lzp_votes(const LzpState& state, const SuffixIndex& history) {
  std::vector<std::size_t> votes(state.sigma(), 0);
  if (state.empty()) return votes;
  const std::size_t pos = state.last_start();
  for (Symbol a = 0; a < state.sigma(); ++a) votes[a] = history.ipc(pos, a);
  return votes;
}

/// Plurality over the votes; ties and the empty state go to symbol 0.
inline Symbol lzp_predict(const LzpState& state, const SuffixIndex* history) {
  if (state.empty()) return 0;
  const auto votes = lzp_votes(state, *history);
  Symbol best = 0;
  for (Symbol a = 1; a < votes.size(); ++a)
    if (votes[a] > votes[best]) best = a;
  return best;
}

/// Extends the last factor by `a` when the extension occurred before,
/// otherwise starts a new single-symbol factor.
inline void lzp_update(LzpState& state, Symbol a, const SuffixIndex* history) {
  if (a >= state.sigma()) throw std::invalid_argument("symbol outside the alphabet");
  if (state.empty()) {
    state.append_symbol(a);
    return;
  }
  if (auto match = history->ipm(state.last_start(), a)) {
    state.extend_last(*match);
  } else {
    state.append_symbol(a);
  }
}

/// Predictor wrapper. The decompressed history and its suffix index are a
/// derived cache, rebuilt once per step and never counted in state_bits.
class LzpPredictor {
 public:
  explicit LzpPredictor(std::size_t sigma) : state_(sigma) {}
  explicit LzpPredictor(LzpState state) : state_(std::move(state)), history_(decompress(state_)) {}

  std::size_t alphabet_size() const { return state_.sigma(); }
  const LzpState& state() const { return state_; }
  std::span<const Symbol> history() const { return history_; }

  std::vector<std::size_t> votes() const {
    if (state_.empty()) return std::vector<std::size_t>(state_.sigma(), 0);
    return lzp_votes(state_, index());
  }

  Symbol predict() const { return state_.empty() ? Symbol{0} : lzp_predict(state_, &index()); }

  void update(Symbol a) {
    lzp_update(state_, a, state_.empty() ? nullptr : &index());
    history_.push_back(a);
    index_.reset();
  }

  std::uint64_t state_bits() const { return lzp_state_bits(state_); }

 private:
  const SuffixIndex& index() const {
    if (!index_) index_.emplace(history_);
    return *index_;
  }

  LzpState state_;
  std::vector<Symbol> history_;
  mutable std::optional<SuffixIndex> index_;
};

/// Per-step vote audit of an LZP run.
struct LzpAudit {
  RunRecord record;
  /// Mistaken steps that continued the current copied factor.
  std::size_t halving_checks = 0;
  /// Of those, steps where the surviving vote count exceeded half the total.
  std::size_t halving_failures = 0;
  /// Factor list after the last step.
  std::optional<LzpState> final_state;
};

/// Runs LZP over x and checks, on every mistaken step that extends the last
/// factor, that the votes for the revealed symbol are at most half of all
/// votes.
inline LzpAudit audit_lzp(std::span<const Symbol> x, std::size_t sigma, RunOptions opts = {}) {
  LzpPredictor p(sigma);
  LzpAudit audit;
  audit.record.n = x.size();
  audit.record.max_state_bits = p.state_bits();
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t] >= sigma) throw std::invalid_argument("symbol outside the alphabet");
    const auto votes = p.votes();
    Symbol guess = 0;
    for (Symbol a = 1; a < votes.size(); ++a)
      if (votes[a] > votes[guess]) guess = a;
    if (guess != p.predict()) throw std::logic_error("vote audit disagrees with the predictor");
    const bool wrong = guess != x[t];
    if (wrong) {
      audit.record.mistake_times.push_back(t);
      if (votes[x[t]] > 0) {
        std::size_t total = 0;
        for (auto v : votes) total += v;
        ++audit.halving_checks;
        if (2 * votes[x[t]] > total) ++audit.halving_failures;
      }
    }
    p.update(x[t]);
    const auto bits = p.state_bits();
    audit.record.max_state_bits = std::max(audit.record.max_state_bits, bits);
    if (opts.record_steps) audit.record.steps.push_back({t, guess, x[t], wrong, bits});
  }
  audit.record.mistakes = audit.record.mistake_times.size();
  audit.final_state = p.state();
  return audit;
}

/// lzc * (log2 n + 1).
inline double lzp_mistake_bound(std::size_t lzc_value, std::size_t n) {
  return static_cast<double>(lzc_value) * (std::log2(static_cast<double>(std::max<std::size_t>(n, 1))) + 1.0);
}

}  // namespace seqpred
