// Alphabet and word primitives, the predictor contract, and the run harness.
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seqpred {

/// Index of a symbol in its alphabet. Index order is the symbol order used
/// for every tie-break and every lexicographic comparison.
using Symbol = std::uint32_t;

/// Thrown when an exhaustive oracle would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One failed structural check: where it happened and a short kind tag.
struct Violation {
  std::size_t where = 0;
  std::string kind;
  std::string detail;
};

using Violations = std::vector<Violation>;

class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const auto& tok = tokens_[i];
      if (tok.empty()) throw std::invalid_argument("alphabet token must be nonempty");
      for (unsigned char c : tok) {
        if (c <= 0x20 || c == 0x7f || c == ',')
          throw std::invalid_argument("alphabet token '" + tok + "' is not a printable token");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (tokens_[j] == tok) throw std::invalid_argument("duplicate alphabet token '" + tok + "'");
      }
    }
  }

  /// One single-character token per character of `chars`, in order.
  static Alphabet of_chars(std::string_view chars) {
    std::vector<std::string> toks;
    for (char c : chars) toks.emplace_back(1, c);
    return Alphabet(std::move(toks));
  }

  static std::shared_ptr<const Alphabet> shared_of_chars(std::string_view chars) {
    return std::make_shared<const Alphabet>(of_chars(chars));
  }

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::optional<Symbol> index_of(std::string_view tok) const {
    for (std::size_t i = 0; i < tokens_.size(); ++i)
      if (tokens_[i] == tok) return static_cast<Symbol>(i);
    return std::nullopt;
  }

  bool single_char_tokens() const {
    return std::all_of(tokens_.begin(), tokens_.end(), [](const auto& t) { return t.size() == 1; });
  }

  /// Bits needed to index one symbol: ceil(log2(sigma)).
  unsigned symbol_bits() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> tokens_;
};

/// ceil(log2(v)) for v >= 1; 0 for v <= 1.
constexpr unsigned ceil_log2(std::uint64_t v) {
  unsigned r = 0;
  while ((std::uint64_t{1} << r) < v) ++r;
  return r;
}

/// floor(log2(v)) for v >= 1.
constexpr unsigned floor_log2(std::uint64_t v) {
  unsigned r = 0;
  while (v >>= 1) ++r;
  return r;
}

inline unsigned Alphabet::symbol_bits() const { return ceil_log2(tokens_.size()); }

/// Immutable symbol sequence over a shared alphabet.
class Word {
 public:
  Word(std::shared_ptr<const Alphabet> alphabet, std::vector<Symbol> data)
      : alphabet_(std::move(alphabet)), data_(std::move(data)) {
    if (!alphabet_) throw std::invalid_argument("word requires an alphabet");
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (data_[i] >= alphabet_->size())
        throw std::invalid_argument("symbol index " + std::to_string(data_[i]) + " at position " +
                                    std::to_string(i) + " is outside the alphabet");
    }
  }

  /// Parses text over `alphabet`: character-wise when every token is a single
  /// character, whitespace-separated tokens otherwise.
  static Word parse(std::shared_ptr<const Alphabet> alphabet, std::string_view text) {
    std::vector<Symbol> data;
    auto add = [&](std::string_view tok) {
      auto idx = alphabet->index_of(tok);
      if (!idx) throw std::invalid_argument("token '" + std::string(tok) + "' not in alphabet");
      data.push_back(*idx);
    };
    if (alphabet->single_char_tokens()) {
      for (char c : text) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') continue;
        add(std::string_view(&c, 1));
      }
    } else {
      std::size_t i = 0;
      while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) add(text.substr(i, j - i));
        i = j;
      }
    }
    return Word(std::move(alphabet), std::move(data));
  }

  /// Word over the characters of `chars` (in order) spelling `text`.
  static Word from_chars(std::string_view chars, std::string_view text) {
    return parse(Alphabet::shared_of_chars(chars), text);
  }

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  Symbol operator[](std::size_t i) const { return data_[i]; }
  std::span<const Symbol> symbols() const { return data_; }
  const std::vector<Symbol>& data() const { return data_; }
  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& shared_alphabet() const { return alphabet_; }
  std::size_t sigma() const { return alphabet_->size(); }

  /// u[:n], clamped to the word length.
  Word prefix(std::size_t n) const {
    n = std::min(n, data_.size());
    return Word(alphabet_, std::vector<Symbol>(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  std::string to_string() const {
    std::string out;
    const bool compact = alphabet_->single_char_tokens();
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!compact && i > 0) out.push_back(' ');
      out += alphabet_->token(data_[i]);
    }
    return out;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.data_ == b.data_ && *a.alphabet_ == *b.alphabet_;
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<Symbol> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.to_string(); }

/// State-based online predictor. `predict` must not change the persistent
/// state; `state_bits` is the size of the predictor's canonical serialization.
template <class P>
concept Predictor = requires(P& p, const P& cp, Symbol a) {
  { cp.predict() } -> std::convertible_to<Symbol>;
  p.update(a);
  { cp.state_bits() } -> std::convertible_to<std::uint64_t>;
  { cp.alphabet_size() } -> std::convertible_to<std::size_t>;
};

struct StepRow {
  std::size_t t = 0;
  Symbol predicted = 0;
  Symbol observed = 0;
  bool mistake = false;
  std::uint64_t state_bits = 0;

  friend bool operator==(const StepRow&, const StepRow&) = default;
};

struct RunRecord {
  std::size_t n = 0;
  std::size_t mistakes = 0;
  std::vector<std::size_t> mistake_times;
  std::uint64_t max_state_bits = 0;
  std::vector<StepRow> steps;  // filled only when requested

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunOptions {
  bool record_steps = false;
};

/// Runs `predictor` over `target`, one round per symbol: predict, compare,
/// reveal. The state size is sampled on the initial state and after every
/// update.
template <Predictor P>
RunRecord run_predictor(P& predictor, std::span<const Symbol> target, RunOptions opts = {}) {
  for (std::size_t t = 0; t < target.size(); ++t) {
    if (target[t] >= predictor.alphabet_size())
      throw std::invalid_argument("target symbol at position " + std::to_string(t) +
                                  " is outside the predictor's alphabet");
  }
  RunRecord rec;
  rec.n = target.size();
  rec.max_state_bits = predictor.state_bits();
  if (opts.record_steps) rec.steps.reserve(target.size());
  for (std::size_t t = 0; t < target.size(); ++t) {
    const Symbol guess = predictor.predict();
    const bool wrong = guess != target[t];
    if (wrong) rec.mistake_times.push_back(t);
    predictor.update(target[t]);
    const std::uint64_t bits = predictor.state_bits();
    rec.max_state_bits = std::max(rec.max_state_bits, bits);
    if (opts.record_steps) rec.steps.push_back({t, guess, target[t], wrong, bits});
  }
  rec.mistakes = rec.mistake_times.size();
  return rec;
}

template <Predictor P>
RunRecord run_predictor(P& predictor, const Word& target, RunOptions opts = {}) {
  if (target.sigma() > predictor.alphabet_size())
    throw std::invalid_argument("word alphabet is larger than the predictor's alphabet");
  return run_predictor(predictor, target.symbols(), opts);
}

/// CSV rows `t,predicted,observed,mistake_flag,state_bits` (with header).
inline void write_run_csv(std::ostream& os, const RunRecord& rec, const Alphabet* alphabet = nullptr) {
  os << "t,predicted,observed,mistake_flag,state_bits\n";
  auto tok = [&](Symbol s) { return alphabet ? alphabet->token(s) : std::to_string(s); };
  for (const auto& r : rec.steps) {
    os << r.t << ',' << tok(r.predicted) << ',' << tok(r.observed) << ',' << (r.mistake ? 1 : 0) << ','
       << r.state_bits << '\n';
  }
}

}  // namespace seqpred
