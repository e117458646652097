// Straight-line programs: acyclic grammars deriving exactly one word, with
// the size-preserving transformations and the constructions from automata,
// powers and continued fractions.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "seqpred/automata.hpp"
#include "seqpred/core.hpp"
#include "seqpred/generators.hpp"

namespace seqpred {

/// A right-hand-side entry: a terminal symbol or a nonterminal id.
struct SlpRef {
  bool terminal = true;
  std::uint32_t id = 0;

  static SlpRef term(Symbol s) { return {true, s}; }
  static SlpRef nt(std::size_t q) { return {false, static_cast<std::uint32_t>(q)}; }
  friend auto operator<=>(const SlpRef&, const SlpRef&) = default;
};

using SlpRule = std::vector<SlpRef>;

/// Grammar with nonterminals 0..N-1. Construction does not validate; call
/// validate() before relying on the grammar invariants.
class Slp {
 public:
  Slp(std::shared_ptr<const Alphabet> alphabet, std::vector<SlpRule> rules, std::size_t root)
      : alphabet_(std::move(alphabet)), rules_(std::move(rules)), root_(root) {
    if (!alphabet_) throw std::invalid_argument("slp requires an alphabet");
  }

  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& shared_alphabet() const { return alphabet_; }
  const std::vector<SlpRule>& rules() const { return rules_; }
  const SlpRule& rule(std::size_t q) const { return rules_.at(q); }
  std::size_t nonterminals() const { return rules_.size(); }
  std::size_t root() const { return root_; }

  /// Number of edges: total right-hand-side length.
  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& r : rules_) s += r.size();
    return s;
  }

  friend bool operator==(const Slp& a, const Slp& b) {
    return *a.alphabet_ == *b.alphabet_ && a.rules_ == b.rules_ && a.root_ == b.root_;
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<SlpRule> rules_;
  std::size_t root_;
};

namespace detail {

/// Children-first order of all nonterminals; nullopt on a cycle or a
/// reference outside the rule table.
inline std::optional<std::vector<std::size_t>> slp_topological_order(const Slp& p) {
  const std::size_t n = p.nonterminals();
  std::vector<char> color(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s]) continue;
    stack.push_back({s, 0});
    color[s] = 1;
    while (!stack.empty()) {
      auto& [q, next] = stack.back();
      const auto& rule = p.rule(q);
      if (next == rule.size()) {
        color[q] = 2;
        order.push_back(q);
        stack.pop_back();
        continue;
      }
      const SlpRef r = rule[next++];
      if (r.terminal) continue;
      if (r.id >= n) return std::nullopt;
      if (color[r.id] == 1) return std::nullopt;
      if (color[r.id] == 0) {
        color[r.id] = 1;
        stack.push_back({r.id, 0});
      }
    }
  }
  return order;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace detail

/// Structural checks: rule fanout, reference ranges, acyclicity, and a root
/// that is the only unreferenced nonterminal.
inline Violations validate(const Slp& p) {
  Violations v;
  const std::size_t n = p.nonterminals();
  std::vector<char> referenced(n, 0);
  bool refs_ok = true;
  for (std::size_t q = 0; q < n; ++q) {
    const auto& rule = p.rule(q);
    if (rule.size() < 2)
      v.push_back({q, "fanout", "rule has " + std::to_string(rule.size()) + " entries"});
    for (const auto& r : rule) {
      if (r.terminal) {
        if (r.id >= p.alphabet().size()) {
          v.push_back({q, "reference", "terminal " + std::to_string(r.id) + " outside the alphabet"});
          refs_ok = false;
        }
      } else if (r.id >= n) {
        v.push_back({q, "reference", "nonterminal #" + std::to_string(r.id) + " does not exist"});
        refs_ok = false;
      } else {
        referenced[r.id] = 1;
      }
    }
  }
  if (refs_ok && !detail::slp_topological_order(p)) v.push_back({0, "cycle", "rule graph has a cycle"});
  if (p.root() >= n) {
    v.push_back({p.root(), "root", "root is not a nonterminal"});
  } else {
    if (referenced[p.root()]) v.push_back({p.root(), "root", "root is referenced by a rule"});
    for (std::size_t q = 0; q < n; ++q)
      if (q != p.root() && !referenced[q]) v.push_back({q, "root", "unreferenced nonterminal besides the root"});
  }
  return v;
}

inline void require_valid(const Slp& p) {
  const auto v = validate(p);
  if (!v.empty())
    throw std::invalid_argument("invalid slp: " + v.front().kind + " at #" + std::to_string(v.front().where) + " (" +
                                v.front().detail + ")");
}

/// |val(q)| for every nonterminal, saturating at 2^64 - 1.
inline std::vector<std::uint64_t> expansion_lengths(const Slp& p) {
  const auto order = detail::slp_topological_order(p);
  if (!order) throw std::invalid_argument("slp has a cycle or a dangling reference");
  std::vector<std::uint64_t> len(p.nonterminals(), 0);
  for (std::size_t q : *order) {
    std::uint64_t s = 0;
    for (const auto& r : p.rule(q)) s = detail::saturating_add(s, r.terminal ? 1 : len[r.id]);
    len[q] = s;
  }
  return len;
}

/// val(root), expanded with an explicit stack.
inline Word evaluate(const Slp& p, std::size_t cap = kDefaultLengthCap) {
  require_valid(p);
  const auto len = expansion_lengths(p);
  if (len[p.root()] > cap) throw std::length_error("slp expansion exceeds length cap");
  std::vector<Symbol> out;
  out.reserve(len[p.root()]);
  std::vector<SlpRef> stack{SlpRef::nt(p.root())};
  while (!stack.empty()) {
    const SlpRef r = stack.back();
    stack.pop_back();
    if (r.terminal) {
      out.push_back(r.id);
      continue;
    }
    const auto& rule = p.rule(r.id);
    for (auto it = rule.rbegin(); it != rule.rend(); ++it) stack.push_back(*it);
  }
  return Word(p.shared_alphabet(), std::move(out));
}

/// A word too short for a grammar (one symbol); size 0.
struct LiteralWord {
  Word word;
};

using Grammar = std::variant<Slp, LiteralWord>;

inline Word grammar_value(const Grammar& g, std::size_t cap = kDefaultLengthCap) {
  if (const auto* lit = std::get_if<LiteralWord>(&g)) return lit->word;
  return evaluate(std::get<Slp>(g), cap);
}

inline std::size_t grammar_size(const Grammar& g) {
  if (const auto* p = std::get_if<Slp>(&g)) return p->size();
  return 0;
}

inline bool is_literal(const Grammar& g) { return std::holds_alternative<LiteralWord>(g); }

/// Accumulates rules; finish() keeps only what the root reaches, numbered
/// in preorder so the root becomes nonterminal 0.
class SlpBuilder {
 public:
  explicit SlpBuilder(std::shared_ptr<const Alphabet> alphabet) : alphabet_(std::move(alphabet)) {}
  explicit SlpBuilder(const Slp& base) : alphabet_(base.shared_alphabet()), rules_(base.rules()) {}

  SlpRef add(SlpRule rule) {
    rules_.push_back(std::move(rule));
    return SlpRef::nt(rules_.size() - 1);
  }
  std::size_t edges() const {
    std::size_t s = 0;
    for (const auto& r : rules_) s += r.size();
    return s;
  }
  const std::vector<SlpRule>& rules() const { return rules_; }
  const std::shared_ptr<const Alphabet>& alphabet() const { return alphabet_; }

  Grammar finish(SlpRef root) const {
    if (root.terminal) return LiteralWord{Word(alphabet_, {root.id})};
    std::vector<std::int64_t> remap(rules_.size(), -1);
    std::vector<std::size_t> old_of_new;
    std::vector<std::size_t> stack{root.id};
    while (!stack.empty()) {
      const std::size_t q = stack.back();
      stack.pop_back();
      if (remap[q] != -1) continue;
      remap[q] = static_cast<std::int64_t>(old_of_new.size());
      old_of_new.push_back(q);
      const auto& rule = rules_[q];
      for (auto it = rule.rbegin(); it != rule.rend(); ++it)
        if (!it->terminal && remap[it->id] == -1) stack.push_back(it->id);
    }
    std::vector<SlpRule> out;
    out.reserve(old_of_new.size());
    for (std::size_t q : old_of_new) {
      SlpRule rule = rules_[q];
      for (auto& r : rule)
        if (!r.terminal) r.id = static_cast<std::uint32_t>(remap[r.id]);
      out.push_back(std::move(rule));
    }
    return Slp(alphabet_, std::move(out), 0);
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<SlpRule> rules_;
};

/// Every rule longer than two becomes a balanced binary tree (left half of
/// floor(l/2) entries); the original id keeps the top split.
inline Slp binarize(const Slp& p) {
  require_valid(p);
  std::vector<SlpRule> rules = p.rules();
  auto build = [&](auto&& self, const SlpRule& src, std::size_t lo, std::size_t hi) -> SlpRef {
    if (hi - lo == 1) return src[lo];
    const std::size_t h = (hi - lo) / 2;
    SlpRef left = self(self, src, lo, lo + h);
    SlpRef right = self(self, src, lo + h, hi);
    rules.push_back({left, right});
    return SlpRef::nt(rules.size() - 1);
  };
  const std::size_t original = rules.size();
  for (std::size_t q = 0; q < original; ++q) {
    if (rules[q].size() <= 2) continue;
    const SlpRule src = rules[q];
    const std::size_t h = src.size() / 2;
    SlpRef left = build(build, src, 0, h);
    SlpRef right = build(build, src, h, src.size());
    rules[q] = {left, right};
  }
  return Slp(p.shared_alphabet(), std::move(rules), p.root());
}

/// Prefix of length n along a single root-to-leaf path of fresh rules. A
/// fresh rule that would keep one entry is replaced by that entry.
inline Grammar truncate(const Slp& p, std::uint64_t n) {
  require_valid(p);
  const auto len = expansion_lengths(p);
  if (n < 1 || n > len[p.root()]) throw std::invalid_argument("truncation length out of range");
  if (n == len[p.root()]) return p;

  SlpBuilder b(p);
  // Descend, recording the kept prefix of each visited rule.
  std::vector<SlpRule> kept;
  SlpRef tail = SlpRef::nt(p.root());
  std::uint64_t want = n;
  while (!tail.terminal && want < len[tail.id]) {
    const auto& rule = p.rule(tail.id);
    SlpRule prefix;
    std::uint64_t acc = 0;
    std::size_t j = 0;
    for (;; ++j) {
      const std::uint64_t l = rule[j].terminal ? 1 : len[rule[j].id];
      if (acc + l >= want) break;
      acc += l;
      prefix.push_back(rule[j]);
    }
    kept.push_back(std::move(prefix));
    tail = rule[j];
    want -= acc;
  }
  // Rebuild bottom-up: each level is prefix · (truncated child).
  for (std::size_t i = kept.size(); i-- > 0;) {
    SlpRule r = std::move(kept[i]);
    r.push_back(tail);
    tail = r.size() == 1 ? r.front() : b.add(std::move(r));
  }
  return b.finish(tail);
}

/// One nonterminal per reachable (state, depth) with depth >= 1, deriving the
/// k^L outputs below that state, L = ceil(log_k n).
inline Grammar slp_from_dfa(const OutputDfa& dfa, std::size_t k, std::uint64_t n) {
  if (k != dfa.base()) throw std::invalid_argument("requested base does not match the dfa base");
  if (n < 1) throw std::invalid_argument("length must be at least 1");
  const unsigned depth = padding_width(n, k);
  SlpBuilder b(dfa.shared_alphabet());
  std::map<std::pair<std::size_t, unsigned>, SlpRef> memo;
  auto node = [&](auto&& self, std::size_t q, unsigned l) -> SlpRef {
    if (l == 0) return SlpRef::term(dfa.output(q));
    if (auto it = memo.find({q, l}); it != memo.end()) return it->second;
    SlpRule rule;
    rule.reserve(k);
    for (std::size_t d = 0; d < k; ++d) rule.push_back(self(self, dfa.next(q, static_cast<Digit>(d)), l - 1));
    const SlpRef r = b.add(std::move(rule));
    memo.emplace(std::pair{q, l}, r);
    return r;
  };
  return b.finish(node(node, dfa.initial(), depth));
}

/// base^r with a squaring chain and one concatenation per further set bit.
inline SlpRef power_ref(SlpBuilder& b, SlpRef base, std::uint64_t r) {
  if (r < 1) throw std::invalid_argument("exponent must be at least 1");
  const unsigned top = floor_log2(r);
  std::vector<SlpRef> squares{base};
  for (unsigned i = 1; i <= top; ++i) squares.push_back(b.add({squares.back(), squares.back()}));
  SlpRef acc = squares[top];
  for (unsigned i = top; i-- > 0;)
    if ((r >> i) & 1U) acc = b.add({acc, squares[i]});
  return acc;
}

inline Slp power_slp(const Slp& p, std::uint64_t r) {
  require_valid(p);
  if (r == 1) return p;
  SlpBuilder b(p);
  return std::get<Slp>(b.finish(power_ref(b, SlpRef::nt(p.root()), r)));
}

/// Fibonacci chain A_1 -> 0 1, A_2 -> A_1 0, A_(j+2) -> A_(j+1) A_j; the
/// root A_levels derives the Fibonacci word prefix of length F(levels+2).
inline Slp fibonacci_slp(std::size_t levels) {
  if (levels < 1) throw std::invalid_argument("fibonacci chain needs at least one level");
  SlpBuilder b(binary_alphabet());
  SlpRef prev = SlpRef::term(0);
  SlpRef cur = b.add({SlpRef::term(0), SlpRef::term(1)});
  for (std::size_t j = 2; j <= levels; ++j) {
    const SlpRef next = b.add({cur, prev});
    prev = cur;
    cur = next;
  }
  return std::get<Slp>(b.finish(cur));
}

/// Construction record for a characteristic-word prefix grammar.
struct CharacteristicSlp {
  Grammar grammar;
  /// q_0 .. q_J, J the last level built.
  std::vector<std::uint64_t> block_lengths;
  /// |P_0| .. |P_J|: cumulative chain sizes.
  std::vector<std::size_t> chain_sizes;
  /// Level j whose block is raised to a power.
  std::size_t level = 0;
  std::uint64_t exponent = 1;
  /// Size of the s_j^r grammar before truncation.
  std::size_t power_size = 0;
};

/// Chain P_0, P_1, ... with val(P_j) = s_j, then s_j^r truncated to n for the
/// largest j with q_j <= n and r = ceil(n / q_j).
inline CharacteristicSlp characteristic_slp(const ContinuedFraction& cf, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("length must be at least 1");
  CharacteristicSlp out{LiteralWord{Word(binary_alphabet(), {0})}, {}, {}, 0, 1, 0};
  SlpBuilder b(binary_alphabet());
  std::vector<SlpRef> roots{SlpRef::term(0)};
  out.block_lengths.push_back(1);
  out.chain_sizes.push_back(0);
  // Extend while the next block still fits in n.
  for (std::size_t j = 0;; ++j) {
    const auto q = cf.block_lengths(j + 1);
    if (q[j + 1] > n) break;
    SlpRef next;
    if (j == 0) {
      const std::uint64_t a1 = cf.coefficient(1);
      next = a1 == 1 ? SlpRef::term(1) : b.add({power_ref(b, SlpRef::term(0), a1 - 1), SlpRef::term(1)});
    } else {
      next = b.add({power_ref(b, roots[j], cf.coefficient(j + 1)), roots[j - 1]});
    }
    roots.push_back(next);
    out.block_lengths.push_back(q[j + 1]);
    out.chain_sizes.push_back(b.edges());
  }
  out.level = roots.size() - 1;
  const std::uint64_t qj = out.block_lengths.back();
  out.exponent = (n + qj - 1) / qj;
  const SlpRef powered = power_ref(b, roots.back(), out.exponent);
  if (powered.terminal) {
    out.grammar = LiteralWord{Word(binary_alphabet(), {powered.id})};
    return out;
  }
  const Slp full = std::get<Slp>(b.finish(powered));
  out.power_size = full.size();
  out.grammar = truncate(full, n);
  return out;
}

}  // namespace seqpred
