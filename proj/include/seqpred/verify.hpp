// Oracle cross-check suites run by `seqpred verify <suite>`.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqpred/automata.hpp"
#include "seqpred/core.hpp"
#include "seqpred/corpus.hpp"
#include "seqpred/counting.hpp"
#include "seqpred/generators.hpp"
#include "seqpred/lz77.hpp"
#include "seqpred/slp.hpp"
#include "seqpred/suffix_index.hpp"

namespace seqpred {

/// Counts for one property of a suite.
struct PropertyTally {
  std::string property;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first_failure = what;
  }
};

struct SuiteReport {
  std::string suite;
  std::deque<PropertyTally> properties;  // stable references

  PropertyTally& property(const std::string& name) {
    for (auto& p : properties)
      if (p.property == name) return p;
    PropertyTally t;
    t.property = name;
    properties.push_back(std::move(t));
    return properties.back();
  }
  bool ok() const {
    for (const auto& p : properties)
      if (p.failed || p.checked == 0) return false;
    return true;
  }
};

namespace detail {

inline std::string describe(const Word& w) {
  return w.size() <= 40 ? w.to_string() : "length " + std::to_string(w.size());
}

/// Occurrences j with x[i:]·a a prefix of x[j:], by direct comparison.
inline std::vector<std::size_t> brute_occurrences(std::span<const Symbol> x, std::size_t i, Symbol a) {
  std::vector<std::size_t> out;
  const std::size_t len = x.size() - i;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j + len >= x.size()) continue;
    bool match = x[j + len] == a;
    for (std::size_t k = 0; match && k < len; ++k) match = x[j + k] == x[i + k];
    if (match) out.push_back(j);
  }
  return out;
}

}  // namespace detail

/// lzc equals the exact minimum factorization size on every binary word up
/// to `max_len`, and the greedy parse is a valid LZ77-type factorization.
inline SuiteReport verify_greedy_minimality(std::size_t max_len = 12) {
  SuiteReport r{"greedy-minimality", {}};
  auto& minimal = r.property("lzc == minimum factorization size");
  auto& valid = r.property("greedy parse is LZ77-type");
  auto alpha = binary_alphabet();
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<Symbol> w(n);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      detail::decode_word(idx, 2, w);
      const Word x(alpha, w);
      minimal.record(lzc(w) == min_factorization_size(std::span<const Symbol>(w)), detail::describe(x));
      valid.record(validate_lz77_type(w, greedy_lz77(std::span<const Symbol>(w))).empty(), detail::describe(x));
    }
  }
  return r;
}

/// Largest pattern_range probe count seen for a text of length n.
struct ProbeObservation {
  std::size_t n = 0;
  std::size_t probes = 0;
};

/// IPC / IPM against the quadratic scan on seeded random words.
inline SuiteReport verify_ipc_bruteforce(std::size_t words = 100, std::size_t max_len = 64,
                                         std::uint64_t seed = 7, std::vector<ProbeObservation>* probes = nullptr) {
  SuiteReport r{"ipc-bruteforce", {}};
  auto& ipc_ok = r.property("ipc matches brute force");
  auto& ipm_ok = r.property("ipm returns an occurrence iff one exists");
  auto& probe_ok = r.property("pattern_range probes <= 6 (floor(log2 n) + 1) + 3");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(2, max_len);
  std::uniform_int_distribution<std::size_t> sig(2, 4);
  for (std::size_t w = 0; w < words; ++w) {
    const Word x = random_word(rng, len(rng), sig(rng));
    const SuffixIndex idx(x);
    ProbeObservation worst{x.size(), 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (Symbol a = 0; a < x.sigma(); ++a) {
        const auto occ = detail::brute_occurrences(x.symbols(), i, a);
        const std::string where = detail::describe(x) + " i=" + std::to_string(i) + " a=" + std::to_string(a);
        ProbeCounter pc;
        ipc_ok.record(idx.ipc(i, a, &pc) == occ.size(), where);
        worst.probes = std::max(worst.probes, pc.total());
        probe_ok.record(pc.total() <= pattern_range_probe_bound(x.size()), where);
        const auto m = idx.ipm(i, a);
        ipm_ok.record(m.has_value() == !occ.empty() &&
                          (!m || std::find(occ.begin(), occ.end(), *m) != occ.end()),
                      where);
      }
    }
    if (probes) probes->push_back(worst);
  }
  return r;
}

/// Grammar transformations and constructions on a fixed construction corpus.
inline SuiteReport verify_slp_bounds() {
  SuiteReport r{"slp-bounds", {}};
  auto& valid = r.property("outputs are valid grammars");
  auto& bin = r.property("binarize: value kept, size <= 2|P|, binary rules");
  auto& trunc = r.property("truncate: prefix value, size <= 2|P|");
  auto& dfa = r.property("dfa grammar: size = k * nonterminals <= m L k, value matches");
  auto& pow = r.property("power: value, fresh edges <= 4 floor(log2 r)");
  auto& chain = r.property("characteristic: chain ledger and 24 log2 n + 8");
  auto& lzc_le = r.property("lzc(value) <= size");

  auto check_lzc = [&](const Grammar& g, const std::string& what) {
    if (is_literal(g)) return;
    const auto& p = std::get<Slp>(g);
    valid.record(validate(p).empty(), what);
    lzc_le.record(lzc(evaluate(p)) <= p.size(), what);
  };

  std::vector<std::pair<std::string, Slp>> grammars;
  for (std::size_t lv : {1, 3, 6, 8}) grammars.push_back({"fibonacci-chain/" + std::to_string(lv), fibonacci_slp(lv)});
  grammars.push_back({"flat/abcab", Slp(Alphabet::shared_of_chars("abc"),
                                         {{SlpRef::term(0), SlpRef::term(1), SlpRef::term(2), SlpRef::term(0),
                                           SlpRef::term(1)}},
                                         0)});
  for (unsigned lv : {3u, 5u, 8u}) {
    auto g = slp_from_dfa(thue_morse_dfa(), 2, std::size_t{1} << lv);
    grammars.push_back({"tm-dfa/2^" + std::to_string(lv), std::get<Slp>(g)});
  }
  for (unsigned p : {1u, 2u, 3u}) {
    auto g = slp_from_dfa(power_block_dfa(p), 2, std::size_t{2} << (2 * p));
    grammars.push_back({"power-block-dfa/" + std::to_string(p), std::get<Slp>(g)});
  }

  for (const auto& [name, p] : grammars) {
    const Word val = evaluate(p);
    check_lzc(p, name);
    const Slp b = binarize(p);
    bool bin_ok = evaluate(b) == val && b.size() <= 2 * p.size();
    for (const auto& rule : b.rules()) bin_ok = bin_ok && rule.size() == 2;
    bin.record(bin_ok, name);
    check_lzc(b, name + "/binarized");
    for (const Slp* src : {&p, &b}) {
      for (std::size_t n = 1; n <= val.size(); n += std::max<std::size_t>(1, val.size() / 23)) {
        const auto t = truncate(*src, n);
        trunc.record(grammar_value(t) == val.prefix(n) && grammar_size(t) <= 2 * src->size(),
                     name + " n=" + std::to_string(n));
        check_lzc(t, name + " truncated");
      }
    }
    for (std::uint64_t e : {1u, 2u, 5u, 8u, 13u}) {
      const Slp q = power_slp(p, e);
      std::vector<Symbol> want;
      for (std::uint64_t i = 0; i < e; ++i) want.insert(want.end(), val.symbols().begin(), val.symbols().end());
      const std::size_t fresh = q.size() - p.size();
      pow.record(evaluate(q).symbols().size() == want.size() &&
                     std::equal(want.begin(), want.end(), evaluate(q).symbols().begin()) &&
                     fresh <= 4 * floor_log2(e),
                 name + " r=" + std::to_string(e));
      check_lzc(q, name + " power");
    }
  }

  for (unsigned lv = 1; lv <= 8; ++lv) {
    for (const auto& [name, m] : std::vector<std::pair<std::string, OutputDfa>>{
             {"tm", thue_morse_dfa()}, {"power-block-1", power_block_dfa(1)}, {"power-block-2", power_block_dfa(2)}}) {
      const std::size_t n = std::size_t{1} << lv;
      const auto g = slp_from_dfa(m, 2, n);
      const auto& p = std::get<Slp>(g);
      dfa.record(p.size() == 2 * p.nonterminals() && p.size() <= m.states() * lv * 2 &&
                     evaluate(p) == word_from_dfa(m, 2, n),
                 name + " n=" + std::to_string(n));
      check_lzc(g, name + " dfa");
    }
  }

  for (const auto& cf : corpus_fractions()) {
    for (std::uint64_t n : {1ull, 2ull, 3ull, 7ull, 13ull, 50ull, 100ull, 777ull, 1000ull, 4096ull, 10000ull}) {
      const auto c = characteristic_slp(cf, n);
      bool ok = grammar_value(c.grammar) == characteristic_direct(cf, n);
      for (std::size_t j = 0; j < c.chain_sizes.size(); ++j) {
        ok = ok && static_cast<double>(c.chain_sizes[j]) <= 8.0 * std::log2(static_cast<double>(c.block_lengths[j])) + 4;
        if (j + 1 < c.chain_sizes.size())
          ok = ok && c.chain_sizes[j + 1] <= c.chain_sizes[j] + 4 * floor_log2(cf.coefficient(j + 1)) + 2;
      }
      ok = ok && static_cast<double>(grammar_size(c.grammar)) <= 24.0 * std::log2(static_cast<double>(n)) + 8;
      chain.record(ok, cf_name(cf) + " n=" + std::to_string(n));
      check_lzc(c.grammar, cf_name(cf) + " characteristic");
    }
  }
  return r;
}

/// Plurality phase bounds on short prefixes and monotonicity of the census.
inline SuiteReport verify_counting(std::size_t max_len = 12) {
  SuiteReport r{"counting", {}};
  auto& phase = r.property("per-phase mistakes <= N_C(l, c) + 1");
  auto& halving = r.property("version space halves on every mistake");
  auto& mono = r.property("N_C(n, m) non-decreasing in m");
  const auto c = lzc_measure();
  for (std::size_t n = 1; n <= 10; ++n) {
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m <= n; ++m) {
      const double v = counting_complexity(n, m, c, 2);
      mono.record(v >= prev, "n=" + std::to_string(n) + " m=" + std::to_string(m));
      prev = v;
    }
  }
  CorpusOptions o;
  o.long_length = max_len;
  o.max_thue_morse_exponent = 3;
  o.random_words = 20;
  o.random_max_length = max_len;
  for (const auto& cw : standard_corpus(o)) {
    if (cw.word.size() > max_len || cw.word.sigma() != 2) continue;
    const auto res = plurality_run(cw.word.symbols(), 2, c);
    for (const auto& chk : check_phase_bounds(res.log, c, 2))
      phase.record(chk.holds, cw.name + " phase " + std::to_string(chk.phase));
    for (const auto& p : res.log.phases) halving.record(p.halving_failures == 0, cw.name);
  }
  return r;
}

/// Exact automaticity on small automatic words against known automata and
/// the aligned-block lower bound.
inline SuiteReport verify_automaticity_small() {
  SuiteReport r{"automaticity-small", {}};
  auto& upper = r.property("exact value <= generating automaton size");
  auto& lower = r.property("exact value >= aligned-block lower bound");
  auto& witness = r.property("returned automaton reproduces the word");
  auto& mono = r.property("exact value monotone under prefixes");
  struct Case {
    std::string name;
    Word word;
    std::size_t bound;
  };
  std::vector<Case> cases;
  for (std::size_t n : {4, 8, 16, 32, 64}) cases.push_back({"tm/" + std::to_string(n), thue_morse(n), 2});
  for (unsigned p : {0u, 1u, 2u}) cases.push_back({"power-block/" + std::to_string(p), power_block_word(p), p + 3});
  cases.push_back({"constant", Word::from_chars("a", "aaaaaaaa"), 1});
  for (const auto& c : cases) {
    const auto res = exact_automaticity(c.word, 2, c.bound);
    upper.record(res.has_value(), c.name);
    if (!res) continue;
    lower.record(res->states >= block_state_lower_bound(c.word, 2), c.name);
    witness.record(word_from_dfa(res->dfa, 2, c.word.size()) == c.word, c.name);
    std::size_t prev = 0;
    bool ok = true;
    for (std::size_t j = 1; j <= c.word.size(); j *= 2) {
      const auto pre = exact_automaticity(c.word.prefix(j), 2, c.bound);
      ok = ok && pre && pre->states >= prev && pre->states <= res->states;
      if (pre) prev = pre->states;
    }
    mono.record(ok, c.name);
  }
  return r;
}

inline const std::map<std::string, std::function<SuiteReport()>>& verify_suites() {
  static const std::map<std::string, std::function<SuiteReport()>> suites{
      {"greedy-minimality", [] { return verify_greedy_minimality(); }},
      {"ipc-bruteforce", [] { return verify_ipc_bruteforce(); }},
      {"slp-bounds", [] { return verify_slp_bounds(); }},
      {"counting", [] { return verify_counting(); }},
      {"automaticity-small", [] { return verify_automaticity_small(); }},
  };
  return suites;
}

}  // namespace seqpred
