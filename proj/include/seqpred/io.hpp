// Text and binary file formats for words, automata, grammars and
// factorizations.
#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqpred/automata.hpp"
#include "seqpred/core.hpp"
#include "seqpred/lz77.hpp"
#include "seqpred/slp.hpp"

namespace seqpred {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string join_tokens(const Alphabet& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += a.token(static_cast<Symbol>(i));
  }
  return out;
}

inline std::shared_ptr<const Alphabet> split_tokens(std::string_view list) {
  std::vector<std::string> toks;
  std::size_t i = 0;
  while (i <= list.size()) {
    std::size_t comma = list.find(',', i);
    if (comma == std::string_view::npos) comma = list.size();
    toks.emplace_back(list.substr(i, comma - i));
    i = comma + 1;
  }
  try {
    return std::make_shared<const Alphabet>(std::move(toks));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

/// Parses whitespace-separated key=value fields after an optional tag.
inline std::map<std::string, std::string> header_fields(const std::string& line, std::string_view tag) {
  std::istringstream is(line);
  std::string field;
  std::map<std::string, std::string> out;
  if (!tag.empty()) {
    is >> field;
    if (field != tag) throw FormatError("expected '" + std::string(tag) + "' header, got '" + field + "'");
  }
  while (is >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw FormatError("header field '" + field + "' is not key=value");
    out[field.substr(0, eq)] = field.substr(eq + 1);
  }
  return out;
}

inline const std::string& require_field(const std::map<std::string, std::string>& f, const std::string& key) {
  auto it = f.find(key);
  if (it == f.end()) throw FormatError("header is missing '" + key + "'");
  return it->second;
}

inline std::size_t parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw FormatError("");
    return static_cast<std::size_t>(v);
  } catch (...) {
    throw FormatError("malformed " + what + " '" + s + "'");
  }
}

inline Symbol parse_token(const Alphabet& a, const std::string& tok) {
  auto s = a.index_of(tok);
  if (!s) throw FormatError("token '" + tok + "' is not in the alphabet");
  return *s;
}

}  // namespace detail

// Word file: "alphabet=<t1,t2,...> n=<len>\n" followed by one byte per symbol index.

inline void write_word(std::ostream& os, const Word& w) {
  if (w.sigma() > 256) throw std::invalid_argument("word files hold alphabets of at most 256 symbols");
  os << "alphabet=" << detail::join_tokens(w.alphabet()) << " n=" << w.size() << '\n';
  std::string bytes(w.size(), '\0');
  for (std::size_t i = 0; i < w.size(); ++i) bytes[i] = static_cast<char>(w[i]);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline Word read_word(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing word header");
  const auto f = detail::header_fields(line, "");
  auto alphabet = detail::split_tokens(detail::require_field(f, "alphabet"));
  const std::size_t n = detail::parse_count(detail::require_field(f, "n"), "length");
  std::string bytes(n, '\0');
  is.read(bytes.data(), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is.gcount()) != n) throw FormatError("word file is shorter than its header says");
  std::vector<Symbol> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    data[i] = static_cast<unsigned char>(bytes[i]);
    if (data[i] >= alphabet->size())
      throw FormatError("byte " + std::to_string(data[i]) + " at position " + std::to_string(i) +
                        " is outside the alphabet");
  }
  return Word(std::move(alphabet), std::move(data));
}

inline void save_word(const std::string& path, const Word& w) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_word(os, w);
}

inline Word load_word(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_word(is);
}

// DFA text: "dfa states=<s> base=<k> alphabet=<tokens> [initial=<q>]", then
// one line per state: "<output token> <target for digit 0> ... <digit k-1>".

inline void write_dfa(std::ostream& os, const OutputDfa& m) {
  os << "dfa states=" << m.states() << " base=" << m.base() << " alphabet=" << detail::join_tokens(m.alphabet())
     << " initial=" << m.initial() << '\n';
  for (std::size_t q = 0; q < m.states(); ++q) {
    os << m.alphabet().token(m.output(q));
    for (auto t : m.transitions()[q]) os << ' ' << t;
    os << '\n';
  }
}

inline OutputDfa read_dfa(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing dfa header");
  const auto f = detail::header_fields(line, "dfa");
  const std::size_t states = detail::parse_count(detail::require_field(f, "states"), "state count");
  const std::size_t base = detail::parse_count(detail::require_field(f, "base"), "base");
  auto alphabet = detail::split_tokens(detail::require_field(f, "alphabet"));
  const std::size_t initial = f.count("initial") ? detail::parse_count(f.at("initial"), "initial state") : 0;
  std::vector<std::vector<std::size_t>> delta;
  std::vector<Symbol> tau;
  while (delta.size() < states && std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    tau.push_back(detail::parse_token(*alphabet, tok));
    std::vector<std::size_t> row;
    while (ls >> tok) row.push_back(detail::parse_count(tok, "transition target"));
    delta.push_back(std::move(row));
  }
  if (delta.size() != states) throw FormatError("dfa file lists fewer states than its header says");
  try {
    return OutputDfa(base, initial, std::move(delta), std::move(tau), std::move(alphabet));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

// SLP text: "slp root=<id> rules=<N> alphabet=<tokens>", then one line per
// nonterminal: "<id> <ref> <ref> ...", refs "#<id>" or a terminal token.

inline void write_slp(std::ostream& os, const Slp& p) {
  for (const auto& t : p.alphabet().tokens())
    if (t[0] == '#') throw std::invalid_argument("terminal tokens starting with '#' cannot be written");
  os << "slp root=" << p.root() << " rules=" << p.nonterminals() << " alphabet=" << detail::join_tokens(p.alphabet())
     << '\n';
  for (std::size_t q = 0; q < p.nonterminals(); ++q) {
    os << q;
    for (const auto& r : p.rule(q)) {
      os << ' ';
      if (r.terminal) {
        os << p.alphabet().token(r.id);
      } else {
        os << '#' << r.id;
      }
    }
    os << '\n';
  }
}

inline Slp read_slp(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing slp header");
  const auto f = detail::header_fields(line, "slp");
  const std::size_t root = detail::parse_count(detail::require_field(f, "root"), "root");
  const std::size_t count = detail::parse_count(detail::require_field(f, "rules"), "rule count");
  auto alphabet = detail::split_tokens(detail::require_field(f, "alphabet"));
  std::vector<SlpRule> rules(count);
  std::vector<char> seen(count, 0);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    const std::size_t id = detail::parse_count(tok, "nonterminal id");
    if (id >= count) throw FormatError("nonterminal " + tok + " exceeds the declared rule count");
    if (seen[id]) throw FormatError("nonterminal " + tok + " defined twice");
    seen[id] = 1;
    while (ls >> tok) {
      if (tok.size() > 1 && tok[0] == '#') {
        rules[id].push_back(SlpRef::nt(detail::parse_count(tok.substr(1), "nonterminal reference")));
      } else {
        rules[id].push_back(SlpRef::term(detail::parse_token(*alphabet, tok)));
      }
    }
  }
  for (std::size_t q = 0; q < count; ++q)
    if (!seen[q]) throw FormatError("nonterminal " + std::to_string(q) + " has no rule line");
  return Slp(std::move(alphabet), std::move(rules), root);
}

// Factorization text: one entry per line, "L <token>" or "C <source> <length>".

inline void write_factorization(std::ostream& os, const Factorization& f, const Alphabet& a) {
  for (const auto& e : f.entries) {
    if (e.is_literal()) {
      os << "L " << a.token(e.symbol) << '\n';
    } else {
      os << "C " << e.source << ' ' << e.length << '\n';
    }
  }
}

inline Factorization read_factorization(std::istream& is, const Alphabet& a) {
  Factorization f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind, x, y;
    ls >> kind >> x;
    if (kind == "L" && !x.empty()) {
      f.entries.push_back(Factor::literal(detail::parse_token(a, x)));
    } else if (kind == "C" && (ls >> y)) {
      const auto len = detail::parse_count(y, "copy length");
      if (len == 0) throw FormatError("line " + std::to_string(lineno) + ": empty copy");
      f.entries.push_back(Factor::copy(detail::parse_count(x, "copy source"), len));
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": expected 'L <token>' or 'C <src> <len>'");
    }
  }
  return f;
}

// k-aligned factorization text: "K <level> <source block|-> <length>".

inline void write_k_factorization(std::ostream& os, const KFactorization& f) {
  for (const auto& e : f.entries) {
    os << "K " << e.level << ' ';
    if (e.source_block) {
      os << *e.source_block;
    } else {
      os << '-';
    }
    os << ' ' << e.length << '\n';
  }
}

}  // namespace seqpred
