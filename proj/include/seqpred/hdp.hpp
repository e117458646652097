// Hierarchical dictionary plurality predictor. Level j keeps the distinct
// aligned blocks of length k^j seen so far, each as a k-tuple of level j-1
// indices; partial blocks wait in per-level buffers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqpred/core.hpp"

namespace seqpred {

using Index = std::uint32_t;
using Tuple = std::vector<Index>;

class HdpState {
 public:
  HdpState(std::size_t base, std::size_t sigma) : k_(base), sigma_(sigma) {
    if (k_ < 2) throw std::invalid_argument("hdp base must be at least 2");
    if (sigma_ == 0) throw std::invalid_argument("alphabet size must be at least 1");
  }

  /// Rebuilds a state from its dictionaries (dicts[0] = D^(1)) and buffers
  /// (buffers[0] = u^(0)), validating every index.
  HdpState(std::size_t base, std::size_t sigma, std::vector<std::vector<Tuple>> dicts,
           std::vector<std::vector<Index>> buffers)
      : HdpState(base, sigma) {
    for (std::size_t j = 0; j < dicts.size(); ++j) {
      const std::size_t below = j == 0 ? sigma_ : dicts[j - 1].size();
      lookup_.emplace_back();
      for (std::size_t e = 0; e < dicts[j].size(); ++e) {
        const auto& t = dicts[j][e];
        if (t.size() != k_) throw std::invalid_argument("level " + std::to_string(j + 1) + " entry is not a k-tuple");
        for (auto v : t)
          if (v >= below)
            throw std::invalid_argument("dangling index at level " + std::to_string(j + 1) + " entry " +
                                        std::to_string(e));
        if (!lookup_.back().emplace(t, static_cast<Index>(e)).second)
          throw std::invalid_argument("duplicate tuple at level " + std::to_string(j + 1));
      }
    }
    for (std::size_t j = 0; j < buffers.size(); ++j) {
      if (buffers[j].size() >= k_) throw std::invalid_argument("buffer " + std::to_string(j) + " is full");
      const std::size_t range = j == 0 ? sigma_ : (j <= dicts.size() ? dicts[j - 1].size() : 0);
      for (auto v : buffers[j])
        if (v >= range) throw std::invalid_argument("dangling index in buffer " + std::to_string(j));
    }
    dicts_ = std::move(dicts);
    buffers_ = std::move(buffers);
  }

  std::size_t base() const { return k_; }
  std::size_t sigma() const { return sigma_; }
  /// Number of instantiated dictionary levels (D^(1) .. D^(levels)).
  std::size_t dictionary_levels() const { return dicts_.size(); }
  /// Number of instantiated buffer levels (u^(0) .. u^(levels-1)).
  std::size_t buffer_levels() const { return buffers_.size(); }

  /// D^(j) for j >= 1; empty when not instantiated.
  const std::vector<Tuple>& dictionary(std::size_t j) const {
    static const std::vector<Tuple> none;
    if (j == 0) throw std::invalid_argument("level 0 dictionary is the alphabet");
    return j <= dicts_.size() ? dicts_[j - 1] : none;
  }
  /// u^(j); empty when not instantiated.
  const std::vector<Index>& buffer(std::size_t j) const {
    static const std::vector<Index> none;
    return j < buffers_.size() ? buffers_[j] : none;
  }

  /// Appends `a` at level 0 and carries completed blocks upward.
  void update(Symbol a) {
    if (a >= sigma_) throw std::invalid_argument("symbol outside the alphabet");
    Index idx = a;
    for (std::size_t j = 0;; ++j) {
      if (buffers_.size() <= j) buffers_.emplace_back();
      buffers_[j].push_back(idx);
      if (buffers_[j].size() < k_) return;
      Tuple block = std::move(buffers_[j]);
      buffers_[j].clear();
      if (dicts_.size() <= j) {
        dicts_.emplace_back();
        lookup_.emplace_back();
      }
      auto [it, fresh] = lookup_[j].emplace(block, static_cast<Index>(dicts_[j].size()));
      if (fresh) dicts_[j].push_back(std::move(block));
      idx = it->second;
    }
  }

  /// Plurality over the symbols whose lifted versions survive to the highest
  /// level where some dictionary block still extends the buffered prefix.
  Symbol predict() const {
    // Versions (q, b): q indexes the current level, b is the next symbol it implies.
    std::set<std::pair<Index, Symbol>> versions;
    for (Symbol a = 0; a < sigma_; ++a) versions.emplace(a, a);
    for (std::size_t j = 0; j <= dicts_.size(); ++j) {
      std::set<std::pair<Index, Symbol>> next;
      if (j < dicts_.size()) {
        const auto& prefix = buffer(j);
        std::multimap<Index, Symbol> by_q;
        for (const auto& [q, b] : versions) by_q.emplace(q, b);
        for (std::size_t e = 0; e < dicts_[j].size(); ++e) {
          const auto& t = dicts_[j][e];
          if (!std::equal(prefix.begin(), prefix.end(), t.begin())) continue;
          auto [lo, hi] = by_q.equal_range(t[prefix.size()]);
          for (auto it = lo; it != hi; ++it) next.emplace(static_cast<Index>(e), it->second);
        }
      }
      if (next.empty()) {
        std::vector<std::size_t> tally(sigma_, 0);
        for (const auto& v : versions) ++tally[v.second];
        return static_cast<Symbol>(std::max_element(tally.begin(), tally.end()) - tally.begin());
      }
      versions = std::move(next);
    }
    throw std::logic_error("hdp prediction ran past the top dictionary");
  }

  /// Canonical encoding size of dictionaries and buffers.
  std::uint64_t state_bits() const {
    auto width = [&](std::size_t level) -> std::uint64_t {
      if (level == 0) return ceil_log2(sigma_);
      return ceil_log2(std::max<std::size_t>(dictionary(level).size(), 2));
    };
    std::uint64_t bits = 0;
    for (std::size_t j = 1; j <= dicts_.size(); ++j) bits += dicts_[j - 1].size() * k_ * width(j - 1);
    for (std::size_t j = 0; j < buffers_.size(); ++j) bits += buffers_[j].size() * width(j);
    return bits;
  }

  /// The history: buffer expansions from the highest level down to level 0.
  std::vector<Symbol> reconstruct() const {
    std::vector<Symbol> out;
    for (std::size_t j = buffers_.size(); j-- > 0;)
      for (Index v : buffers_[j]) expand(j, v, out);
    return out;
  }

  friend bool operator==(const HdpState& a, const HdpState& b) {
    return a.k_ == b.k_ && a.sigma_ == b.sigma_ && a.dicts_ == b.dicts_ && a.buffers_ == b.buffers_;
  }

 private:
  void expand(std::size_t level, Index v, std::vector<Symbol>& out) const {
    if (level == 0) {
      if (v >= sigma_) throw std::invalid_argument("dangling symbol index");
      out.push_back(v);
      return;
    }
    const auto& d = dictionary(level);
    if (v >= d.size()) throw std::invalid_argument("dangling index at level " + std::to_string(level));
    for (Index c : d[v]) expand(level - 1, c, out);
  }

  std::size_t k_;
  std::size_t sigma_;
  std::vector<std::vector<Tuple>> dicts_;
  std::vector<std::map<Tuple, Index>> lookup_;
  std::vector<std::vector<Index>> buffers_;
};

/// Predictor wrapper over HdpState.
class HdpPredictor {
 public:
  HdpPredictor(std::size_t base, std::size_t sigma) : state_(base, sigma) {}
  explicit HdpPredictor(HdpState state) : state_(std::move(state)) {}

  std::size_t alphabet_size() const { return state_.sigma(); }
  Symbol predict() const { return state_.predict(); }
  void update(Symbol a) { state_.update(a); }
  std::uint64_t state_bits() const { return state_.state_bits(); }
  const HdpState& state() const { return state_; }

 private:
  HdpState state_;
};

inline HdpState hdp_state_of(std::span<const Symbol> x, std::size_t base, std::size_t sigma) {
  HdpState s(base, sigma);
  for (Symbol a : x) s.update(a);
  return s;
}

/// Dictionary sizes |D^(1)|, |D^(2)|, ...
inline std::vector<std::size_t> dictionary_sizes(const HdpState& s) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= s.dictionary_levels(); ++j) out.push_back(s.dictionary(j).size());
  return out;
}

/// Text dump:
///   hdp base=<k> sigma=<s> levels=<L>
///   D<j> <i,i,..> <i,i,..> ...      for j = 1..L
///   U<j> <i> <i> ...                for every buffer level
inline void write_hdp_state(std::ostream& os, const HdpState& s) {
  os << "hdp base=" << s.base() << " sigma=" << s.sigma() << " levels=" << s.dictionary_levels() << '\n';
  for (std::size_t j = 1; j <= s.dictionary_levels(); ++j) {
    os << 'D' << j;
    for (const auto& t : s.dictionary(j)) {
      os << ' ';
      for (std::size_t c = 0; c < t.size(); ++c) os << (c ? "," : "") << t[c];
    }
    os << '\n';
  }
  for (std::size_t j = 0; j < s.buffer_levels(); ++j) {
    os << 'U' << j;
    for (auto v : s.buffer(j)) os << ' ' << v;
    os << '\n';
  }
}

inline HdpState read_hdp_state(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("missing hdp header");
  std::size_t base = 0, sigma = 0, levels = 0;
  {
    std::istringstream hs(line);
    std::string tag, kb, ks, kl;
    hs >> tag >> kb >> ks >> kl;
    auto value = [](const std::string& field, const std::string& key) {
      if (field.rfind(key + "=", 0) != 0) throw std::invalid_argument("malformed hdp header field " + field);
      return static_cast<std::size_t>(std::stoull(field.substr(key.size() + 1)));
    };
    if (tag != "hdp") throw std::invalid_argument("not an hdp dump");
    base = value(kb, "base");
    sigma = value(ks, "sigma");
    levels = value(kl, "levels");
  }
  std::vector<std::vector<Tuple>> dicts(levels);
  std::vector<std::vector<Index>> buffers;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag.size() < 2) throw std::invalid_argument("malformed hdp line: " + line);
    const std::size_t j = std::stoull(tag.substr(1));
    std::string item;
    if (tag[0] == 'D') {
      if (j == 0 || j > levels) throw std::invalid_argument("dictionary level out of range: " + tag);
      while (ls >> item) {
        Tuple t;
        std::istringstream ts(item);
        std::string c;
        while (std::getline(ts, c, ',')) t.push_back(static_cast<Index>(std::stoul(c)));
        dicts[j - 1].push_back(std::move(t));
      }
    } else if (tag[0] == 'U') {
      if (buffers.size() <= j) buffers.resize(j + 1);
      while (ls >> item) buffers[j].push_back(static_cast<Index>(std::stoul(item)));
    } else {
      throw std::invalid_argument("malformed hdp line: " + line);
    }
  }
  return HdpState(base, sigma, std::move(dicts), std::move(buffers));
}

}  // namespace seqpred
