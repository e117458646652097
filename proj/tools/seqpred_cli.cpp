// seqpred: generate words, factorize, query the suffix index, run predictors
// against their bounds, tabulate counting complexity, and run the oracle
// cross-check suites. Exit status is 0 iff every checked property holds.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqpred/seqpred.hpp"

namespace {

using namespace seqpred;
using nlohmann::json;

struct SourceSpec {
  std::string family;
  std::string in_file;
  unsigned p = 1;
  std::string cf;
  std::string theta;
  std::string morphism = "a=ab,b=bc,c=c";
  std::string dfa_file;
  std::size_t base = 2;
  std::uint64_t seed = 1;
  std::size_t sigma = 2;
};

void add_source_options(CLI::App* cmd, SourceSpec& s, bool family_positional) {
  const std::string families = "thue-morse|fibonacci|power-block|characteristic|morphic|dfa|random";
  if (family_positional) {
    cmd->add_option("family", s.family, families)->required();
  } else {
    cmd->add_option("--family", s.family, families);
  }
  cmd->add_option("--in", s.in_file, "Read the word from a word file instead of generating it");
  cmd->add_option("--p", s.p, "power-block: block exponent (m = 2^p)");
  cmd->add_option("--cf", s.cf, "characteristic: partial quotients, comma separated");
  cmd->add_option("--theta", s.theta, "characteristic: exact slope p/q");
  cmd->add_option("--morphism", s.morphism, "morphic: rules like a=ab,b=bc,c=c (seed is the first symbol)");
  cmd->add_option("--file,--dfa-file", s.dfa_file, "dfa: automaton file");
  cmd->add_option("--base", s.base, "dfa base, or the hdp block base");
  cmd->add_option("--seed", s.seed, "random: generator seed");
  cmd->add_option("--sigma", s.sigma, "random: alphabet size")->check(CLI::Range(1, 10));
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  return out;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw CLI::ValidationError("--theta", "expected p/q");
  return {std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1))};
}

OutputDfa load_dfa(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_dfa(is);
}

Word make_word(const SourceSpec& s, std::size_t n) {
  if (!s.in_file.empty()) {
    Word w = load_word(s.in_file);
    if (n > w.size()) throw std::invalid_argument("word file holds only " + std::to_string(w.size()) + " symbols");
    return w.prefix(n);
  }
  const auto& f = s.family;
  if (f == "thue-morse") return thue_morse(n);
  if (f == "fibonacci") return fibonacci_word(n);
  if (f == "power-block") return power_block_word(s.p).prefix(n);
  if (f == "characteristic") {
    if (!s.theta.empty()) return characteristic_direct(parse_rational(s.theta), n);
    return characteristic_direct(ContinuedFraction(parse_list(s.cf.empty() ? "1" : s.cf)), n);
  }
  if (f == "morphic") return morphic_prefix(Morphism::parse(s.morphism), 0, n);
  if (f == "dfa") {
    if (s.dfa_file.empty()) throw CLI::ValidationError("--file", "dfa family needs an automaton file");
    return word_from_dfa(load_dfa(s.dfa_file), s.base, n);
  }
  if (f == "random") {
    std::mt19937_64 rng(s.seed);
    return random_word(rng, n, s.sigma);
  }
  throw CLI::ValidationError("family", "unknown family '" + f + "'");
}

std::size_t natural_length(const SourceSpec& s) {
  if (!s.in_file.empty()) return load_word(s.in_file).size();
  if (s.family == "power-block") return std::size_t{2} << (2 * s.p);
  return 0;
}

/// Upper bound on the base-k automaticity known from the generator itself.
std::optional<std::size_t> known_automaticity(const SourceSpec& s, std::size_t k) {
  if (!s.in_file.empty()) return std::nullopt;
  if (s.family == "thue-morse" && k == 2) return 2;
  if (s.family == "power-block" && k == 2) return s.p + 3;
  if (s.family == "dfa" && k == s.base) return load_dfa(s.dfa_file).states();
  return std::nullopt;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <class Row>
void emit_table(const std::vector<std::string>& header, const std::vector<Row>& rows, const std::string& csv_path,
                const std::string& json_path) {
  std::ostringstream csv;
  for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
  csv << '\n';
  json arr = json::array();
  for (const auto& r : rows) {
    json obj;
    for (std::size_t i = 0; i < header.size(); ++i) {
      csv << (i ? "," : "") << r[i];
      obj[header[i]] = r[i];
    }
    csv << '\n';
    arr.push_back(obj);
  }
  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream(csv_path) << csv.str();
  }
  if (!json_path.empty()) std::ofstream(json_path) << arr.dump(2) << '\n';
}

// ---------------------------------------------------------------- generate

int run_generate(const SourceSpec& src, std::size_t n, const std::string& out, bool print) {
  const Word w = make_word(src, n);
  const std::string path = out.empty() ? src.family + ".word" : out;
  save_word(path, w);
  std::cerr << "wrote " << w.size() << " symbols to " << path << '\n';
  if (print) std::cout << w << '\n';
  return 0;
}

// --------------------------------------------------------------- factorize

int run_factorize(const SourceSpec& src, std::size_t n, std::size_t k, const std::string& out) {
  const Word w = make_word(src, n ? n : natural_length(src));
  std::ostringstream text;
  bool ok = true;
  if (k == 0) {
    const auto f = greedy_lz77(w);
    write_factorization(text, f, w.alphabet());
    const auto v = validate_lz77_type(w.symbols(), f);
    ok = v.empty();
    std::cerr << "n=" << w.size() << " lzc=" << f.size() << (ok ? "" : " INVALID: " + v.front().kind) << '\n';
  } else {
    const auto f = greedy_k_lz77(w, k);
    write_k_factorization(text, f);
    const auto v = validate_k_lz77_type(w.symbols(), k, f);
    ok = v.empty();
    std::cerr << "n=" << w.size() << " base=" << k << " factors=" << f.size()
              << (ok ? "" : " INVALID: " + v.front().kind) << '\n';
  }
  if (out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream(out) << text.str();
  }
  return ok ? 0 : 1;
}

// ------------------------------------------------------------- index-query

int run_index_query(const SourceSpec& src, std::size_t n, std::optional<std::size_t> i, const std::string& token,
                    const std::string& csv, const std::string& js) {
  const Word w = make_word(src, n ? n : natural_length(src));
  const SuffixIndex idx(w);
  std::vector<std::vector<std::string>> rows;
  auto row = [&](std::size_t pos, Symbol a) {
    ProbeCounter pc;
    const auto range = idx.pattern_range(pos, a, &pc);
    const auto m = idx.ipm(pos, a);
    rows.push_back({std::to_string(pos), w.alphabet().token(a), std::to_string(range ? range->width() : 0),
                    m ? std::to_string(*m) : "none", range ? std::to_string(range->first) : "",
                    range ? std::to_string(range->last) : "", std::to_string(pc.total())});
  };
  if (i) {
    if (*i >= w.size()) throw CLI::ValidationError("--i", "position outside the word");
    if (token.empty()) {
      for (Symbol a = 0; a < w.sigma(); ++a) row(*i, a);
    } else {
      auto a = w.alphabet().index_of(token);
      if (!a) throw CLI::ValidationError("--a", "symbol not in the alphabet");
      row(*i, *a);
    }
  } else {
    for (std::size_t pos = 0; pos < w.size(); ++pos)
      for (Symbol a = 0; a < w.sigma(); ++a) row(pos, a);
  }
  emit_table({"i", "a", "ipc", "ipm", "rank_first", "rank_last", "probes"}, rows, csv, js);
  return 0;
}

// ----------------------------------------------------------------- predict

struct PredictOptions {
  std::string algo = "lzp";
  std::size_t base = 2;
  std::string measure = "lzc";
  std::string schedule;
  std::string powers;
  std::string csv, json_path, steps, dump, state_in;
};

std::vector<std::uint64_t> make_schedule(const PredictOptions& o, const SourceSpec& src) {
  std::vector<std::uint64_t> sched;
  if (!o.powers.empty()) {
    const auto dots = o.powers.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--powers", "expected lo..hi");
    const auto lo = std::stoul(o.powers.substr(0, dots)), hi = std::stoul(o.powers.substr(dots + 2));
    for (auto e = lo; e <= hi; ++e) sched.push_back(std::uint64_t{1} << e);
  } else if (!o.schedule.empty()) {
    sched = parse_list(o.schedule);
  } else if (auto n = natural_length(src)) {
    sched = {n};
  }
  if (sched.empty()) throw CLI::ValidationError("--schedule", "give --schedule or --powers");
  for (std::size_t i = 1; i < sched.size(); ++i)
    if (sched[i] <= sched[i - 1]) throw CLI::ValidationError("--schedule", "schedule must be strictly increasing");
  return sched;
}

/// Runs `p` over x[start:], counting mistakes only there.
template <Predictor P>
RunRecord run_from(P& p, const Word& x, std::size_t start, bool steps) {
  return run_predictor(p, x.symbols().subspan(start), RunOptions{steps});
}

int run_predict(const PredictOptions& o, const SourceSpec& src) {
  const auto sched = make_schedule(o, src);
  const std::vector<std::string> header{"n", "mistakes", "lzc", "dict_sizes", "k_factors", "state_bits",
                                        "bound", "bound_label", "holds"};
  std::vector<std::vector<std::string>> rows;
  bool all_ok = true;
  RunRecord last;
  std::string last_dump;
  for (auto n : sched) {
    const Word x = make_word(src, n);
    std::vector<std::string> r(header.size());
    r[0] = std::to_string(n);
    r[2] = std::to_string(lzc(x));
    bool holds = true;
    if (o.algo == "lzp") {
      LzpPredictor p(x.sigma());
      std::size_t start = 0;
      if (!o.state_in.empty()) {
        std::ifstream is(o.state_in);
        p = LzpPredictor(lzp_state_from_factorization(x.sigma(), read_factorization(is, x.alphabet())));
        start = p.state().length();
        if (start > x.size() || !std::equal(p.history().begin(), p.history().end(), x.symbols().begin()))
          throw std::invalid_argument("imported state is not a prefix of the input word");
      }
      const auto rec = run_from(p, x, start, !o.steps.empty());
      const double bound = lzp_mistake_bound(lzc(x), n);
      holds = static_cast<double>(rec.mistakes) <= bound && p.state().entries().size() == lzc(x);
      r[1] = std::to_string(rec.mistakes);
      r[5] = std::to_string(rec.max_state_bits);
      r[6] = fmt(bound);
      r[7] = "lzp-mistakes<=lzc*(log2n+1)";
      last = rec;
      std::ostringstream d;
      write_factorization(d, p.state().as_factorization(), x.alphabet());
      last_dump = d.str();
    } else if (o.algo == "hdp") {
      HdpPredictor p(o.base, x.sigma());
      std::size_t start = 0;
      if (!o.state_in.empty()) {
        std::ifstream is(o.state_in);
        p = HdpPredictor(read_hdp_state(is));
        const auto hist = p.state().reconstruct();
        start = hist.size();
        if (start > x.size() || !std::equal(hist.begin(), hist.end(), x.symbols().begin()))
          throw std::invalid_argument("imported state is not a prefix of the input word");
      }
      const auto rec = run_from(p, x, start, !o.steps.empty());
      const auto sizes = dictionary_sizes(p.state());
      std::string ds;
      std::size_t max_dict = 0;
      for (auto s : sizes) {
        ds += (ds.empty() ? "" : ";") + std::to_string(s);
        max_dict = std::max(max_dict, s);
      }
      const auto kf = greedy_k_lz77(x, o.base).size();
      r[1] = std::to_string(rec.mistakes);
      r[3] = ds;
      r[4] = std::to_string(kf);
      r[5] = std::to_string(rec.max_state_bits);
      if (auto m = known_automaticity(src, o.base)) {
        const double bound = static_cast<double>(o.base * *m * (padding_width(n, o.base) + 1));
        holds = static_cast<double>(kf) <= bound && max_dict <= *m;
        r[6] = fmt(bound);
        r[7] = "k-factors<=k*m*(ceil(log_k n)+1);dict<=m";
      } else {
        r[6] = "n/a";
        r[7] = "automaticity unknown";
      }
      last = rec;
      std::ostringstream d;
      write_hdp_state(d, p.state());
      last_dump = d.str();
    } else if (o.algo == "plurality") {
      if (n > 14) throw CLI::ValidationError("--schedule", "plurality enumerates the version space; keep n <= 14");
      const auto c = o.measure == "lzc" ? lzc_measure() : automaticity_measure(2, x.sigma());
      const auto res = plurality_run(x.symbols(), x.sigma(), c);
      double bound = 0;
      for (const auto& chk : check_phase_bounds(res.log, c, x.sigma())) {
        bound += chk.bound;
        holds = holds && chk.holds;
      }
      r[1] = std::to_string(res.record.mistakes);
      r[5] = "0";
      r[6] = fmt(bound);
      r[7] = "phase-mistakes<=N_C(l,c)+1";
      last = res.record;
    } else {
      throw CLI::ValidationError("--algo", "unknown predictor '" + o.algo + "'");
    }
    r[8] = holds ? "true" : "false";
    all_ok = all_ok && holds;
    rows.push_back(std::move(r));
  }
  emit_table(header, rows, o.csv, o.json_path);
  if (!o.steps.empty()) {
    std::ofstream os(o.steps);
    write_run_csv(os, last, &make_word(src, 1).alphabet());
  }
  if (!o.dump.empty()) std::ofstream(o.dump) << last_dump;
  return all_ok ? 0 : 1;
}

// ------------------------------------------------------------------- count

int run_count(std::size_t max_n, std::optional<std::size_t> only_m, const std::string& measure, std::size_t sigma,
              const std::string& csv, const std::string& js) {
  const auto c = measure == "lzc" ? lzc_measure() : automaticity_measure(2, sigma);
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
  for (std::size_t n = 1; n <= max_n; ++n) {
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t m = only_m.value_or(0); m <= (only_m ? *only_m : n); ++m) {
      const auto count = count_words_within(n, m, c, sigma);
      const double v = count ? std::log2(static_cast<double>(count)) : -std::numeric_limits<double>::infinity();
      ok = ok && v >= prev;
      prev = v;
      rows.push_back({std::to_string(n), std::to_string(m), std::to_string(count), count ? fmt(v) : "-inf"});
    }
  }
  emit_table({"n", "m", "words", "N_C"}, rows, csv, js);
  return ok ? 0 : 1;
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& suite) {
  const auto& suites = verify_suites();
  std::vector<std::string> names;
  if (suite == "all") {
    for (const auto& [name, fn] : suites) names.push_back(name);
  } else if (suites.count(suite)) {
    names.push_back(suite);
  } else {
    throw CLI::ValidationError("suite", "unknown suite '" + suite + "'");
  }
  bool ok = true;
  for (const auto& name : names) {
    const auto report = suites.at(name)();
    std::cout << name << ": " << (report.ok() ? "PASS" : "FAIL") << '\n';
    for (const auto& p : report.properties) {
      std::cout << "  " << p.property << ": " << p.checked - p.failed << "/" << p.checked << " hold";
      if (p.failed) std::cout << " (first failure: " << p.first_failure << ")";
      std::cout << '\n';
    }
    ok = ok && report.ok();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence prediction experiments: LZ77 / automaticity predictors and their oracles"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; subcommand options as <subcommand>.<option>=value");

  SourceSpec gen_src;
  std::size_t gen_n = 0;
  std::string gen_out;
  bool gen_print = false;
  auto* gen = app.add_subcommand("generate", "Write a generated word to a word file");
  add_source_options(gen, gen_src, true);
  gen->add_option("--n", gen_n, "Length")->required();
  gen->add_option("--out,-o", gen_out, "Output word file (default <family>.word)");
  gen->add_flag("--print", gen_print, "Also print the word as text");

  SourceSpec fac_src;
  std::size_t fac_n = 0, fac_k = 0;
  std::string fac_out;
  auto* fac = app.add_subcommand("factorize", "Greedy LZ77 (or k-aligned with --k) factorization");
  add_source_options(fac, fac_src, false);
  fac->add_option("--n", fac_n, "Length (generated families)");
  fac->add_option("--k", fac_k, "Aligned factorization base");
  fac->add_option("--out,-o", fac_out, "Output file");

  SourceSpec iq_src;
  std::size_t iq_n = 0;
  std::optional<std::size_t> iq_i;
  std::string iq_a, iq_csv, iq_json;
  auto* iq = app.add_subcommand("index-query", "Internal pattern count / match queries");
  add_source_options(iq, iq_src, false);
  iq->add_option("--n", iq_n, "Length (generated families)");
  iq->add_option("--i", iq_i, "Query position (default: every position)");
  iq->add_option("--a", iq_a, "Query symbol token (default: every symbol)");
  iq->add_option("--csv", iq_csv, "CSV output file");
  iq->add_option("--json", iq_json, "JSON output file");

  SourceSpec pr_src;
  PredictOptions pr;
  auto* pred = app.add_subcommand("predict", "Run a predictor over a length schedule and check its bound");
  add_source_options(pred, pr_src, false);
  pred->add_option("--algo", pr.algo, "lzp | hdp | plurality");
  pred->add_option("--k", pr.base, "hdp block base");
  pred->add_option("--measure", pr.measure, "plurality complexity measure: lzc | ac2");
  pred->add_option("--schedule", pr.schedule, "Comma-separated lengths");
  pred->add_option("--powers", pr.powers, "Powers of two lo..hi");
  pred->add_option("--csv", pr.csv, "CSV report file (default stdout)");
  pred->add_option("--json", pr.json_path, "JSON report file");
  pred->add_option("--steps", pr.steps, "Per-step CSV for the last schedule point");
  pred->add_option("--dump", pr.dump, "State dump for the last schedule point");
  pred->add_option("--state-in", pr.state_in, "Resume from a saved state (its history must prefix the word)");

  std::size_t cnt_n = 10, cnt_sigma = 2;
  std::optional<std::size_t> cnt_m;
  std::string cnt_measure = "lzc", cnt_csv, cnt_json;
  auto* cnt = app.add_subcommand("count", "Counting complexity table (n, m, N_C) by enumeration");
  cnt->add_option("--max-n", cnt_n, "Largest word length")->check(CLI::Range(1, 20));
  cnt->add_option("--m", cnt_m, "Only this complexity bound");
  cnt->add_option("--measure", cnt_measure, "lzc | ac2");
  cnt->add_option("--sigma", cnt_sigma, "Alphabet size")->check(CLI::Range(1, 4));
  cnt->add_option("--csv", cnt_csv, "CSV output file");
  cnt->add_option("--json", cnt_json, "JSON output file");

  std::string suite;
  auto* ver = app.add_subcommand("verify", "Run an oracle cross-check suite");
  ver->add_option("suite", suite, "greedy-minimality | ipc-bruteforce | slp-bounds | counting | automaticity-small | all")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_generate(gen_src, gen_n, gen_out, gen_print);
    if (*fac) return run_factorize(fac_src, fac_n, fac_k, fac_out);
    if (*iq) return run_index_query(iq_src, iq_n, iq_i, iq_a, iq_csv, iq_json);
    if (*pred) {
      if (pr_src.family.empty() && pr_src.in_file.empty()) throw CLI::ValidationError("--family", "give --family or --in");
      return run_predict(pr, pr_src);
    }
    if (*cnt) {
      if (cnt_measure != "lzc" && cnt_measure != "ac2") throw CLI::ValidationError("--measure", "lzc or ac2");
      return run_count(cnt_n, cnt_m, cnt_measure, cnt_sigma, cnt_csv, cnt_json);
    }
    if (*ver) return run_verify(suite);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
