#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "wordlogic/acceptance.hpp"
#include "wordlogic/automata.hpp"
#include "wordlogic/logic.hpp"
#include "wordlogic/sequences.hpp"
#include "wordlogic/theorems.hpp"
#include "wordlogic/words.hpp"

using namespace wordlogic;
namespace th = wordlogic::theorems;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Global {
  unsigned jobs = 1;
  std::size_t state_cap = automata::Limits{}.state_cap;
  std::string format = "table";
  std::string record_out;
  std::string corpus;
  std::vector<std::string> sequences;  // extra DFAO files
};

std::uint64_t env_number(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const auto x = std::strtoull(v, &end, 10);
  if (*end || x == 0) {
    std::cerr << "ignoring " << name << "=" << v << " (expected a positive integer)\n";
    return fallback;
  }
  return x;
}

std::string default_corpus() {
  if (const char* v = std::getenv("WORDLOGIC_CORPUS"); v && *v) return v;
  return WORDLOGIC_CORPUS_DIR;
}

automata::Limits limits(const Global& g) {
  automata::Limits l;
  l.state_cap = g.state_cap;
  return l;
}

th::RunOptions run_options(const Global& g) {
  th::RunOptions o;
  o.jobs = g.jobs;
  return o;
}

logic::PredicateEnv load_env(const Global& g, const std::vector<std::string>& files, bool with_corpus) {
  auto env = logic::PredicateEnv::standard();
  for (const auto& f : g.sequences) {
    std::ifstream in(f);
    env.add_sequence(sequences::read_dfao(in));
  }
  if (with_corpus) env.add_corpus(g.corpus);
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream text;
    text << in.rdbuf();
    try {
      env.add_program(text.str());
    } catch (const ParseError& e) {
      throw ParseError(e.pos(), f + ": " + e.message());
    }
  }
  return env;
}

class Output {
 public:
  explicit Output(const Global& g) : g_(g) {
    if (!g.record_out.empty()) {
      file_.open(g.record_out);
      if (!file_) throw ContractError("cannot write " + g.record_out);
    }
  }
  void report(const th::VerificationReport& r) {
    if (g_.format == "record") std::cout << th::to_record(r);
    else std::cout << th::to_table(r);
    if (file_) file_ << th::to_record(r);
    ok_ = ok_ && r.passed();
  }
  void set_failed() { ok_ = false; }
  int status() const { return ok_ ? 0 : kExitFail; }

 private:
  const Global& g_;
  std::ofstream file_;
  bool ok_ = true;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Words, automatic sequences and unbordered conjugates: generation, checks and verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  g.jobs = static_cast<unsigned>(env_number("WORDLOGIC_JOBS", 1));
  g.state_cap = env_number("WORDLOGIC_STATE_CAP", g.state_cap);
  g.corpus = default_corpus();
  app.add_option("--jobs", g.jobs, "worker threads for exhaustive searches")->check(CLI::PositiveNumber);
  app.add_option("--state-cap", g.state_cap, "automaton state cap (env WORDLOGIC_STATE_CAP)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "table or record")->check(CLI::IsMember({"table", "record"}));
  app.add_option("--record-out", g.record_out, "also write machine-readable records to this file");
  app.add_option("--sequence", g.sequences, "bind a DFAO file (exchange format) under its own name")
      ->check(CLI::ExistingFile);
  app.add_option("--corpus", g.corpus, "predicate corpus directory (env WORDLOGIC_CORPUS)");

  // seq
  auto* seq = app.add_subcommand("seq", "print a prefix of t or c");
  std::string seq_name = "t", seq_method = "gap";
  std::size_t seq_len = 32, seq_start = 0;
  seq->add_option("--name", seq_name, "t or c")->check(CLI::IsMember({"t", "c"}));
  seq->add_option("--len", seq_len, "number of symbols");
  seq->add_option("--start", seq_start, "first index");
  seq->add_option("--method", seq_method, "for c: gap, fixed or dfao")->check(CLI::IsMember({"gap", "fixed", "dfao"}));

  // word
  auto* word = app.add_subcommand("word", "border, beta, nuc and repetition checks on one word");
  std::string word_text;
  unsigned word_k = 0;
  bool q_beta = false, q_nuc = false, q_borders = false, q_sqf = false, q_ovf = false, q_circular = false,
       q_primitive = false;
  word->add_option("--w", word_text, "the word, e.g. 0001")->required();
  word->add_option("--k", word_k, "alphabet size (inferred when omitted)");
  word->add_flag("--beta", q_beta, "border correlation over {u, b}");
  word->add_flag("--nuc", q_nuc, "number of unbordered conjugates");
  word->add_flag("--borders", q_borders, "border lengths");
  word->add_flag("--squarefree", q_sqf, "square check");
  word->add_flag("--overlap-free", q_ovf, "overlap check");
  word->add_flag("--circular", q_circular, "repetition checks read the word circularly");
  word->add_flag("--primitive", q_primitive, "primitivity");

  // mnuc
  auto* mnuc = app.add_subcommand("mnuc", "exhaustive maximum of nuc over all words of each length");
  unsigned mnuc_k = 2;
  std::size_t mnuc_n = 12;
  mnuc->add_option("--k", mnuc_k, "alphabet size")->check(CLI::Range(1u, 10u));
  mnuc->add_option("--N", mnuc_n, "largest length");

  // compile
  auto* comp = app.add_subcommand("compile", "compile predicate definitions to automata");
  std::vector<std::string> comp_files;
  std::string comp_pred, comp_out;
  bool comp_dot = false, comp_with_corpus = false;
  comp->add_option("files", comp_files, "predicate files (.pred)")->check(CLI::ExistingFile);
  comp->add_option("--pred", comp_pred, "only this definition (required for --out)");
  comp->add_option("--out", comp_out, "write the automaton here");
  comp->add_flag("--dot", comp_dot, "write DOT instead of the text format");
  comp->add_flag("--with-corpus", comp_with_corpus, "load the corpus before the files");

  // decide
  auto* dec = app.add_subcommand("decide", "truth value of a sentence");
  std::vector<std::string> dec_files;
  std::string dec_pred, dec_formula, dec_expect;
  dec->add_option("files", dec_files, "predicate files")->check(CLI::ExistingFile);
  dec->add_option("--pred", dec_pred, "zero-parameter definition to decide");
  dec->add_option("--formula", dec_formula, "sentence text");
  dec->add_option("--expect", dec_expect, "true or false; exit status reflects agreement")
      ->check(CLI::IsMember({"true", "false"}));

  // enumerate
  auto* en = app.add_subcommand("enumerate", "accepted tuples of an automaton");
  std::string en_automaton, en_pred;
  std::vector<std::string> en_files;
  std::size_t en_limit = 50;
  std::uint64_t en_max = 0;
  bool en_rejected = false;
  en->add_option("--automaton", en_automaton, "automaton text file")->check(CLI::ExistingFile);
  en->add_option("--pred", en_pred, "compile this definition (corpus plus files)");
  en->add_option("files", en_files, "predicate files")->check(CLI::ExistingFile);
  en->add_option("--limit", en_limit, "at most this many tuples");
  en->add_option("--max", en_max, "single track: list all accepted values up to this bound");
  en->add_flag("--rejected", en_rejected, "with --max: list rejected values instead");

  // verify
  auto* ver = app.add_subcommand("verify", "run one verification suite");
  std::string check;
  std::size_t v_N = 0, v_s_bound = 4096, v_lo = 4, v_hi = 7, v_L = 2048;
  unsigned v_k = 0;
  std::uint64_t v_window = std::uint64_t{1} << 14, v_search_nodes = th::RunOptions{}.search_nodes;
  const std::vector<std::string> checks = {"mnuc",         "currie",     "theorem2",     "tm-achievers",
                                           "harju-nowotka", "intermediate-nuc", "lemma7", "lemma8",
                                           "lemma9",       "expected-nuc", "f-automatic", "corollary4",
                                           "logic-fast",   "logic-stretch", "properties"};
  ver->add_option("check", check, "suite name")->required()->check(CLI::IsMember(checks));
  ver->add_option("--N", v_N, "largest n (default per suite)");
  ver->add_option("--s-bound", v_s_bound, "largest start position scanned in c");
  ver->add_option("--k", v_k, "alphabet size (intermediate-nuc, expected-nuc)");
  ver->add_option("--window", v_window, "f-automatic window");
  ver->add_option("--lo", v_lo, "corollary4 first exponent");
  ver->add_option("--hi", v_hi, "corollary4 last exponent");
  ver->add_option("--L", v_L, "logic-stretch length bound");
  ver->add_option("--search-nodes", v_search_nodes, "node cap for backtracking searches");

  // report
  auto* rep = app.add_subcommand("report", "run the full acceptance suite");
  std::string rep_what;
  rep->add_option("what", rep_what, "all")->required()->check(CLI::IsMember({"all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*seq) {
      Word w;
      if (seq_name == "t") {
        w = sequences::thue_morse_prefix(seq_start + seq_len);
      } else {
        const auto m = seq_method == "gap"     ? sequences::TernaryMethod::kGapCount
                       : seq_method == "fixed" ? sequences::TernaryMethod::kCodedFixedPoint
                                               : sequences::TernaryMethod::kDfao;
        w = sequences::ternary_thue_morse_prefix(seq_start + seq_len, m);
      }
      std::cout << w.slice(seq_start, seq_len).to_string() << '\n';
      return 0;
    }

    if (*word) {
      const Word w = word_k ? Word::parse(word_text, word_k) : Word::parse(word_text);
      std::vector<std::pair<std::string, std::string>> out;
      const bool all = !(q_beta || q_nuc || q_borders || q_sqf || q_ovf || q_primitive);
      if (all || q_beta) out.emplace_back("beta", words::border_correlation(w));
      if (all || q_nuc) out.emplace_back("nuc", std::to_string(words::nuc(w)));
      if (all || q_borders) {
        std::string b;
        for (auto l : words::border_profile(w).borders) b += (b.empty() ? "" : ",") + std::to_string(l);
        out.emplace_back("borders", b.empty() ? "none" : b);
      }
      auto rep_text = [&](const std::optional<words::RepetitionWitness>& x) {
        return x ? "no (start " + std::to_string(x->start) + ", period " + std::to_string(x->period) + ")"
                 : std::string("yes");
      };
      if (all || q_sqf) out.emplace_back(q_circular ? "circularly-squarefree" : "squarefree",
                                         rep_text(words::square_check(w, q_circular)));
      if (all || q_ovf) out.emplace_back(q_circular ? "circularly-overlap-free" : "overlap-free",
                                         rep_text(words::overlap_check(w, q_circular)));
      if (all || q_primitive) out.emplace_back("primitive", words::is_primitive(w) ? "yes" : "no");
      if (out.size() == 1) {
        std::cout << out.front().second << '\n';
      } else {
        for (const auto& [k, v] : out) std::cout << k << ": " << v << '\n';
      }
      return 0;
    }

    if (*mnuc) {
      words::MnucOptions mo;
      mo.jobs = g.jobs;
      mo.witness_cap = 1;
      std::cout << std::setw(4) << "n" << std::setw(7) << "mnuc" << (mnuc_k == 2 ? "  formula" : "")
                << "  necklaces  example\n";
      bool ok = true;
      for (std::size_t n = 1; n <= mnuc_n; ++n) {
        const auto r = words::mnuc_exhaustive(mnuc_k, n, mo);
        std::cout << std::setw(4) << n << std::setw(7) << r.value;
        if (mnuc_k == 2) {
          std::cout << std::setw(9) << th::mnuc_formula(n);
          ok = ok && r.value == th::mnuc_formula(n);
        }
        std::cout << std::setw(11) << r.necklaces << "  " << (r.witnesses.empty() ? std::string("-") : r.witnesses.front().to_string()) << '\n';
      }
      return ok ? 0 : kExitFail;
    }

    if (*comp) {
      if (!comp_out.empty() && comp_pred.empty()) throw ContractError("--out needs --pred");
      if (comp_files.empty() && !comp_with_corpus) throw ContractError("no predicate files given");
      std::ofstream out;
      if (!comp_out.empty()) {
        out.open(comp_out);
        if (!out) throw ContractError("cannot write " + comp_out);
      }
      const auto env = load_env(g, comp_files, comp_with_corpus);
      logic::Compiler compiler(env, limits(g));
      std::vector<std::string> names;
      if (!comp_pred.empty()) names.push_back(comp_pred);
      else names = env.definition_order();
      for (const auto& name : names) {
        const auto start = std::chrono::steady_clock::now();
        const auto& a = compiler.definition(name);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << name << ": " << a.num_states() << " states, " << a.num_tracks() << " tracks, "
                  << std::fixed << std::setprecision(3) << secs << " s\n";
        if (out) {
          if (comp_dot) automata::write_dot(out, a);
          else automata::write_text(out, a);
        }
      }
      std::cout << "largest intermediate automaton: " << compiler.stats().max_states << " states (cap "
                << g.state_cap << ")\n";
      return 0;
    }

    if (*dec) {
      if (dec_pred.empty() == dec_formula.empty()) throw ContractError("give exactly one of --pred and --formula");
      const auto env = load_env(g, dec_files, true);
      bool truth = false;
      if (!dec_pred.empty()) {
        const auto* d = env.definition(dec_pred);
        if (!d) throw ContractError("unknown predicate '" + dec_pred + "'");
        if (!d->params.empty()) throw ContractError("'" + dec_pred + "' has parameters; not a sentence");
        logic::Compiler compiler(env, limits(g));
        const auto& a = compiler.definition(dec_pred);
        truth = a.accepting(a.initial());
      } else {
        truth = logic::decide_sentence(logic::parse_formula(dec_formula), env, limits(g));
      }
      std::cout << (truth ? "true" : "false") << '\n';
      if (!dec_expect.empty() && (dec_expect == "true") != truth) return kExitFail;
      return 0;
    }

    if (*en) {
      if (en_automaton.empty() == en_pred.empty()) throw ContractError("give exactly one of --automaton and --pred");
      std::optional<automata::TrackDfa> a;
      if (!en_automaton.empty()) {
        std::ifstream in(en_automaton);
        a = automata::read_text(in);
      } else {
        const auto env = load_env(g, en_files, true);
        logic::Compiler compiler(env, limits(g));
        a = compiler.definition(en_pred);
      }
      if (en_max > 0) {
        if (a->num_tracks() != 1) throw ContractError("--max needs a single-track automaton");
        const auto acc = automata::accepted_values_upto(*a, en_max);
        std::vector<std::uint64_t> values;
        if (en_rejected) {
          for (std::uint64_t n = 0, k = 0; n <= en_max; ++n) {
            if (k < acc.size() && acc[k] == n) ++k;
            else values.push_back(n);
          }
        } else {
          values = acc;
        }
        for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? " " : "") << values[i];
        std::cout << '\n';
        return 0;
      }
      for (const auto& tuple : automata::enumerate(*a, en_limit)) {
        for (std::size_t i = 0; i < tuple.size(); ++i) std::cout << (i ? " " : "") << tuple[i];
        std::cout << '\n';
      }
      return 0;
    }

    if (*ver) {
      Output out(g);
      th::RunOptions run = run_options(g);
      run.search_nodes = v_search_nodes;
      th::CorpusOptions corpus;
      corpus.corpus_dir = g.corpus;
      corpus.limits = limits(g);
      corpus.s_bound = v_s_bound;
      corpus.lengths_bound = v_L;
      if (v_N) corpus.agreement_bound = v_N;
      auto N = [&](std::size_t fallback) { return v_N ? v_N : fallback; };
      if (check == "mnuc") out.report(th::verify_mnuc_formula(N(18), run));
      else if (check == "currie") out.report(th::verify_currie(N(64), v_s_bound, run));
      else if (check == "theorem2") out.report(th::verify_theorem2(N(128), v_s_bound));
      else if (check == "tm-achievers") out.report(th::verify_tm_achievers(N(18), 20, run));
      else if (check == "harju-nowotka") out.report(th::harju_nowotka_suite(N(18), run));
      else if (check == "intermediate-nuc") {
        if (v_k) {
          out.report(th::verify_intermediate_nuc(N(v_k == 2 ? 48 : 10), v_k, run));
        } else {
          out.report(th::verify_intermediate_nuc(N(48), 2, run));
          out.report(th::verify_intermediate_nuc(N(10), 3, run));
          out.report(th::verify_intermediate_nuc(N(10), 4, run));
        }
      } else if (check == "lemma7") out.report(th::lemma7_check(N(15)));
      else if (check == "lemma8") out.report(th::lemma8_check(N(17)));
      else if (check == "lemma9") out.report(th::lemma9_pump_check(N(18)));
      else if (check == "expected-nuc") out.report(th::expected_nuc_report(v_k ? v_k : 2, N(v_k == 3 ? 12 : 24), run));
      else if (check == "f-automatic") out.report(th::f_automatic_check(v_window));
      else if (check == "corollary4") out.report(th::corollary4_check(v_lo, v_hi, v_s_bound));
      else if (check == "logic-fast") out.report(th::verify_fast_corpus(corpus));
      else if (check == "logic-stretch") out.report(th::verify_stretch_corpus(corpus));
      else if (check == "properties") out.report(th::property_suite(g.corpus));
      return out.status();
    }

    if (*rep) {
      Output out(g);
      th::AcceptanceOptions opt;
      opt.run = run_options(g);
      opt.corpus.corpus_dir = g.corpus;
      opt.corpus.limits = limits(g);
      std::vector<std::string> summary;
      th::acceptance_suite(opt, [&](const th::CriterionResult& c) {
        for (const auto& r : c.reports) {
          out.report(r);
          if (c.gating && !c.passed) out.set_failed();
        }
        summary.push_back("criterion " + std::to_string(c.number) + ": " + (c.passed ? "PASS" : "FAIL") + "  " +
                          c.title);
      });
      std::cout << "\n";
      for (const auto& s : summary) std::cout << s << '\n';
      return out.status();
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource limit (" << to_string(e.kind()) << ", cap " << e.cap() << "): " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.pos().line << ":" << e.pos().column << ": " << e.message() << '\n';
    return kExitUsage;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
