#include <sstream>

#include "theorems_internal.hpp"
#include "wordlogic/logic.hpp"

namespace wordlogic::theorems {

using detail::join;
using detail::param;
using detail::run_check;

namespace {

logic::PredicateEnv load(const CorpusOptions& opt) {
  auto env = logic::PredicateEnv::standard();
  env.add_corpus(opt.corpus_dir);
  return env;
}

std::string tier(const logic::Definition& d) {
  auto it = d.metadata.find("tier");
  return it == d.metadata.end() ? "" : it->second;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fixed3(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << x;
  return s.str();
}

}  // namespace

VerificationReport verify_fast_corpus(const CorpusOptions& opt) {
  return run_check(
      "logic-fast",
      {{"state_cap", param(opt.limits.state_cap)}, {"agreement_bound", param(opt.agreement_bound)}},
      [&](VerificationReport& r) {
        const auto env = load(opt);
        // Sentence, and the automaton that would hold its counterexamples.
        const std::pair<const char*, const char*> sentences[] = {
            {"tm_overlap_free", "tm_overlap_at"},
            {"c_squarefree", "c_square_at"},
        };
        for (const auto& [sentence, witness] : sentences) {
          const auto start = std::chrono::steady_clock::now();
          logic::Compiler compiler(env, opt.limits);
          const auto& a = compiler.definition(sentence);
          const auto& cex = compiler.definition(witness);
          const double secs = seconds_since(start);
          const bool truth = a.accepting(a.initial());
          const auto d = automata::decide(cex);
          std::string line = std::string(sentence) + " = " + (truth ? "true" : "false") + "; " + witness +
                             (d.nonempty ? " nonempty" : " empty") + "; max states " +
                             std::to_string(compiler.stats().max_states);
          r.notes.push_back(std::string(sentence) + " compiled in " + fixed3(secs) + " s");
          if (!truth || d.nonempty || secs > 300) {
            r.counterexamples.push_back(line + (secs > 300 ? "; over 5 minutes" : ""));
          } else {
            r.witnesses.push_back(line);
          }
        }

        logic::Compiler compiler(env, opt.limits);
        logic::BoundedEvaluator eval(env, 8 * opt.agreement_bound);
        std::vector<std::string> checked;
        for (const auto& name : env.definition_order()) {
          const auto& d = *env.definition(name);
          if (d.params.size() != 2 || tier(d) != "fast") continue;
          const auto& a = compiler.definition(name);
          std::uint64_t accepted = 0;
          std::optional<std::string> mismatch;
          for (std::uint64_t x = 0; x <= opt.agreement_bound && !mismatch; ++x) {
            for (std::uint64_t y = 0; y <= opt.agreement_bound; ++y) {
              const std::uint64_t v[2] = {x, y};
              const bool got = a.accepts_values(v);
              accepted += got;
              if (got != eval.call(name, v)) {
                mismatch = name + "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
                break;
              }
            }
          }
          if (mismatch) r.counterexamples.push_back("disagreement at " + *mismatch);
          else r.witnesses.push_back(name + " agrees on [0, " + param(opt.agreement_bound) + "]^2 (" +
                                     std::to_string(accepted) + " tuples accepted)");
          checked.push_back(name);
        }
        if (checked.empty()) r.counterexamples.push_back("no 2-parameter fast predicates in the corpus");
      });
}

VerificationReport verify_stretch_corpus(const CorpusOptions& opt) {
  return run_check(
      "logic-stretch",
      {{"state_cap", param(opt.limits.state_cap)}, {"L", param(opt.lengths_bound)}, {"s_bound", param(opt.s_bound)}},
      [&](VerificationReport& r) {
        const auto env = load(opt);
        logic::Compiler compiler(env, opt.limits);
        auto start = std::chrono::steady_clock::now();
        const auto& currie = compiler.definition("currie");
        r.notes.push_back("currie: " + std::to_string(currie.num_states()) + " states, compiled in " +
                          fixed3(seconds_since(start)) + " s");
        const auto acc = automata::accepted_values_upto(currie, opt.lengths_bound);
        std::set<std::uint64_t> rejected;
        for (std::uint64_t n = 0, k = 0; n <= opt.lengths_bound; ++n) {
          if (k < acc.size() && acc[k] == n) ++k;
          else rejected.insert(n);
        }
        if (rejected != kCurrieRejects) {
          r.counterexamples.push_back("currie rejects " + join(rejected));
        } else {
          r.witnesses.push_back("currie rejects exactly " + join(rejected) + " up to " + param(opt.lengths_bound));
        }

        start = std::chrono::steady_clock::now();
        const auto& circsf = compiler.definition("circsf");
        r.notes.push_back("circsf: " + std::to_string(circsf.num_states()) + " states, compiled in " +
                          fixed3(seconds_since(start)) + " s");
        const auto brute = circsf_lengths_bruteforce(opt.lengths_bound, opt.s_bound);
        std::size_t disagreements = 0;
        for (std::uint64_t n = 0; n <= opt.lengths_bound; ++n) {
          const std::uint64_t v[1] = {n};
          if (circsf.accepts_values(v) != brute[n] && disagreements++ < 8) {
            r.counterexamples.push_back("circsf n=" + std::to_string(n) + " automaton " +
                                        (brute[n] ? "rejects" : "accepts") + ", brute force " +
                                        (brute[n] ? "accepts" : "rejects"));
          }
        }
        if (disagreements == 0) {
          r.witnesses.push_back("circsf agrees with the brute-force lengths up to " + param(opt.lengths_bound));
        }
        std::vector<std::uint64_t> counts;
        for (std::size_t n = 4; n <= 7; ++n) counts.push_back(automata::count_by_bitlength(circsf, n + 1));
        r.notes.push_back("circsf counts over [2^n, 2^(n+1)) for n = 4..7 from the automaton: " + join(counts));
      });
}

}  // namespace wordlogic::theorems
