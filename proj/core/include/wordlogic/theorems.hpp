#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wordlogic/automata.hpp"
#include "wordlogic/error.hpp"
#include "wordlogic/sequences.hpp"
#include "wordlogic/word.hpp"

// Finite-range verification of the combinatorial claims about unbordered
// conjugates and circular squarefreeness, each against brute force or a
// constructive procedure.
namespace wordlogic::theorems {

enum class Verdict { kPass, kFail, kResourceLimited };
const char* to_string(Verdict v);

struct CapHit {
  CapKind kind = CapKind::kSearchBound;
  std::uint64_t cap = 0;
  std::string detail;
};

struct VerificationReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  Verdict verdict = Verdict::kPass;
  std::vector<std::string> counterexamples;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  std::optional<CapHit> cap;
  // Excluded from the record so that records stay byte-identical.
  std::chrono::duration<double> wall_time{0};

  bool passed() const { return verdict == Verdict::kPass; }
};

/// Line records: `check`, `param`, `verdict`, `cap`, `counterexample`,
/// `witness`, `note` lines, closed by `end`. Newlines inside values are
/// replaced by spaces.
std::string to_record(const VerificationReport& r);
std::vector<VerificationReport> parse_records(const std::string& text);
/// Human-readable summary including wall time. At most `max_items`
/// witnesses and counterexamples are listed.
std::string to_table(const VerificationReport& r, std::size_t max_items = 12);

struct RunOptions {
  unsigned jobs = 1;
  std::uint64_t enumeration_budget = std::uint64_t{1} << 28;
  std::uint64_t search_nodes = std::uint64_t{1} << 24;
};

// ---- exact helpers ----

/// n ∈ {2^k, 3·2^k : k ≥ 0}.
bool is_pow2_or_3pow2(std::uint64_t n);
/// Closed form for the maximum number of unbordered conjugates of a binary
/// word of length n; mnuc_formula(0) = 0.
std::uint64_t mnuc_formula(std::uint64_t n);
/// f(n) = mnuc_formula(n) - floor(n/2), with f(0) = 0.
int f_value(std::uint64_t n);
/// F_0 = 0, F_1 = 1. Throws ContractError past F_93.
std::uint64_t fibonacci(std::uint64_t n);
/// Unbordered binary words of length n by brute force (n ≤ 40).
std::uint64_t unbordered_binary_count(unsigned n, unsigned jobs = 1);
/// Unbordered words over Σ_k of length n by brute force.
std::uint64_t unbordered_count(unsigned k, unsigned n);
/// Quadratic nuc with no shared code path: every shift, every border length.
std::size_t naive_nuc(const Word& w);

/// Lengths with no circularly squarefree ternary word; the x021 / x2120
/// forms over factors of c also miss 21 and 28; the compiled currie
/// predicate additionally rejects 0..3.
inline const std::set<std::uint64_t> kCurrieExceptions = {5, 7, 9, 10, 14, 17};
inline const std::set<std::uint64_t> kTheorem2Exceptions = {5, 7, 9, 10, 14, 17, 21, 28};
inline const std::set<std::uint64_t> kCurrieRejects = {0, 1, 2, 3, 5, 7, 9, 10, 14, 17, 21, 28};

// ---- binary words, unbordered conjugates ----

VerificationReport verify_mnuc_formula(std::size_t N, const RunOptions& opt = {});

struct Achiever {
  std::size_t position = 0;
  Word factor;
  std::size_t nuc = 0;
};
/// Smallest position m ≤ n of t with nuc(t[m..m+n)) = mnuc_formula(n).
std::optional<Achiever> tm_achiever(std::size_t n);
VerificationReport verify_tm_achievers(std::size_t N, std::size_t cross_check_limit = 20,
                                       const RunOptions& opt = {});

VerificationReport harju_nowotka_suite(std::size_t N, const RunOptions& opt = {});

/// Binary word of length n with exactly i unbordered conjugates,
/// 1 < i ≤ mnuc_formula(n). Throws ContractError outside that range and
/// ResourceError when no base word is found within the search bounds.
Word construct_word_with_nuc(std::size_t n, std::size_t i);
VerificationReport verify_intermediate_nuc(std::size_t N, unsigned k, const RunOptions& opt = {});

VerificationReport lemma7_check(std::size_t N);
VerificationReport lemma8_check(std::size_t N);
VerificationReport lemma9_pump_check(std::size_t N);

VerificationReport expected_nuc_report(unsigned k, std::size_t N, const RunOptions& opt = {});

// ---- 2-automaticity of f ----

struct KernelResult {
  std::vector<std::size_t> classes_by_level;  // cumulative distinct count for e = 0, 1, ...
  std::optional<sequences::Dfao> dfao;        // outputs are f + 1
};
KernelResult f_kernel(std::uint64_t window);
VerificationReport f_automatic_check(std::uint64_t window);

// ---- ternary words ----

enum class Theorem2Form { kSuffix021, kSuffix2120 };
const char* to_string(Theorem2Form f);

struct Theorem2Witness {
  std::size_t position = 0;
  Theorem2Form form = Theorem2Form::kSuffix021;
  Word x;
  Word word;  // x·021 or x·2120
};

/// The prefix of c scanned by the ternary checks; cached.
const Word& ternary_prefix(std::size_t len);
bool is_circularly_squarefree(std::span<const Symbol> w);
std::optional<Theorem2Witness> theorem2_witness(std::size_t n, std::size_t s_bound = 4096);
VerificationReport verify_theorem2(std::size_t N, std::size_t s_bound = 4096);

/// Exhaustive: the lexicographically least circularly squarefree word in
/// Σ_3^n, or none. Throws ResourceError after `node_cap` search nodes.
std::optional<Word> circularly_squarefree_search(std::size_t n, std::uint64_t node_cap);
VerificationReport verify_currie(std::size_t N, std::size_t s_bound = 4096,
                                 const RunOptions& opt = {});

/// accepted[n] for 0 ≤ n ≤ L: some length-n factor of c starting at
/// s ≤ s_bound is circularly squarefree. accepted[0] holds vacuously.
std::vector<bool> circsf_lengths_bruteforce(std::size_t L, std::size_t s_bound = 4096);
/// Counts over [2^n, 2^(n+1)) for n in [lo, hi] against 2^(n-3) - F + 2,
/// trying Fibonacci index offsets and reporting which one fits.
VerificationReport corollary4_check(std::size_t lo, std::size_t hi, std::size_t s_bound = 4096,
                                    const std::vector<bool>* accepted = nullptr);

// ---- compiled corpus ----

struct CorpusOptions {
  std::filesystem::path corpus_dir;
  automata::Limits limits;
  std::uint64_t agreement_bound = 64;
  std::size_t lengths_bound = 2048;
  std::size_t s_bound = 4096;
};
/// Fast sentences decide true with empty counterexample automata; every
/// 2-parameter fast predicate agrees with bounded evaluation.
VerificationReport verify_fast_corpus(const CorpusOptions& opt);
/// currie and circsf compile; enumerations match the rejects list and
/// circsf_lengths_bruteforce. A state-cap hit gives resource-limited.
VerificationReport verify_stretch_corpus(const CorpusOptions& opt);

}  // namespace wordlogic::theorems
