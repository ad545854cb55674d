#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wordlogic/automata.hpp"
#include "wordlogic/error.hpp"
#include "wordlogic/sequences.hpp"

// First-order predicate language over natural-number variables with linear
// atoms and automatic-sequence indexing, compiled to TrackDfas.
//
//   def     := name '(' params ')' ':=' expr ';'
//   expr    := 'E' vars expr | 'A' vars expr | expr op expr | '~' expr
//            | atom | name '(' terms ')' | '(' expr ')' | 'true' | 'false'
//   op      := '&' | '|' | '=>' | '<=>'   (tightest first; => is right-assoc)
//   atom    := term rel term | S '[' term ']' ('=' | '!=') (S '[' term ']' | digit)
//   term    := item ('+' item)*,  item := n | var | n var | n '*' var
//
// Quantifier variable lists are comma separated and the body extends as far
// right as possible. `#` starts a comment; `#@ key: value` lines attach
// metadata to the next definition.
namespace wordlogic::logic {

struct Term {
  std::map<std::string, std::int64_t> coefficients;  // var -> positive multiplier
  std::int64_t constant = 0;
  SourcePos pos;

  bool is_variable() const { return constant == 0 && coefficients.size() == 1 && coefficients.begin()->second == 1; }
  const std::string& variable() const { return coefficients.begin()->first; }
};

enum class Relation { kEq, kNe, kLt, kLe, kGt, kGe };
enum class Connective { kAnd, kOr, kImplies, kIff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Constant {
  bool value;
};
struct Comparison {
  Term lhs;
  Relation rel;
  Term rhs;
};
struct SequenceRef {
  std::string name;
  Term index;
};
struct SequenceAtom {
  SequenceRef lhs;
  bool equal;
  std::variant<SequenceRef, Symbol> rhs;
};
struct Negation {
  FormulaPtr body;
};
struct Binary {
  Connective op;
  FormulaPtr lhs, rhs;
};
struct Quantified {
  bool universal;
  std::vector<std::string> vars;
  FormulaPtr body;
};
struct Call {
  std::string name;
  std::vector<Term> args;
};

struct Formula {
  std::variant<Constant, Comparison, SequenceAtom, Negation, Binary, Quantified, Call> node;
  SourcePos pos;
};

struct Definition {
  std::string name;
  std::vector<std::string> params;
  FormulaPtr body;
  SourcePos pos;
  std::map<std::string, std::string> metadata;
};

std::vector<Definition> parse_program(std::string_view text);
FormulaPtr parse_formula(std::string_view text);

std::string to_string(const Formula& f);
std::string to_string(const Term& t);
std::set<std::string> free_variables(const Formula& f);

class PredicateEnv {
 public:
  /// T (Thue-Morse) and C (ternary Thue-Morse) with no definitions.
  static PredicateEnv standard();

  void add_sequence(sequences::Dfao dfao);
  /// Definitions are checked in order; a body may call only earlier ones.
  void add_definitions(const std::vector<Definition>& defs);
  void add_program(std::string_view text) { add_definitions(parse_program(text)); }

  const sequences::Dfao* sequence(std::string_view name) const;
  const Definition* definition(std::string_view name) const;
  const std::vector<std::string>& definition_order() const { return order_; }

  /// Adds every *.pred file of `dir` in file-name order.
  void add_corpus(const std::filesystem::path& dir);

 private:
  std::map<std::string, sequences::Dfao, std::less<>> sequences_;
  std::map<std::string, Definition, std::less<>> definitions_;
  std::vector<std::string> order_;
};

/// Resolves names and arities and rejects rebinding a variable already
/// bound on the same path. `allowed_free`, when given, must contain every
/// free variable. Throws ParseError.
void check(const Formula& f, const PredicateEnv& env,
           const std::set<std::string>* allowed_free = nullptr);

/// Inlines every call with capture-avoiding substitution.
FormulaPtr expand(const FormulaPtr& f, const PredicateEnv& env);

/// Raised when compiling a subformula exceeds a cap; `subformula` is the
/// innermost one that failed.
class CompileResourceError : public ResourceError {
 public:
  CompileResourceError(const ResourceError& cause, std::string subformula);
  const std::string& subformula() const { return subformula_; }

 private:
  std::string subformula_;
};

struct CompileStats {
  std::size_t max_states = 0;
  std::size_t projections = 0;
  std::size_t combines = 0;
};

/// Compiles formulas against one environment, caching each definition's
/// automaton over its parameter tracks.
class Compiler {
 public:
  explicit Compiler(const PredicateEnv& env, automata::Limits limits = {});

  /// Tracks of the result are exactly the free variables of f.
  automata::TrackDfa compile(const FormulaPtr& f);
  /// Automaton over the definition's parameters, in declaration order.
  const automata::TrackDfa& definition(std::string_view name);

  const CompileStats& stats() const { return stats_; }

 private:
  automata::TrackDfa node(const Formula& f);
  automata::TrackDfa comparison(const Comparison& c);
  automata::TrackDfa sequence_atom(const SequenceAtom& a);
  automata::TrackDfa call(const Call& c);
  automata::TrackDfa record(automata::TrackDfa a);
  std::string fresh();

  const PredicateEnv& env_;
  automata::Limits limits_;
  std::map<std::string, automata::TrackDfa, std::less<>> cache_;
  CompileStats stats_;
  std::size_t next_fresh_ = 0;
};

automata::TrackDfa compile(const FormulaPtr& f, const PredicateEnv& env, automata::Limits limits = {});

/// Truth of a sentence: compile and test whether the 0-track automaton
/// accepts the empty word.
bool decide_sentence(const FormulaPtr& f, const PredicateEnv& env, automata::Limits limits = {});

/// Direct evaluation of the formula semantics with every quantifier
/// ranging over [0, bound]. Used as an oracle for guarded formulas.
class BoundedEvaluator {
 public:
  BoundedEvaluator(const PredicateEnv& env, std::uint64_t bound);
  ~BoundedEvaluator();
  BoundedEvaluator(BoundedEvaluator&&) noexcept;

  /// Every free variable of f must be assigned.
  bool operator()(const Formula& f, const std::map<std::string, std::uint64_t>& assignment);
  bool call(std::string_view definition, std::span<const std::uint64_t> args);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool evaluate_bounded(const Formula& f, const PredicateEnv& env,
                      const std::map<std::string, std::uint64_t>& assignment, std::uint64_t bound);

}  // namespace wordlogic::logic
