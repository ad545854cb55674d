#include <algorithm>

#include "wordlogic/logic.hpp"

namespace wordlogic::logic {

using automata::BoolOp;
using automata::LinearRelation;
using automata::TrackDfa;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

BoolOp to_op(Connective c) {
  switch (c) {
    case Connective::kAnd: return BoolOp::kAnd;
    case Connective::kOr: return BoolOp::kOr;
    case Connective::kImplies: return BoolOp::kImplies;
    case Connective::kIff: return BoolOp::kIff;
  }
  return BoolOp::kAnd;
}

// sum(coefficients) rel constant, with rel in {=, <=}, from lhs - rhs.
struct Linear {
  std::vector<std::string> tracks;
  std::vector<std::int64_t> coefficients;
  std::int64_t constant = 0;
};

Linear difference(const Term& lhs, const Term& rhs) {
  std::map<std::string, std::int64_t> merged = lhs.coefficients;
  for (const auto& [v, c] : rhs.coefficients) merged[v] -= c;
  Linear out;
  for (const auto& [v, c] : merged) {
    if (c == 0) continue;
    out.tracks.push_back(v);
    out.coefficients.push_back(c);
  }
  out.constant = rhs.constant - lhs.constant;
  return out;
}

TrackDfa equals_term(const std::string& var, const Term& t) {
  Term single;
  single.coefficients[var] = 1;
  const Linear l = difference(single, t);
  return automata::linear_constraint(l.tracks, l.coefficients, LinearRelation::kEq, l.constant);
}

}  // namespace

CompileResourceError::CompileResourceError(const ResourceError& cause, std::string subformula)
    : ResourceError(cause.kind(), cause.cap(), cause.detail() + " while compiling " + subformula),
      subformula_(std::move(subformula)) {}

Compiler::Compiler(const PredicateEnv& env, automata::Limits limits) : env_(env), limits_(limits) {}

std::string Compiler::fresh() { return "@" + std::to_string(next_fresh_++); }

TrackDfa Compiler::record(TrackDfa a) {
  stats_.max_states = std::max(stats_.max_states, a.num_states());
  return a;
}

TrackDfa Compiler::compile(const FormulaPtr& f) {
  check(*f, env_);
  TrackDfa a = node(*f);
  const auto free = free_variables(*f);
  std::vector<std::string> order(free.begin(), free.end());
  a = automata::add_tracks(a, order);
  return automata::minimize(automata::reorder_tracks(a, order));
}

const TrackDfa& Compiler::definition(std::string_view name) {
  if (auto it = cache_.find(name); it != cache_.end()) return it->second;
  const Definition* d = env_.definition(name);
  if (!d) throw ContractError("unknown predicate '" + std::string(name) + "'");
  TrackDfa a = automata::add_tracks(node(*d->body), d->params);
  a = automata::minimize(automata::reorder_tracks(a, d->params));
  return cache_.emplace(d->name, record(std::move(a))).first->second;
}

TrackDfa Compiler::node(const Formula& f) {
  try {
    return record(std::visit(
        overloaded{
            [](const Constant& c) {
              return c.value ? automata::universal({}) : automata::empty_language({});
            },
            [&](const Comparison& c) { return comparison(c); },
            [&](const SequenceAtom& a) { return sequence_atom(a); },
            [&](const Negation& n) { return automata::negate(node(*n.body)); },
            [&](const Binary& b) {
              TrackDfa lhs = node(*b.lhs);
              TrackDfa rhs = node(*b.rhs);
              ++stats_.combines;
              return automata::combine(lhs, rhs, to_op(b.op), limits_);
            },
            [&](const Quantified& q) {
              TrackDfa a = node(*q.body);
              if (q.universal) a = automata::negate(a);
              for (auto it = q.vars.rbegin(); it != q.vars.rend(); ++it) {
                ++stats_.projections;
                a = automata::project(a, *it, limits_);
              }
              if (q.universal) a = automata::negate(a);
              return a;
            },
            [&](const Call& c) { return call(c); },
        },
        f.node));
  } catch (const CompileResourceError&) {
    throw;
  } catch (const ResourceError& e) {
    throw CompileResourceError(e, to_string(f));
  }
}

TrackDfa Compiler::comparison(const Comparison& c) {
  Linear l = difference(c.lhs, c.rhs);
  auto negated = [&] {
    for (auto& a : l.coefficients) a = -a;
    l.constant = -l.constant;
  };
  switch (c.rel) {
    case Relation::kEq:
      return automata::linear_constraint(l.tracks, l.coefficients, LinearRelation::kEq, l.constant);
    case Relation::kNe:
      return automata::negate(
          automata::linear_constraint(l.tracks, l.coefficients, LinearRelation::kEq, l.constant));
    case Relation::kLe:
      return automata::linear_constraint(l.tracks, l.coefficients, LinearRelation::kLe, l.constant);
    case Relation::kLt:
      return automata::linear_constraint(l.tracks, l.coefficients, LinearRelation::kLe, l.constant - 1);
    case Relation::kGe:
      negated();
      return automata::linear_constraint(l.tracks, l.coefficients, LinearRelation::kLe, l.constant);
    case Relation::kGt:
      negated();
      return automata::linear_constraint(l.tracks, l.coefficients, LinearRelation::kLe, l.constant - 1);
  }
  throw ContractError("unknown relation");
}

TrackDfa Compiler::sequence_atom(const SequenceAtom& a) {
  // Compound indices get a fresh variable v with v = index, projected away.
  std::vector<std::pair<std::string, const Term*>> helpers;
  auto index_track = [&](const Term& t) {
    if (t.is_variable()) return t.variable();
    std::string v = fresh();
    helpers.emplace_back(v, &t);
    return v;
  };
  const sequences::Dfao& lhs = *env_.sequence(a.lhs.name);
  const std::string lhs_track = index_track(a.lhs.index);
  TrackDfa atom = std::visit(
      overloaded{
          [&](const SequenceRef& r) {
            const std::string rhs_track = index_track(r.index);
            return automata::sequence_compare(lhs, lhs_track, *env_.sequence(r.name), rhs_track, a.equal);
          },
          [&](Symbol s) { return automata::sequence_constant(lhs, lhs_track, s, a.equal); },
      },
      a.rhs);
  for (const auto& [v, t] : helpers) {
    ++stats_.combines;
    atom = automata::combine(atom, equals_term(v, *t), BoolOp::kAnd, limits_);
    ++stats_.projections;
    atom = automata::project(atom, v, limits_);
  }
  return atom;
}

TrackDfa Compiler::call(const Call& c) {
  const Definition* d = env_.definition(c.name);
  TrackDfa a = definition(c.name);
  // Move parameters out of the way first so that argument names cannot
  // collide with parameter names.
  std::vector<std::string> temps;
  for (const auto& p : d->params) {
    temps.push_back("%" + std::to_string(next_fresh_++));
    a = automata::rename_track(a, p, temps.back());
  }
  std::set<std::string> claimed;
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    const Term& arg = c.args[i];
    if (arg.is_variable() && claimed.insert(arg.variable()).second && !a.track_index(arg.variable())) {
      a = automata::rename_track(a, temps[i], arg.variable());
      continue;
    }
    ++stats_.combines;
    a = automata::combine(a, equals_term(temps[i], arg), BoolOp::kAnd, limits_);
    ++stats_.projections;
    a = automata::project(a, temps[i], limits_);
  }
  return a;
}

TrackDfa compile(const FormulaPtr& f, const PredicateEnv& env, automata::Limits limits) {
  return Compiler(env, limits).compile(f);
}

bool decide_sentence(const FormulaPtr& f, const PredicateEnv& env, automata::Limits limits) {
  const auto free = free_variables(*f);
  if (!free.empty()) throw ContractError("not a sentence: free variable '" + *free.begin() + "'");
  const TrackDfa a = compile(f, env, limits);
  return a.accepting(a.initial());
}

}  // namespace wordlogic::logic
