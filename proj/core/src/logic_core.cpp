#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include "wordlogic/logic.hpp"

namespace wordlogic::logic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::kEq: return "=";
    case Relation::kNe: return "!=";
    case Relation::kLt: return "<";
    case Relation::kLe: return "<=";
    case Relation::kGt: return ">";
    case Relation::kGe: return ">=";
  }
  return "?";
}

const char* connective_text(Connective c) {
  switch (c) {
    case Connective::kAnd: return "&";
    case Connective::kOr: return "|";
    case Connective::kImplies: return "=>";
    case Connective::kIff: return "<=>";
  }
  return "?";
}

void term_variables(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  for (const auto& [v, c] : t.coefficients) {
    if (!bound.count(v)) out.insert(v);
  }
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(overloaded{
                 [](const Constant&) {},
                 [&](const Comparison& c) {
                   term_variables(c.lhs, bound, out);
                   term_variables(c.rhs, bound, out);
                 },
                 [&](const SequenceAtom& a) {
                   term_variables(a.lhs.index, bound, out);
                   if (auto* r = std::get_if<SequenceRef>(&a.rhs)) term_variables(r->index, bound, out);
                 },
                 [&](const Negation& n) { collect_free(*n.body, bound, out); },
                 [&](const Binary& b) {
                   collect_free(*b.lhs, bound, out);
                   collect_free(*b.rhs, bound, out);
                 },
                 [&](const Quantified& q) {
                   std::vector<std::string> added;
                   for (const auto& v : q.vars) {
                     if (bound.insert(v).second) added.push_back(v);
                   }
                   collect_free(*q.body, bound, out);
                   for (const auto& v : added) bound.erase(v);
                 },
                 [&](const Call& c) {
                   for (const auto& t : c.args) term_variables(t, bound, out);
                 },
             },
             f.node);
}

std::string fresh_name(const std::string& base) {
  static std::atomic<std::uint64_t> counter{0};
  const auto tick = base.find('\'');
  return base.substr(0, tick) + "'" + std::to_string(++counter);
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  for (const auto& [v, c] : t.coefficients) {
    if (!out.empty()) out += "+";
    if (c != 1) out += std::to_string(c) + "*";
    out += v;
  }
  if (t.constant != 0 || out.empty()) {
    if (!out.empty()) out += "+";
    out += std::to_string(t.constant);
  }
  return out;
}

std::string to_string(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Constant& c) -> std::string { return c.value ? "true" : "false"; },
          [](const Comparison& c) {
            return to_string(c.lhs) + relation_text(c.rel) + to_string(c.rhs);
          },
          [](const SequenceAtom& a) {
            std::string out = a.lhs.name + "[" + to_string(a.lhs.index) + "]" + (a.equal ? "=" : "!=");
            if (auto* r = std::get_if<SequenceRef>(&a.rhs)) {
              out += r->name + "[" + to_string(r->index) + "]";
            } else {
              out += std::to_string(std::get<Symbol>(a.rhs));
            }
            return out;
          },
          [](const Negation& n) { return "~(" + to_string(*n.body) + ")"; },
          [](const Binary& b) {
            return "(" + to_string(*b.lhs) + " " + connective_text(b.op) + " " + to_string(*b.rhs) + ")";
          },
          [](const Quantified& q) {
            std::string out = q.universal ? "(A " : "(E ";
            for (std::size_t i = 0; i < q.vars.size(); ++i) out += (i ? ", " : "") + q.vars[i];
            return out + " " + to_string(*q.body) + ")";
          },
          [](const Call& c) {
            std::string out = c.name + "(";
            for (std::size_t i = 0; i < c.args.size(); ++i) out += (i ? "," : "") + to_string(c.args[i]);
            return out + ")";
          },
      },
      f.node);
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

PredicateEnv PredicateEnv::standard() {
  PredicateEnv env;
  env.add_sequence(sequences::thue_morse_dfao());
  env.add_sequence(sequences::ternary_thue_morse_dfao());
  return env;
}

void PredicateEnv::add_sequence(sequences::Dfao dfao) {
  if (dfao.next(0, 0) != 0) throw ContractError("sequence DFAO must be leading-zero invariant");
  std::string name = dfao.name();
  sequences_.insert_or_assign(std::move(name), std::move(dfao));
}

void PredicateEnv::add_definitions(const std::vector<Definition>& defs) {
  for (const auto& d : defs) {
    if (definitions_.count(d.name)) throw ParseError(d.pos, "predicate '" + d.name + "' defined twice");
    if (sequences_.count(d.name)) throw ParseError(d.pos, "'" + d.name + "' is already a sequence name");
    std::set<std::string> params(d.params.begin(), d.params.end());
    if (params.size() != d.params.size()) throw ParseError(d.pos, "repeated parameter in '" + d.name + "'");
    check(*d.body, *this, &params);
    definitions_.emplace(d.name, d);
    order_.push_back(d.name);
  }
}

void PredicateEnv::add_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".pred") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw ContractError("cannot read " + file.string());
    std::stringstream text;
    text << in.rdbuf();
    try {
      add_program(text.str());
    } catch (const ParseError& e) {
      throw ParseError(e.pos(), file.filename().string() + ": " + e.message());
    }
  }
}

const sequences::Dfao* PredicateEnv::sequence(std::string_view name) const {
  auto it = sequences_.find(name);
  return it == sequences_.end() ? nullptr : &it->second;
}

const Definition* PredicateEnv::definition(std::string_view name) const {
  auto it = definitions_.find(name);
  return it == definitions_.end() ? nullptr : &it->second;
}

namespace {

class Checker {
 public:
  Checker(const PredicateEnv& env, const std::set<std::string>* allowed) : env_(env), allowed_(allowed) {
    if (allowed_) bound_ = *allowed_;
  }

  void run(const Formula& f) {
    std::visit(overloaded{
                   [](const Constant&) {},
                   [&](const Comparison& c) {
                     term(c.lhs);
                     term(c.rhs);
                   },
                   [&](const SequenceAtom& a) {
                     sequence(a.lhs, f.pos);
                     if (auto* r = std::get_if<SequenceRef>(&a.rhs)) sequence(*r, f.pos);
                   },
                   [&](const Negation& n) { run(*n.body); },
                   [&](const Binary& b) {
                     run(*b.lhs);
                     run(*b.rhs);
                   },
                   [&](const Quantified& q) {
                     for (const auto& v : q.vars) {
                       if (!bound_.insert(v).second) {
                         throw ParseError(f.pos, "variable '" + v + "' is already bound here");
                       }
                     }
                     run(*q.body);
                     for (const auto& v : q.vars) bound_.erase(v);
                   },
                   [&](const Call& c) {
                     const Definition* d = env_.definition(c.name);
                     if (!d) throw ParseError(f.pos, "unknown predicate '" + c.name + "'");
                     if (d->params.size() != c.args.size()) {
                       throw ParseError(f.pos, "'" + c.name + "' takes " + std::to_string(d->params.size()) +
                                                   " arguments, given " + std::to_string(c.args.size()));
                     }
                     for (const auto& t : c.args) term(t);
                   },
               },
               f.node);
  }

 private:
  void term(const Term& t) {
    if (!allowed_) return;
    for (const auto& [v, c] : t.coefficients) {
      if (!bound_.count(v)) throw ParseError(t.pos, "unbound variable '" + v + "'");
    }
  }

  void sequence(const SequenceRef& r, SourcePos pos) {
    if (!env_.sequence(r.name)) throw ParseError(pos, "unknown sequence '" + r.name + "'");
    term(r.index);
  }

  const PredicateEnv& env_;
  const std::set<std::string>* allowed_;
  std::set<std::string> bound_;
};

using Substitution = std::map<std::string, Term>;

Term apply_term(const Term& t, const Substitution& s) {
  Term out;
  out.pos = t.pos;
  out.constant = t.constant;
  for (const auto& [v, c] : t.coefficients) {
    auto it = s.find(v);
    if (it == s.end()) {
      out.coefficients[v] += c;
      continue;
    }
    for (const auto& [w, d] : it->second.coefficients) out.coefficients[w] += c * d;
    out.constant += c * it->second.constant;
  }
  return out;
}

FormulaPtr substitute(const FormulaPtr& f, const Substitution& s) {
  if (s.empty()) return f;
  auto rebuild = [&](auto node) { return std::make_shared<const Formula>(Formula{std::move(node), f->pos}); };
  return std::visit(
      overloaded{
          [&](const Constant&) { return f; },
          [&](const Comparison& c) { return rebuild(Comparison{apply_term(c.lhs, s), c.rel, apply_term(c.rhs, s)}); },
          [&](const SequenceAtom& a) {
            SequenceAtom out = a;
            out.lhs.index = apply_term(a.lhs.index, s);
            if (auto* r = std::get_if<SequenceRef>(&out.rhs)) r->index = apply_term(r->index, s);
            return rebuild(std::move(out));
          },
          [&](const Negation& n) { return rebuild(Negation{substitute(n.body, s)}); },
          [&](const Binary& b) { return rebuild(Binary{b.op, substitute(b.lhs, s), substitute(b.rhs, s)}); },
          [&](const Quantified& q) {
            // Bound variables shadow the substitution; rename any that would
            // capture a variable of a substituted term.
            Substitution inner = s;
            for (const auto& v : q.vars) inner.erase(v);
            std::set<std::string> incoming;
            for (const auto& [v, t] : inner) {
              for (const auto& [w, c] : t.coefficients) incoming.insert(w);
            }
            Quantified out{q.universal, {}, nullptr};
            for (const auto& v : q.vars) {
              if (incoming.count(v)) {
                const std::string renamed = fresh_name(v);
                Term t;
                t.coefficients[renamed] = 1;
                inner[v] = t;
                out.vars.push_back(renamed);
              } else {
                out.vars.push_back(v);
              }
            }
            out.body = substitute(q.body, inner);
            return rebuild(std::move(out));
          },
          [&](const Call& c) {
            Call out{c.name, {}};
            for (const auto& t : c.args) out.args.push_back(apply_term(t, s));
            return rebuild(std::move(out));
          },
      },
      f->node);
}

}  // namespace

void check(const Formula& f, const PredicateEnv& env, const std::set<std::string>* allowed_free) {
  Checker(env, allowed_free).run(f);
}

FormulaPtr expand(const FormulaPtr& f, const PredicateEnv& env) {
  auto rebuild = [&](auto node) { return std::make_shared<const Formula>(Formula{std::move(node), f->pos}); };
  return std::visit(
      overloaded{
          [&](const Negation& n) { return rebuild(Negation{expand(n.body, env)}); },
          [&](const Binary& b) { return rebuild(Binary{b.op, expand(b.lhs, env), expand(b.rhs, env)}); },
          [&](const Quantified& q) { return rebuild(Quantified{q.universal, q.vars, expand(q.body, env)}); },
          [&](const Call& c) {
            const Definition* d = env.definition(c.name);
            if (!d) throw ParseError(f->pos, "unknown predicate '" + c.name + "'");
            if (d->params.size() != c.args.size()) throw ParseError(f->pos, "arity mismatch for '" + c.name + "'");
            Substitution s;
            for (std::size_t i = 0; i < c.args.size(); ++i) s[d->params[i]] = c.args[i];
            return substitute(expand(d->body, env), s);
          },
          [&](const auto&) { return f; },
      },
      f->node);
}

}  // namespace wordlogic::logic
