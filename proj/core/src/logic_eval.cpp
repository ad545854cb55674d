#include <algorithm>
#include <unordered_map>

#include "wordlogic/logic.hpp"

namespace wordlogic::logic {

// Formulas are lowered once to slot-indexed nodes. Quantifiers scan the
// conjuncts of their guard (the body of E, the premise of A's implication)
// for linear atoms in the quantified variable and iterate only over the
// values those atoms allow; everything outside that range makes the guard
// false, so the bounded semantics is unchanged.
struct BoundedEvaluator::Impl {
  struct LTerm {
    std::vector<std::pair<std::uint32_t, std::int64_t>> vars;
    std::int64_t constant = 0;
  };
  enum class Kind { kConst, kCmp, kSeq, kNot, kBin, kQuant, kCall };
  struct Node {
    Kind kind = Kind::kConst;
    bool flag = false;  // constant value, sequence equality, or universal
    Relation rel = Relation::kEq;
    Connective op = Connective::kAnd;
    LTerm a, b;
    std::pair<const sequences::Dfao*, std::vector<Symbol>*> lhs_seq{};
    std::pair<const sequences::Dfao*, std::vector<Symbol>*> rhs_seq{};  // null when comparing with `symbol`
    Symbol symbol = 0;
    std::vector<std::uint32_t> slots;
    std::vector<Node> kids;
    std::size_t def = 0;
    std::vector<LTerm> args;
  };
  struct Lowered {
    Node body;
    std::uint32_t frame = 0;
  };
  struct Frame {
    std::vector<std::int64_t> value;
    std::vector<std::uint8_t> set;
  };

  const PredicateEnv& env;
  std::uint64_t bound;
  std::map<std::string, std::size_t, std::less<>> def_index;
  std::vector<std::optional<Lowered>> defs;
  std::map<const sequences::Dfao*, std::vector<Symbol>> prefixes;

  // Definitions are pure, so call results are memoized per argument tuple.
  struct TupleHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
      std::uint64_t h = 1469598103934665603ull;
      for (auto x : v) h = (h ^ static_cast<std::uint64_t>(x)) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };
  std::vector<std::unordered_map<std::vector<std::int64_t>, bool, TupleHash>> memo;

  Impl(const PredicateEnv& e, std::uint64_t b) : env(e), bound(b) {
    for (const auto& name : env.definition_order()) {
      def_index.emplace(name, defs.size());
      defs.emplace_back();
    }
    memo.resize(defs.size());
  }

  // -- lowering --

  struct Scope {
    std::map<std::string, std::vector<std::uint32_t>> slots;
    std::uint32_t next = 0;
    std::uint32_t bind(const std::string& v) {
      slots[v].push_back(next);
      return next++;
    }
    void unbind(const std::string& v) { slots[v].pop_back(); }
    std::uint32_t at(const std::string& v) const {
      auto it = slots.find(v);
      if (it == slots.end() || it->second.empty()) throw ContractError("unassigned variable '" + v + "'");
      return it->second.back();
    }
  };

  LTerm lower(const Term& t, const Scope& scope) {
    LTerm out;
    out.constant = t.constant;
    for (const auto& [v, c] : t.coefficients) out.vars.emplace_back(scope.at(v), c);
    return out;
  }

  std::pair<const sequences::Dfao*, std::vector<Symbol>*> sequence(const std::string& name) {
    const sequences::Dfao* d = env.sequence(name);
    if (!d) throw ContractError("unknown sequence '" + name + "'");
    return {d, &prefixes[d]};
  }

  Node lower(const Formula& f, Scope& scope) {
    Node n;
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Constant>) {
            n.kind = Kind::kConst;
            n.flag = node.value;
          } else if constexpr (std::is_same_v<T, Comparison>) {
            n.kind = Kind::kCmp;
            n.rel = node.rel;
            n.a = lower(node.lhs, scope);
            n.b = lower(node.rhs, scope);
          } else if constexpr (std::is_same_v<T, SequenceAtom>) {
            n.kind = Kind::kSeq;
            n.flag = node.equal;
            n.lhs_seq = sequence(node.lhs.name);
            n.a = lower(node.lhs.index, scope);
            if (const auto* r = std::get_if<SequenceRef>(&node.rhs)) {
              n.rhs_seq = sequence(r->name);
              n.b = lower(r->index, scope);
            } else {
              n.symbol = std::get<Symbol>(node.rhs);
            }
          } else if constexpr (std::is_same_v<T, Negation>) {
            n.kind = Kind::kNot;
            n.kids.push_back(lower(*node.body, scope));
          } else if constexpr (std::is_same_v<T, Binary>) {
            n.kind = Kind::kBin;
            n.op = node.op;
            n.kids.push_back(lower(*node.lhs, scope));
            n.kids.push_back(lower(*node.rhs, scope));
          } else if constexpr (std::is_same_v<T, Quantified>) {
            n.kind = Kind::kQuant;
            n.flag = node.universal;
            for (const auto& v : node.vars) n.slots.push_back(scope.bind(v));
            n.kids.push_back(lower(*node.body, scope));
            for (const auto& v : node.vars) scope.unbind(v);
          } else if constexpr (std::is_same_v<T, Call>) {
            n.kind = Kind::kCall;
            auto it = def_index.find(node.name);
            if (it == def_index.end()) throw ContractError("unknown predicate '" + node.name + "'");
            n.def = it->second;
            for (const auto& t : node.args) n.args.push_back(lower(t, scope));
          }
        },
        f.node);
    return n;
  }

  const Lowered& definition(std::size_t index) {
    if (!defs[index]) {
      const Definition& d = *env.definition(env.definition_order()[index]);
      Scope scope;
      for (const auto& p : d.params) scope.bind(p);
      Lowered l;
      l.body = lower(*d.body, scope);
      l.frame = scope.next;
      defs[index] = std::move(l);
    }
    return *defs[index];
  }

  // -- evaluation --

  static std::int64_t value(const LTerm& t, const Frame& fr) {
    std::int64_t v = t.constant;
    for (const auto& [slot, c] : t.vars) v += c * fr.value[slot];
    return v;
  }

  static Symbol symbol_at(const std::pair<const sequences::Dfao*, std::vector<Symbol>*>& seq,
                          std::int64_t index) {
    auto& cache = *seq.second;
    const auto i = static_cast<std::size_t>(index);
    while (cache.size() <= i) cache.push_back(seq.first->eval(cache.size()));
    return cache[i];
  }

  static void conjuncts(const Node& n, std::vector<const Node*>& out) {
    if (n.kind == Kind::kBin && n.op == Connective::kAnd) {
      conjuncts(n.kids[0], out);
      conjuncts(n.kids[1], out);
    } else {
      out.push_back(&n);
    }
  }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  // Narrows [lo, hi] using atom `a*v + r rel 0`.
  static void narrow(Relation rel, std::int64_t a, std::int64_t r, std::int64_t& lo, std::int64_t& hi) {
    // a*v <= b
    auto at_most = [&](std::int64_t a2, std::int64_t b) {
      if (a2 > 0) hi = std::min(hi, floor_div(b, a2));
      else lo = std::max(lo, -floor_div(b, -a2));  // v >= ceil(b / a2) for a2 < 0
    };
    switch (rel) {
      case Relation::kEq:
        if (r % a != 0) {
          lo = 1, hi = 0;
        } else {
          lo = std::max(lo, -r / a);
          hi = std::min(hi, -r / a);
        }
        break;
      case Relation::kLe: at_most(a, -r); break;
      case Relation::kLt: at_most(a, -r - 1); break;
      case Relation::kGe: at_most(-a, r); break;
      case Relation::kGt: at_most(-a, r - 1); break;
      case Relation::kNe: break;
    }
  }

  void range(const Node& q, std::uint32_t slot, const Frame& fr, std::int64_t& lo, std::int64_t& hi) {
    lo = 0;
    hi = static_cast<std::int64_t>(bound);
    const Node& body = q.kids[0];
    const Node* guard = nullptr;
    if (!q.flag) guard = &body;
    else if (body.kind == Kind::kBin && body.op == Connective::kImplies) guard = &body.kids[0];
    if (!guard) return;
    std::vector<const Node*> atoms;
    conjuncts(*guard, atoms);
    for (const Node* n : atoms) {
      if (n->kind != Kind::kCmp) continue;
      std::int64_t a = 0, r = n->a.constant - n->b.constant;
      bool usable = true;
      auto scan = [&](const LTerm& t, std::int64_t sign) {
        for (const auto& [s, c] : t.vars) {
          if (s == slot) a += sign * c;
          else if (fr.set[s]) r += sign * c * fr.value[s];
          else usable = false;
        }
      };
      scan(n->a, 1);
      scan(n->b, -1);
      if (!usable || a == 0) continue;
      narrow(n->rel, a, r, lo, hi);
      if (lo > hi) return;
    }
  }

  bool quantify(const Node& q, std::size_t k, Frame& fr) {
    if (k == q.slots.size()) return eval(q.kids[0], fr);
    const std::uint32_t slot = q.slots[k];
    std::int64_t lo, hi;
    range(q, slot, fr, lo, hi);
    bool result = q.flag;
    fr.set[slot] = 1;
    for (std::int64_t x = lo; x <= hi; ++x) {
      fr.value[slot] = x;
      if (quantify(q, k + 1, fr) != q.flag) {
        result = !q.flag;
        break;
      }
    }
    fr.set[slot] = 0;
    return result;
  }

  bool eval(const Node& n, Frame& fr) {
    switch (n.kind) {
      case Kind::kConst: return n.flag;
      case Kind::kCmp: {
        const std::int64_t l = value(n.a, fr), r = value(n.b, fr);
        switch (n.rel) {
          case Relation::kEq: return l == r;
          case Relation::kNe: return l != r;
          case Relation::kLt: return l < r;
          case Relation::kLe: return l <= r;
          case Relation::kGt: return l > r;
          case Relation::kGe: return l >= r;
        }
        return false;
      }
      case Kind::kSeq: {
        const Symbol l = symbol_at(n.lhs_seq, value(n.a, fr));
        const Symbol r = n.rhs_seq.first ? symbol_at(n.rhs_seq, value(n.b, fr)) : n.symbol;
        return (l == r) == n.flag;
      }
      case Kind::kNot: return !eval(n.kids[0], fr);
      case Kind::kBin: {
        const bool l = eval(n.kids[0], fr);
        switch (n.op) {
          case Connective::kAnd: return l && eval(n.kids[1], fr);
          case Connective::kOr: return l || eval(n.kids[1], fr);
          case Connective::kImplies: return !l || eval(n.kids[1], fr);
          case Connective::kIff: return l == eval(n.kids[1], fr);
        }
        return false;
      }
      case Kind::kQuant: return quantify(n, 0, fr);
      case Kind::kCall: {
        std::vector<std::int64_t> args;
        args.reserve(n.args.size());
        for (const auto& t : n.args) args.push_back(value(t, fr));
        return call(n.def, args);
      }
    }
    return false;
  }

  bool call(std::size_t def, std::span<const std::int64_t> args) {
    std::vector<std::int64_t> key(args.begin(), args.end());
    if (auto it = memo[def].find(key); it != memo[def].end()) return it->second;
    const bool result = call_uncached(def, args);
    memo[def].emplace(std::move(key), result);
    return result;
  }

  bool call_uncached(std::size_t def, std::span<const std::int64_t> args) {
    const Lowered& l = definition(def);
    Frame fr{std::vector<std::int64_t>(l.frame, 0), std::vector<std::uint8_t>(l.frame, 0)};
    for (std::size_t i = 0; i < args.size(); ++i) {
      fr.value[i] = args[i];
      fr.set[i] = 1;
    }
    return eval(l.body, fr);
  }
};

BoundedEvaluator::BoundedEvaluator(const PredicateEnv& env, std::uint64_t bound)
    : impl_(std::make_unique<Impl>(env, bound)) {}
BoundedEvaluator::~BoundedEvaluator() = default;
BoundedEvaluator::BoundedEvaluator(BoundedEvaluator&&) noexcept = default;

bool BoundedEvaluator::operator()(const Formula& f, const std::map<std::string, std::uint64_t>& assignment) {
  Impl::Scope scope;
  for (const auto& [v, x] : assignment) scope.bind(v);
  const Impl::Node n = impl_->lower(f, scope);
  Impl::Frame fr{std::vector<std::int64_t>(scope.next, 0), std::vector<std::uint8_t>(scope.next, 0)};
  std::uint32_t slot = 0;
  for (const auto& [v, x] : assignment) {
    fr.value[slot] = static_cast<std::int64_t>(x);
    fr.set[slot++] = 1;
  }
  return impl_->eval(n, fr);
}

bool BoundedEvaluator::call(std::string_view definition, std::span<const std::uint64_t> args) {
  auto it = impl_->def_index.find(definition);
  if (it == impl_->def_index.end()) throw ContractError("unknown predicate '" + std::string(definition) + "'");
  const Definition& d = *impl_->env.definition(definition);
  if (d.params.size() != args.size()) throw ContractError("wrong number of arguments for '" + d.name + "'");
  std::vector<std::int64_t> values(args.begin(), args.end());
  return impl_->call(it->second, values);
}

bool evaluate_bounded(const Formula& f, const PredicateEnv& env,
                      const std::map<std::string, std::uint64_t>& assignment, std::uint64_t bound) {
  return BoundedEvaluator(env, bound)(f, assignment);
}

}  // namespace wordlogic::logic
