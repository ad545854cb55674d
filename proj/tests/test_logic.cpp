#include <doctest.h>

#include <set>
#include <sstream>

#include "oracle.hpp"
#include "wordlogic/error.hpp"
#include "wordlogic/logic.hpp"

using namespace wordlogic;
using namespace wordlogic::logic;
using automata::TrackDfa;

namespace {

std::uint32_t t_at(std::uint64_t n) { return __builtin_popcountll(n) & 1; }

oracle::Str t_factor(std::uint64_t m, std::uint64_t n) {
  oracle::Str w;
  for (std::uint64_t i = 0; i < n; ++i) w.push_back(t_at(m + i));
  return w;
}

std::vector<bool> beta(const oracle::Str& w) {
  std::vector<bool> bordered;
  for (std::size_t i = 0; i < w.size(); ++i) bordered.push_back(oracle::bordered(oracle::rotate(w, i)));
  return bordered;
}

PredicateEnv corpus_env() {
  PredicateEnv env = PredicateEnv::standard();
  env.add_corpus(WORDLOGIC_CORPUS_DIR);
  return env;
}

const PredicateEnv& corpus() {
  static const PredicateEnv env = corpus_env();
  return env;
}

PredicateEnv env_with(std::string_view program) {
  PredicateEnv env = PredicateEnv::standard();
  env.add_program(program);
  return env;
}

std::string tier(const Definition& d) {
  auto it = d.metadata.find("tier");
  return it == d.metadata.end() ? "" : it->second;
}

// Every tuple in [0, range]^k, lexicographically.
template <class F>
void for_each_tuple(std::size_t k, std::uint64_t range, F&& f) {
  std::vector<std::uint64_t> v(k, 0);
  while (true) {
    f(std::span<const std::uint64_t>(v));
    std::size_t i = k;
    while (i > 0 && v[i - 1] == range) v[--i] = 0;
    if (i == 0) return;
    ++v[i - 1];
  }
}

std::set<std::vector<std::uint64_t>> accepted_within(const TrackDfa& a, std::uint64_t range) {
  std::size_t bits = 0;
  while ((std::uint64_t{1} << bits) <= range) ++bits;
  std::set<std::vector<std::uint64_t>> out;
  for (auto& tuple : automata::enumerate(a, std::size_t(-1), bits)) {
    if (std::all_of(tuple.begin(), tuple.end(), [&](auto x) { return x <= range; })) out.insert(tuple);
  }
  return out;
}

}  // namespace

TEST_CASE("parse: accepted forms") {
  auto overlap = parse_formula("E i, p p>=1 & A j (j<=p) => T[i+j]=T[i+j+p]");
  CHECK(free_variables(*overlap).empty());
  CHECK(to_string(*overlap) == "(E i, p (p>=1 & (A j (j<=p => T[i+j]=T[i+j+p]))))");

  const PredicateEnv& env = corpus();
  auto bordered = parse_formula("E i (2i <= n & i >= 1 & isBorder(i,l,m,n))");
  CHECK_NOTHROW(check(*bordered, env));
  CHECK(free_variables(*bordered) == std::set<std::string>{"l", "m", "n"});

  // Precedence: ~ then & then | then => (right-assoc) then <=>.
  CHECK(to_string(*parse_formula("x=0 | y=0 & z=0")) == "(x=0 | (y=0 & z=0))");
  CHECK(to_string(*parse_formula("~x=0 & y=0")) == "(~(x=0) & y=0)");
  CHECK(to_string(*parse_formula("x=0 => y=0 => z=0")) == "(x=0 => (y=0 => z=0))");
  CHECK(to_string(*parse_formula("x=0 <=> y=0 | z=0")) == "(x=0 <=> (y=0 | z=0))");
  CHECK(to_string(*parse_formula("x=0 & E y y=x | x=1")) == "(x=0 & (E y (y=x | x=1)))");

  // Coefficient sugar and constant folding.
  CHECK(to_string(*parse_formula("2i <= n")) == "2*i<=n");
  CHECK(to_string(*parse_formula("2*i <= n")) == "2*i<=n");
  CHECK(to_string(*parse_formula("i+i <= n+1+2")) == "2*i<=n+3");
  CHECK(to_string(*parse_formula("C[2n+i] != 1")) == "C[i+2*n]!=1");

  auto defs = parse_program("# comment\n#@ tier: fast\n#@ note: a b\nP(x) := x = 1; Q() := true;\n");
  REQUIRE(defs.size() == 2);
  CHECK(defs[0].params == std::vector<std::string>{"x"});
  CHECK(defs[0].metadata.at("tier") == "fast");
  CHECK(defs[0].metadata.at("note") == "a b");
  CHECK(defs[1].metadata.empty());
}

TEST_CASE("parse: errors carry positions") {
  try {
    parse_formula("T[x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 1);
    CHECK(e.pos().column == 4);
  }
  try {
    parse_formula("x = 1 &\n  y - 1 = 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 2);
    CHECK(e.message().find("subtraction") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_formula("E x"), ParseError);
  CHECK_THROWS_AS(parse_formula("x = = 1"), ParseError);
  CHECK_THROWS_AS(parse_formula("T[x] = y"), ParseError);
  CHECK_THROWS_AS(parse_program("E(x) := x = 0;"), ParseError);
  CHECK_THROWS_AS(parse_program("P(x) := x = 0"), ParseError);

  PredicateEnv env = PredicateEnv::standard();
  CHECK_THROWS_AS(env.add_program("P(x) := y = 0;"), ParseError);       // unbound
  CHECK_THROWS_AS(env.add_program("P(x) := X[x] = 0;"), ParseError);    // unknown sequence
  CHECK_THROWS_AS(env.add_program("P(x) := Q(x);"), ParseError);        // unknown predicate
  CHECK_THROWS_AS(env.add_program("P(x) := E x x = 0;"), ParseError);   // rebinding
  CHECK_THROWS_AS(env.add_program("P(x, x) := x = 0;"), ParseError);
  CHECK_THROWS_AS(env.add_program("T(x) := x = 0;"), ParseError);       // clashes with a sequence
  env.add_program("P(x) := x = 0;");
  CHECK_THROWS_AS(env.add_program("P(y) := y = 1;"), ParseError);
  CHECK_THROWS_AS(env.add_program("R(x) := P(x, x);"), ParseError);     // arity
  CHECK_THROWS_AS(check(*parse_formula("E y E y y = 0"), env), ParseError);
  // Sibling scopes may reuse a name.
  CHECK_NOTHROW(check(*parse_formula("(E y y = 0) & (E y y = 1)"), env));
}

TEST_CASE("compile: examples") {
  const PredicateEnv env = PredicateEnv::standard();
  const TrackDfa sum = compile(parse_formula("x + y = z"), env);
  CHECK(sum.tracks() == std::vector<std::string>{"x", "y", "z"});
  CHECK(sum.accepts_values(std::vector<std::uint64_t>{1, 2, 3}));
  CHECK_FALSE(sum.accepts_values(std::vector<std::uint64_t>{1, 2, 4}));

  CHECK(decide_sentence(parse_formula("A x x+0 = x"), env));
  CHECK_FALSE(decide_sentence(parse_formula("E x x < x"), env));
  CHECK(decide_sentence(parse_formula("E x x = 5"), env));
  CHECK(decide_sentence(parse_formula("true"), env));
  CHECK_FALSE(decide_sentence(parse_formula("false"), env));
  CHECK_THROWS_AS(decide_sentence(parse_formula("x = 1"), env), ContractError);

  const TrackDfa overlap = compile(parse_formula("E i, p p>=1 & A j (j<=p) => T[i+j]=T[i+j+p]"), env);
  CHECK_FALSE(automata::decide(overlap).nonempty);
  const TrackDfa square = compile(parse_formula("E i, p p>=1 & A j (j<p) => C[i+j]=C[i+j+p]"), env);
  CHECK_FALSE(automata::decide(square).nonempty);
  CHECK(decide_sentence(parse_formula("A i, p (p >= 1) => E j (j < p & C[i+j] != C[i+j+p])"), env));

  // t has squares (t[0..6) = 011010 contains 1010) but c does not.
  const TrackDfa tsq = compile(parse_formula("p>=1 & A j (j<p) => T[i+j]=T[i+j+p]"), env);
  CHECK(tsq.accepts_values(std::vector<std::uint64_t>{2, 2}));
  CHECK_FALSE(tsq.accepts_values(std::vector<std::uint64_t>{0, 2}));

  // Unused free variables stay as tracks; x = x has one.
  const TrackDfa refl = compile(parse_formula("x = x & y >= 0"), env);
  CHECK(refl.tracks() == std::vector<std::string>{"x", "y"});
  CHECK(automata::equivalent(refl, automata::universal({"x", "y"})));
}

TEST_CASE("compile: state cap reports the subformula") {
  const PredicateEnv env = PredicateEnv::standard();
  automata::Limits tiny;
  tiny.state_cap = 8;
  try {
    compile(parse_formula("E i, p p>=1 & A j (j<p) => C[i+j]=C[i+j+p]"), env, tiny);
    FAIL("expected a resource error");
  } catch (const CompileResourceError& e) {
    CHECK(e.kind() == CapKind::kStateCap);
    CHECK(e.cap() == 8);
    CHECK_FALSE(e.subformula().empty());
    CHECK(std::string(e.what()).find(e.subformula()) != std::string::npos);
  }
}

TEST_CASE("property: linear atoms agree with arithmetic up to 256") {
  const PredicateEnv env = PredicateEnv::standard();
  const std::uint64_t range = 256;
  auto expect = [&](const char* text, std::size_t k, auto holds) {
    const TrackDfa a = compile(parse_formula(text), env);
    std::set<std::vector<std::uint64_t>> want;
    for_each_tuple(k, range, [&](std::span<const std::uint64_t> v) {
      if (holds(v)) want.emplace(v.begin(), v.end());
    });
    INFO(text);
    CHECK(accepted_within(a, range) == want);
  };
  expect("x + y = z", 3, [](auto v) { return v[0] + v[1] == v[2]; });
  expect("x < y", 2, [](auto v) { return v[0] < v[1]; });
  expect("x = 37", 1, [](auto v) { return v[0] == 37; });
  expect("x <= y", 2, [](auto v) { return v[0] <= v[1]; });
  expect("x != y", 2, [](auto v) { return v[0] != v[1]; });
  expect("3x + 5 > 2y", 2, [](auto v) { return 3 * v[0] + 5 > 2 * v[1]; });
  expect("x + 2y + 1 = 3z", 3, [](auto v) { return v[0] + 2 * v[1] + 1 == 3 * v[2]; });
  expect("x >= y + 7", 2, [](auto v) { return v[0] >= v[1] + 7; });
}

TEST_CASE("property: quantifier duality and De Morgan") {
  const PredicateEnv env = PredicateEnv::standard();
  const char* bodies[] = {
      "x < y + 3",
      "T[x] = T[y]",
      "C[x+y] != 2",
      "x + y = z & T[z] = 1",
      "T[x+1] = T[y] => C[x] = 0",
  };
  for (const char* body : bodies) {
    INFO(body);
    const std::string b(body);
    const TrackDfa all = compile(parse_formula("A x " + b), env);
    const TrackDfa dual = automata::negate(compile(parse_formula("E x ~(" + b + ")"), env));
    CHECK(automata::equivalent(all, automata::reorder_tracks(dual, all.tracks())));
    const TrackDfa conj = compile(parse_formula("~((" + b + ") & y = 4)"), env);
    const TrackDfa disj = compile(parse_formula("~(" + b + ") | ~(y = 4)"), env);
    CHECK(automata::equivalent(conj, disj));
  }
}

TEST_CASE("property: macro expansion is substitution") {
  const PredicateEnv env = env_with(
      "Succ(x, y) := E z (z = x + 1 & y = z);\n"
      "Eq3(a, b, c) := T[a] = T[b] & T[b] = C[c];\n"
      "Wrap(z) := E x Succ(x, z) & Eq3(z, x, x);\n");
  struct Case {
    const char* call;
    const char* by_hand;
  };
  const Case cases[] = {
      // The argument z would be captured by Succ's bound z.
      {"Succ(z, w)", "E u (u = z + 1 & w = u)"},
      {"Succ(w, w)", "E u (u = w + 1 & w = u)"},
      {"Succ(2x + 1, y)", "E u (u = 2x + 2 & y = u)"},
      {"Eq3(b, a, a)", "T[b] = T[a] & T[a] = C[a]"},
      {"Eq3(x+1, x, 3)", "T[x+1] = T[x] & T[x] = C[3]"},
      {"Wrap(x)", "E v (E u (u = v + 1 & x = u)) & T[x] = T[v] & T[v] = C[v]"},
      {"E q Succ(q, q+1)", "true"},
  };
  for (const auto& c : cases) {
    INFO(c.call);
    auto call = parse_formula(c.call);
    const TrackDfa direct = compile(call, env);
    const TrackDfa expanded = compile(expand(call, env), env);
    const TrackDfa hand = compile(parse_formula(c.by_hand), env);
    CHECK(automata::equivalent(direct, automata::reorder_tracks(expanded, direct.tracks())));
    CHECK(automata::equivalent(direct, automata::reorder_tracks(hand, direct.tracks())));
  }
  CHECK(free_variables(*expand(parse_formula("Succ(z, w)"), env)) == std::set<std::string>{"w", "z"});
}

TEST_CASE("bounded evaluation") {
  const PredicateEnv env = PredicateEnv::standard();
  CHECK(evaluate_bounded(*parse_formula("E y y = x + 3"), env, {{"x", 4}}, 10));
  CHECK_FALSE(evaluate_bounded(*parse_formula("E y y = x + 3"), env, {{"x", 8}}, 10));
  CHECK(evaluate_bounded(*parse_formula("A y (y < x) => T[y] = T[y]"), env, {{"x", 4}}, 0));
  CHECK(evaluate_bounded(*parse_formula("E i (2i <= n & 3i >= n)"), env, {{"n", 5}}, 100));
  CHECK_FALSE(evaluate_bounded(*parse_formula("E i (2i <= n & 3i >= n + 2)"), env, {{"n", 5}}, 100));
  CHECK(evaluate_bounded(*parse_formula("C[x] = 2 & C[x+1] = 1"), env, {{"x", 0}}, 0));
  CHECK_THROWS_AS(evaluate_bounded(*parse_formula("x = y"), env, {{"x", 0}}, 0), ContractError);
  // Narrowing the quantifier ranges must not change the bounded semantics.
  auto e_form = parse_formula("E i (3i + 1 >= n & 2i < n + 4 & i != 7 & T[i] = 1)");
  auto a_form = parse_formula("A i (i + 2 > n & 2i <= n + 6 & 5 >= i) => T[i] = 0");
  for (std::uint64_t n = 0; n < 24; ++n) {
    bool some = false, every = true;
    for (std::uint64_t i = 0; i <= 30; ++i) {
      some |= 3 * i + 1 >= n && 2 * i < n + 4 && i != 7 && t_at(i) == 1;
      if (i + 2 > n && 2 * i <= n + 6 && 5 >= i) every &= t_at(i) == 0;
    }
    CHECK(evaluate_bounded(*e_form, env, {{"n", n}}, 30) == some);
    CHECK(evaluate_bounded(*a_form, env, {{"n", n}}, 30) == every);
  }
}

namespace {

// Cyclic bordered/unbordered pattern checks mirroring the alternation
// predicates.
bool alternates_except(const std::vector<bool>& b, std::initializer_list<std::size_t> skip) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
    if (b[k] == b[(k + 1) % n]) return false;
  }
  return true;
}

bool odd_shape(const std::vector<bool>& b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i] && b[(i + 1) % n] && alternates_except(b, {i})) return true;
  }
  return false;
}

bool even_shape(const std::vector<bool>& b) {
  const std::size_t n = b.size();
  if (alternates_except(b, {})) return true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (b[i] && b[i + 1] && b[j] && b[(j + 1) % n] && alternates_except(b, {i, j})) return true;
    }
  }
  return false;
}

std::vector<std::uint32_t> c_prefix(std::size_t len) {
  std::vector<std::uint32_t> out;
  std::uint32_t ones = 0;
  bool seen = false;
  for (std::uint64_t i = 0; out.size() < len; ++i) {
    if (t_at(i) == 0) {
      if (seen) out.push_back(ones);
      seen = true;
      ones = 0;
    } else {
      ++ones;
    }
  }
  return out;
}

std::uint64_t guarded_range(const Definition& d) {
  return tier(d) == "fast" ? 64 : 20;
}

}  // namespace

TEST_CASE("corpus: sentences decide as recorded") {
  const PredicateEnv& env = corpus();
  Compiler compiler(env);
  std::size_t checked = 0;
  for (const auto& name : env.definition_order()) {
    const Definition& d = *env.definition(name);
    auto expect = d.metadata.find("expect");
    if (expect == d.metadata.end() || tier(d) != "fast") continue;
    INFO(name);
    REQUIRE(d.params.empty());
    const TrackDfa& a = compiler.definition(name);
    CHECK(a.accepting(a.initial()) == (expect->second == "true"));
    ++checked;
  }
  CHECK(checked == 7);
}

TEST_CASE("property: corpus predicates with at most 3 variables match their semantics") {
  // Fast-tier predicates over [0, 64]^k; stretch-tier ones over a smaller
  // box since their direct evaluation is cubic or worse per tuple.
  const PredicateEnv& env = corpus();
  Compiler compiler(env);
  BoundedEvaluator eval(env, 512);
  std::size_t checked = 0;
  for (const auto& name : env.definition_order()) {
    const Definition& d = *env.definition(name);
    if (d.params.empty() || d.params.size() > 3 || tier(d) == "reference") continue;
    if (d.metadata.count("oracle")) continue;
    INFO(name);
    const TrackDfa& a = compiler.definition(name);
    REQUIRE(a.tracks() == d.params);
    std::size_t mismatches = 0;
    for_each_tuple(d.params.size(), guarded_range(d), [&](std::span<const std::uint64_t> v) {
      if (a.accepts_values(v) != eval.call(name, v) && mismatches++ < 5) {
        std::string tuple;
        for (auto x : v) tuple += std::to_string(x) + " ";
        FAIL_CHECK("mismatch at " << tuple);
      }
    });
    CHECK(mismatches == 0);
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("corpus: border predicates against words over t") {
  const PredicateEnv& env = corpus();
  Compiler compiler(env);
  const TrackDfa& bordered = compiler.definition("isBordered");
  const TrackDfa& odd = compiler.definition("hasMNUCO");
  const TrackDfa& even = compiler.definition("hasMNUCE");
  const TrackDfa& tb = compiler.definition("tm_bordered");
  for (std::uint64_t m = 0; m <= 64; ++m) {
    for (std::uint64_t n = 0; n <= 64; ++n) {
      const oracle::Str w = t_factor(m, n);
      const std::vector<bool> b = beta(w);
      for (std::uint64_t l = 0; l < n; ++l) {
        REQUIRE(bordered.accepts_values(std::vector<std::uint64_t>{l, m, n}) == b[l]);
      }
      REQUIRE(tb.accepts_values(std::vector<std::uint64_t>{m, n}) == oracle::bordered(w));
      const bool has_odd = odd.accepts_values(std::vector<std::uint64_t>{m, n});
      const bool has_even = even.accepts_values(std::vector<std::uint64_t>{m, n});
      REQUIRE(has_odd == odd_shape(b));
      REQUIRE(has_even == even_shape(b));
      // Without two adjacent unbordered shifts the shapes pin down nuc. The
      // classes of 0^(n-1)1 and 01^(n-1) do have such a pair.
      bool uu = false;
      for (std::size_t k = 0; k < n; ++k) uu |= !b[k] && !b[(k + 1) % n];
      const std::size_t nuc = oracle::nuc(w);
      if (!uu && n >= 5 && n % 2 == 1) REQUIRE(has_odd == (nuc == n / 2));
      if (!uu && n >= 4 && n % 2 == 0) REQUIRE(has_even == (nuc + 1 >= n / 2));
    }
  }
}

TEST_CASE("corpus: the x021 square test against the built word") {
  const PredicateEnv& env = corpus();
  Compiler compiler(env);
  BoundedEvaluator eval(env, 64);
  const auto c = c_prefix(64);
  for (int form = 1; form <= 2; ++form) {
    const std::string sq = "sq" + std::to_string(form);
    const TrackDfa& a = compiler.definition(sq);
    const std::vector<std::uint32_t> tail = form == 1 ? std::vector<std::uint32_t>{0, 2, 1}
                                                      : std::vector<std::uint32_t>{2, 1, 2, 0};
    for (std::uint64_t n = 4; n <= 14; ++n) {
      for (std::uint64_t s = 0; s <= 12; ++s) {
        // w' = w w[0..n-1) with w = c[s..s+n-|tail|) tail.
        std::vector<std::uint32_t> w(c.begin() + s, c.begin() + s + (n - tail.size()));
        w.insert(w.end(), tail.begin(), tail.end());
        std::vector<std::uint32_t> wp = w;
        wp.insert(wp.end(), w.begin(), w.end() - 1);
        for (std::uint64_t p = 1; 2 * p <= n; ++p) {
          for (std::uint64_t i = s; i < s + n; ++i) {
            bool square = true;
            for (std::uint64_t j = 0; j < p; ++j) square &= wp[i - s + j] == wp[i - s + j + p];
            const std::vector<std::uint64_t> args{i, n, p, s};
            INFO(sq << " i=" << i << " n=" << n << " p=" << p << " s=" << s);
            REQUIRE(a.accepts_values(args) == square);
            REQUIRE(eval.call(sq + "_table", args) == square);
          }
        }
      }
    }
  }
}

TEST_CASE("corpus: currie rejects exactly the recorded lengths") {
  const PredicateEnv& env = corpus();
  Compiler compiler(env);
  const Definition& d = *env.definition("currie");
  std::set<std::uint64_t> recorded;
  std::istringstream in(d.metadata.at("rejects"));
  for (std::uint64_t x; in >> x;) recorded.insert(x);
  // Corollary list plus 21 and 28, where neither form works.
  CHECK(recorded == std::set<std::uint64_t>{0, 1, 2, 3, 5, 7, 9, 10, 14, 17, 21, 28});
  const TrackDfa& a = compiler.definition("currie");
  const auto accepted = automata::accepted_values_upto(a, 2048);
  std::set<std::uint64_t> rejected;
  for (std::uint64_t n = 0, k = 0; n <= 2048; ++n) {
    if (k < accepted.size() && accepted[k] == n) ++k;
    else rejected.insert(n);
  }
  CHECK(rejected == recorded);
}
