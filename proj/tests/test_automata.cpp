#include <doctest.h>

#include <random>
#include <sstream>

#include "wordlogic/automata.hpp"
#include "wordlogic/error.hpp"

using namespace wordlogic;
using namespace wordlogic::automata;

namespace {

// Hand-built single-track automata, independent of the constraint builder.
TrackDfa residue(const std::string& var, unsigned mod, unsigned r) {
  std::vector<StateId> t;
  std::vector<std::uint8_t> acc;
  for (unsigned q = 0; q < mod; ++q) {
    t.push_back((2 * q) % mod);
    t.push_back((2 * q + 1) % mod);
    acc.push_back(q == r);
  }
  return TrackDfa({var}, t, acc);
}

TrackDfa even(const std::string& var = "x") { return residue(var, 2, 0); }
TrackDfa mult3(const std::string& var = "x") { return residue(var, 3, 0); }

TrackDfa linear(std::vector<std::string> tracks, std::vector<std::int64_t> coeffs,
                LinearRelation rel, std::int64_t c) {
  return linear_constraint(std::move(tracks), coeffs, rel, c);
}

std::vector<std::uint64_t> values(const TrackDfa& a, std::uint64_t bound) {
  return accepted_values_upto(a, bound);
}

// Random DFA whose initial state loops on the all-zero letter, which makes
// it padding-closed.
TrackDfa random_padded(std::mt19937& rng, std::vector<std::string> tracks, unsigned states) {
  const std::size_t letters = std::size_t{1} << tracks.size();
  std::uniform_int_distribution<unsigned> pick(0, states - 1);
  std::vector<StateId> t(states * letters);
  std::vector<std::uint8_t> acc(states);
  for (auto& x : t) x = pick(rng);
  t[0] = 0;
  for (auto& a : acc) a = rng() & 1;
  return TrackDfa(std::move(tracks), std::move(t), std::move(acc));
}

std::vector<Letter> random_word(std::mt19937& rng, std::size_t tracks, std::size_t len) {
  std::vector<Letter> w(len);
  for (auto& x : w) x = rng() & ((1u << tracks) - 1);
  return w;
}

}  // namespace

TEST_CASE("encoding") {
  const std::vector<std::uint64_t> v{5, 2};
  auto w = encode(v);
  CHECK(w == std::vector<Letter>{2, 1, 2});  // (1,0) (0,1) (1,0)
  CHECK(decode(w, 2) == v);
  CHECK(encode(std::vector<std::uint64_t>{0, 0}).empty());
  CHECK(encode(v, 5).size() == 5);
  CHECK_THROWS_AS(encode(v, 2), ContractError);
}

TEST_CASE("combine") {
  const auto a = mult3();
  CHECK(equivalent(combine(a, a, BoolOp::kAnd), a));
  const auto six = combine(even(), mult3(), BoolOp::kAnd);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t v = 0; v <= 100; v += 6) expected.push_back(v);
  CHECK(values(six, 100) == expected);
  const auto all = minimize(combine(a, negate(a), BoolOp::kOr));
  CHECK(all.num_states() == 1);
  CHECK(all.accepting(0));

  // Tracks align by name; b's extra track is appended.
  const auto xy = combine(even("x"), mult3("y"), BoolOp::kAnd);
  CHECK(xy.tracks() == std::vector<std::string>{"x", "y"});
  CHECK(xy.accepts_values(std::vector<std::uint64_t>{4, 9}));
  CHECK_FALSE(xy.accepts_values(std::vector<std::uint64_t>{4, 8}));
  CHECK(combine(even(), mult3(), BoolOp::kImplies).accepts_values(std::vector<std::uint64_t>{3}));
  CHECK(combine(even(), mult3(), BoolOp::kIff).accepts_values(std::vector<std::uint64_t>{5}));
}

TEST_CASE("negate") {
  const auto a = mult3();
  CHECK(equivalent(negate(negate(a)), a));
  CHECK(equivalent(negate(empty_language({"x"})), universal({"x"})));
  std::vector<std::uint64_t> odd;
  for (std::uint64_t v = 1; v <= 50; v += 2) odd.push_back(v);
  CHECK(values(negate(even()), 50) == odd);
}

TEST_CASE("project") {
  // exists y: x + y = z  is  x <= z
  const auto sum = linear({"x", "y", "z"}, {1, 1, -1}, LinearRelation::kEq, 0);
  const auto le = linear({"x", "z"}, {1, -1}, LinearRelation::kLe, 0);
  CHECK(equivalent(project(sum, "y"), le));
  // exists y: x = 2y  is  x even
  const auto twice = linear({"x", "y"}, {1, -2}, LinearRelation::kEq, 0);
  std::vector<std::uint64_t> evens;
  for (std::uint64_t v = 0; v <= 100; v += 2) evens.push_back(v);
  CHECK(values(project(twice, "y"), 100) == evens);
  CHECK(project(mult3(), "q") == mult3());
  // The erased value may need more digits than the rest: exists y: y = x + 8.
  const auto shift = linear({"y", "x"}, {1, -1}, LinearRelation::kEq, 8);
  CHECK(minimize(project(shift, "y")).num_states() == 1);
  CHECK(project(shift, "y").accepting(0));
}

TEST_CASE("project respects the state cap") {
  std::mt19937 rng(7);
  const auto a = random_padded(rng, {"x", "y"}, 60);
  Limits tiny;
  tiny.state_cap = 2;
  CHECK_THROWS_AS(project(a, "y", tiny), ResourceError);
  try {
    project(a, "y", tiny);
  } catch (const ResourceError& e) {
    CHECK(e.kind() == CapKind::kStateCap);
    CHECK(e.cap() == 2);
  }
}

TEST_CASE("minimize") {
  CHECK(minimize(universal({"x", "y"})).num_states() == 1);
  const auto a = mult3();
  CHECK(minimize(a) == a);
  CHECK(minimize(combine(a, a, BoolOp::kOr)).num_states() == minimize(a).num_states());
  // x = 0 mod 6: residues 1,4 and 2,5 have the same futures, so 4 classes.
  CHECK(minimize(residue("x", 6, 0)).num_states() == 4);
  // unreachable and duplicate states disappear
  TrackDfa redundant({"x"}, {0, 1, 2, 1, 1, 2}, {0, 1, 1});
  CHECK(minimize(redundant).num_states() == 2);
}

TEST_CASE("decide and enumerate") {
  CHECK_FALSE(decide(empty_language({"x"})).nonempty);
  auto d = decide(linear({"x", "y"}, {1, 1}, LinearRelation::kEq, 5));
  CHECK(d.nonempty);
  // Two digits suffice; the least such word is (1,1)(0,1), i.e. x = 2, y = 3.
  CHECK(d.witness == std::vector<std::uint64_t>{2, 3});
  auto five = enumerate(mult3(), 5);
  std::vector<std::vector<std::uint64_t>> expected{{0}, {3}, {6}, {9}, {12}};
  CHECK(five == expected);
  auto zero_track = decide(universal({}));
  CHECK(zero_track.nonempty);
  CHECK(zero_track.witness.empty());
  CHECK(enumerate(universal({}), 10).size() == 1);
}

TEST_CASE("counting by bit length") {
  for (std::size_t n = 1; n <= 20; ++n) CHECK(count_by_bitlength(universal({"x"}), n) == (1ull << (n - 1)));
  CHECK(count_by_bitlength(universal({"x"}), 0) == 1);
  CHECK(count_by_bitlength(even(), 4) == 4);
  CHECK(count_by_bitlength(universal({"x"}), 64) == (1ull << 63));
  CHECK_THROWS_AS(count_by_bitlength(universal({"x", "y"}), 3), ContractError);
}

TEST_CASE("equivalence") {
  const auto a = combine(even(), mult3(), BoolOp::kOr);
  CHECK(equivalent(a, minimize(a)));
  CHECK_FALSE(equivalent(even(), negate(even())));
  const auto xy = linear({"x", "y"}, {1, -1}, LinearRelation::kLe, 0);
  const auto yx = linear({"y", "x"}, {-1, 1}, LinearRelation::kLe, 0);
  CHECK(equivalent(xy, yx));
}

TEST_CASE("text exchange format") {
  const std::string golden =
      "msd_2 x\n"
      "q0 1\nt0 -> q0\nt1 -> q1\n"
      "q1 0\nt0 -> q2\nt1 -> q0\n"
      "q2 0\nt0 -> q1\nt1 -> q2\n";
  CHECK(to_text(mult3()) == golden);
  std::istringstream in(golden);
  CHECK(read_text(in) == mult3());
  const auto sum = linear({"x", "y", "z"}, {1, 1, -1}, LinearRelation::kEq, 0);
  std::istringstream again(to_text(sum));
  CHECK(read_text(again) == sum);
  std::istringstream broken("msd_2 x\nq0 1\nt0 -> q0\n");
  CHECK_THROWS_AS(read_text(broken), ParseError);
  std::ostringstream dot;
  write_dot(dot, mult3());
  CHECK(dot.str().find("doublecircle") != std::string::npos);
}

TEST_CASE("sequence atoms") {
  const auto t = sequences::thue_morse_dfao();
  const auto c = sequences::ternary_thue_morse_dfao();
  const auto t0 = sequence_constant(t, "n", 0, true);
  for (std::uint64_t n = 0; n < 300; ++n) {
    REQUIRE(t0.accepts_values(std::vector<std::uint64_t>{n}) == (t.eval(n) == 0));
  }
  const auto eq = sequence_compare(c, "i", c, "j", true);
  for (std::uint64_t i = 0; i < 40; ++i) {
    for (std::uint64_t j = 0; j < 40; ++j) {
      REQUIRE(eq.accepts_values(std::vector<std::uint64_t>{i, j}) == (c.eval(i) == c.eval(j)));
    }
  }
  const auto same = sequence_compare(t, "i", t, "i", false);
  CHECK(same.num_tracks() == 1);
  CHECK_FALSE(decide(same).nonempty);
}

TEST_CASE("linear atoms agree with arithmetic up to 256") {
  const auto sum = linear({"x", "y", "z"}, {1, 1, -1}, LinearRelation::kEq, 0);
  CHECK(sum.accepts_values(std::vector<std::uint64_t>{1, 2, 3}));
  CHECK_FALSE(sum.accepts_values(std::vector<std::uint64_t>{1, 2, 4}));
  const auto lt = linear({"x", "y"}, {1, -1}, LinearRelation::kLe, -1);
  const auto five = linear({"x"}, {1}, LinearRelation::kEq, 5);
  for (std::uint64_t x = 0; x <= 256; ++x) {
    REQUIRE(five.accepts_values(std::vector<std::uint64_t>{x}) == (x == 5));
    for (std::uint64_t y = 0; y <= 256; ++y) {
      REQUIRE(lt.accepts_values(std::vector<std::uint64_t>{x, y}) == (x < y));
      for (std::uint64_t z = 0; z <= 256; z += 1) {
        if (sum.accepts_values(std::vector<std::uint64_t>{x, y, z}) != (x + y == z)) {
          FAIL("x+y=z mismatch at " << x << "," << y << "," << z);
        }
      }
    }
  }
  // Larger coefficients and constants.
  const auto mix = linear({"a", "b"}, {3, -2}, LinearRelation::kLe, 7);
  for (std::int64_t a = 0; a <= 64; ++a) {
    for (std::int64_t b = 0; b <= 64; ++b) {
      REQUIRE(mix.accepts_values(std::vector<std::uint64_t>{std::uint64_t(a), std::uint64_t(b)}) ==
              (3 * a - 2 * b <= 7));
    }
  }
}

TEST_CASE("property: padding closure after every operation") {
  std::mt19937 rng(12345);
  for (int round = 0; round < 40; ++round) {
    const auto a = random_padded(rng, {"x", "y"}, 2 + round % 5);
    const auto b = random_padded(rng, {"y", "z"}, 2 + round % 4);
    std::vector<TrackDfa> results{combine(a, b, BoolOp::kAnd), combine(a, b, BoolOp::kOr),
                                  combine(a, b, BoolOp::kImplies), combine(a, b, BoolOp::kIff),
                                  negate(a), project(a, "y"), project(combine(a, b, BoolOp::kAnd), "y"),
                                  minimize(a)};
    for (const auto& r : results) {
      REQUIRE(is_padding_closed(r));
      for (int sample = 0; sample < 50; ++sample) {
        auto w = random_word(rng, r.num_tracks(), rng() % 13);
        auto padded = w;
        padded.insert(padded.begin(), 0);
        REQUIRE(r.accepts(w) == r.accepts(padded));
      }
    }
  }
  CHECK(is_padding_closed(linear({"x", "y"}, {2, -3}, LinearRelation::kLe, 4)));
  CHECK_FALSE(is_padding_closed(TrackDfa({"x"}, {1, 1, 1, 1}, {1, 0})));
}

TEST_CASE("property: determinization agrees with the erased-track NFA") {
  // Oracle: a word w over the remaining tracks is accepted iff for some
  // padding 0^k w and some digit string for the erased track the original
  // accepts; k up to the state count suffices by pumping.
  std::mt19937 rng(99);
  for (int round = 0; round < 30; ++round) {
    const unsigned states = 2 + round % 5;
    const auto a = random_padded(rng, {"x", "y", "z"}, states);
    const std::string erased = round % 3 == 0 ? "x" : round % 3 == 1 ? "y" : "z";
    const std::size_t pos = *a.track_index(erased);
    const auto p = project(a, erased);
    for (std::size_t len = 0; len <= 4; ++len) {
      for (Letter code = 0; code < (1u << (2 * len)); ++code) {
        std::vector<Letter> w(len);
        for (std::size_t i = 0; i < len; ++i) w[i] = (code >> (2 * i)) & 3;
        bool expected = false;
        for (std::size_t k = 0; k <= states && !expected; ++k) {
          const std::size_t total = len + k;
          for (std::uint64_t digits = 0; digits < (1ull << total) && !expected; ++digits) {
            std::vector<Letter> full(total);
            for (std::size_t i = 0; i < total; ++i) {
              const Letter rest = i < k ? 0 : w[i - k];
              Letter letter = 0;
              for (std::size_t t = 0, r = 0; t < 3; ++t) {
                const Letter bit = t == pos ? (digits >> i) & 1 : (rest >> (1 - r++)) & 1;
                letter = (letter << 1) | bit;
              }
              full[i] = letter;
            }
            expected = a.accepts(full);
          }
        }
        REQUIRE(p.accepts(w) == expected);
      }
    }
  }
}

TEST_CASE("property: De Morgan and minimization soundness") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 30; ++round) {
    const auto a = random_padded(rng, {"x", "y"}, 3 + round % 6);
    const auto b = random_padded(rng, {"x"}, 2 + round % 3);
    CHECK(equivalent(negate(combine(a, b, BoolOp::kAnd)),
                     combine(negate(a), negate(b), BoolOp::kOr)));
    CHECK(equivalent(a, minimize(a)));
    CHECK(minimize(minimize(a)) == minimize(a));
  }
}

TEST_CASE("property: bit-length counts match enumeration") {
  std::mt19937 rng(31337);
  std::vector<TrackDfa> cases{even(), mult3(), residue("x", 5, 2), universal({"x"}),
                              negate(mult3())};
  for (int round = 0; round < 20; ++round) cases.push_back(random_padded(rng, {"x"}, 2 + round % 7));
  for (const auto& a : cases) {
    std::vector<std::uint64_t> per_length(13, 0);
    for (auto& tuple : enumerate(a, SIZE_MAX, 12)) {
      std::size_t bits = 0;
      for (auto v = tuple[0]; v > 0; v >>= 1) ++bits;
      ++per_length[bits];
    }
    for (std::size_t n = 0; n <= 12; ++n) REQUIRE(count_by_bitlength(a, n) == per_length[n]);
  }
}
