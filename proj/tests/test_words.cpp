#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "wordlogic/error.hpp"
#include "wordlogic/words.hpp"

using namespace wordlogic;
using namespace wordlogic::words;

namespace {

Word W(const char* s) { return Word::parse(s); }

}  // namespace

TEST_CASE("parse and print") {
  CHECK(W("0021").to_string() == "0021");
  CHECK(W("0021").alphabet_size() == 3);
  CHECK(W("alfalfa").to_letters() == "alfalfa");
  CHECK(W("alfalfa").alphabet_size() == 26);
  CHECK(W("3,11,0").to_string() == "3,11,0");
  CHECK(W("").empty());
  CHECK_THROWS_AS(Word({0, 3}, 3), ContractError);
  CHECK_THROWS_AS(Word::parse("012", 2), ContractError);
}

TEST_CASE("conjugate") {
  CHECK(conjugate(W("enlist"), 2).to_letters() == "listen");
  CHECK(conjugate(W(""), 5).empty());
  CHECK(conjugate(W("0001"), 1) == W("0010"));
  CHECK(conjugate(W("0001"), 4) == W("0001"));
  CHECK(conjugate(W("0001"), 6) == W("0100"));
}

TEST_CASE("border profile") {
  auto p = border_profile(W("alfalfa"));
  CHECK(p.borders == std::vector<std::size_t>{1, 4});
  CHECK(p.is_bordered);
  CHECK(p.shortest == 1u);
  CHECK_FALSE(border_profile(W("0001")).is_bordered);
  CHECK_FALSE(border_profile(W("0")).is_bordered);
  CHECK_FALSE(border_profile(W("")).is_bordered);
  CHECK(border_profile(W("aaaa")).borders == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("nuc and border correlation") {
  CHECK(nuc(W("0001")) == 2);
  CHECK(nuc(W("0000")) == 0);
  CHECK(nuc(W("011011")) == 0);
  CHECK(oracle::nuc(oracle::from_string("011011")) == 0);
  CHECK(border_correlation(W("0001")) == "ubbu");
  // Oracle value for 0011, computed shift by shift: 0011 u, 0110 b, 1100 u, 1001 b.
  CHECK(border_correlation(W("0011")) == "ubub");
  CHECK(border_correlation(W("1111")) == "bbbb");
  CHECK_THROWS_AS(nuc(W("")), ContractError);
  CHECK_THROWS_AS(border_correlation(W("")), ContractError);
}

TEST_CASE("square check") {
  auto sq = square_check(W("couscous"), false);
  REQUIRE(sq);
  CHECK(sq->start == 0);
  CHECK(sq->period == 4);
  CHECK_FALSE(square_check(W("outshout"), false));
  auto circ = square_check(W("outshout"), true);
  REQUIRE(circ);
  CHECK(circ->circular);
  CHECK_FALSE(square_check(W("2021"), true));
  CHECK(oracle::circularly_squarefree(oracle::from_string("2021")));
  CHECK_FALSE(square_check(W(""), true));
  CHECK(square_check(W("00"), false) == SquareWitness{0, 1, false});
  // Circular squares must have 2p <= n: "01" has conjugate "10", no square.
  CHECK_FALSE(square_check(W("01"), true));
  CHECK(square_check(W("010"), true));
}

TEST_CASE("overlap check") {
  CHECK_FALSE(overlap_check(W("01101001"), false));
  CHECK(overlap_check(W("000"), false) == OverlapWitness{0, 1, false});
  CHECK(overlap_check(W("001100"), true));
  CHECK_FALSE(overlap_check(W("001100"), false));
  CHECK(overlap_check(W("01010"), false) == OverlapWitness{0, 2, false});
}

TEST_CASE("primitivity") {
  CHECK_FALSE(is_primitive(W("0101")));
  CHECK(is_primitive(W("enlist")));
  CHECK(is_primitive(W("0")));
  CHECK_FALSE(is_primitive(W("000")));
  CHECK(is_primitive(W("0010")));
  CHECK_THROWS_AS(is_primitive(W("")), ContractError);
}

TEST_CASE("necklaces") {
  std::vector<std::string> seen;
  for_each_necklace(2, 4, [&](std::span<const Symbol> s) {
    seen.push_back(Word(std::vector<Symbol>(s.begin(), s.end()), 2).to_string());
  });
  CHECK(seen == std::vector<std::string>{"0000", "0001", "0011", "0101", "0111", "1111"});
  CHECK(least_conjugate(W("1010")) == W("0101"));
  CHECK(least_conjugate(W("2021")) == W("0212"));
  // Necklace counts of length 6 over 3 letters: (1/6) sum phi(d) 3^(6/d) = 130.
  std::size_t count = 0;
  for_each_necklace(3, 6, [&](std::span<const Symbol>) { ++count; });
  CHECK(count == 130);
}

TEST_CASE("mnuc exhaustive") {
  auto r4 = mnuc_exhaustive(2, 4);
  CHECK(r4.value == 2);
  CHECK(std::count(r4.witnesses.begin(), r4.witnesses.end(), W("0011")) == 1);
  auto r3 = mnuc_exhaustive(2, 3);
  CHECK(r3.value == 2);
  CHECK(std::count(r3.witnesses.begin(), r3.witnesses.end(), W("011")) == 1);
  CHECK(mnuc_exhaustive(2, 10).value == 4);
  CHECK(mnuc_exhaustive(2, 1).value == 1);

  MnucOptions parallel;
  parallel.jobs = 4;
  auto a = mnuc_exhaustive(2, 14);
  auto b = mnuc_exhaustive(2, 14, parallel);
  CHECK(a.value == b.value);
  CHECK(a.witnesses == b.witnesses);
  CHECK(a.necklaces == b.necklaces);

  MnucOptions tiny;
  tiny.budget = 1000;
  CHECK_THROWS_AS(mnuc_exhaustive(2, 10, tiny), ResourceError);
}

TEST_CASE("mnuc agrees with a naive maximum") {
  for (std::size_t n = 1; n <= 10; ++n) {
    std::size_t best = 0;
    oracle::for_each_word(2, n, [&](const oracle::Str& w) { best = std::max(best, oracle::nuc(w)); });
    CHECK(mnuc_exhaustive(2, n).value == best);
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t best = 0;
    oracle::for_each_word(3, n, [&](const oracle::Str& w) { best = std::max(best, oracle::nuc(w)); });
    CHECK(mnuc_exhaustive(3, n).value == best);
  }
}

TEST_CASE("property: circularly squarefree iff every shift unbordered") {
  // Both directions, all words up to length 14 over two and three letters.
  auto check_all = [](unsigned k, std::size_t max_n) {
    std::size_t mismatches = 0;
    for (std::size_t n = 1; n <= max_n; ++n) {
      oracle::for_each_word(k, n, [&](const oracle::Str& s) {
        const Word w(s, k);
        const bool csf = !square_check(w, true);
        const bool all_unbordered = nuc(w) == n;
        mismatches += csf != all_unbordered;
      });
    }
    return mismatches;
  };
  CHECK(check_all(2, 14) == 0);
  CHECK(check_all(3, 14) == 0);
}

TEST_CASE("property: circular square check matches the conjugate oracle") {
  for (std::size_t n = 0; n <= 9; ++n) {
    oracle::for_each_word(3, n, [&](const oracle::Str& s) {
      const Word w(s, 3);
      CHECK(static_cast<bool>(square_check(w, true)) == !oracle::circularly_squarefree(s));
      CHECK(static_cast<bool>(square_check(w, false)) == oracle::contains_square(s));
      if (!oracle::contains_square(s)) {
        CHECK(squarefree_word_is_circularly_squarefree(w.symbols()) ==
              oracle::circularly_squarefree(s));
      }
    });
  }
}

TEST_CASE("property: overlap check matches the oracle") {
  for (std::size_t n = 0; n <= 12; ++n) {
    oracle::for_each_word(2, n, [&](const oracle::Str& s) {
      const Word w(s, 2);
      CHECK(static_cast<bool>(overlap_check(w, false)) == oracle::contains_overlap(s));
      CHECK(static_cast<bool>(overlap_check(w, true)) == !oracle::circularly_overlap_free(s));
    });
  }
}

TEST_CASE("property: nuc is a conjugacy invariant") {
  auto check = [](unsigned k, std::size_t max_n) {
    std::size_t bad = 0;
    for (std::size_t n = 1; n <= max_n; ++n) {
      oracle::for_each_word(k, n, [&](const oracle::Str& s) {
        const Word w(s, k);
        const std::size_t base = nuc(w);
        for (std::size_t i = 1; i < n; ++i) bad += nuc(conjugate(w, i)) != base;
      });
    }
    return bad;
  };
  CHECK(check(2, 12) == 0);
  CHECK(check(3, 12) == 0);
}

TEST_CASE("property: border profile matches brute force") {
  for (std::size_t n = 0; n <= 12; ++n) {
    oracle::for_each_word(2, n, [&](const oracle::Str& s) {
      const auto p = border_profile(Word(s, 2));
      REQUIRE(p.borders == oracle::borders(s));
      REQUIRE(p.is_bordered == !p.borders.empty());
      if (p.is_bordered) REQUIRE(*p.shortest <= n / 2);
    });
  }
}

TEST_CASE("property: bordered iff a border of length at most n/2 exists") {
  for (std::size_t n = 1; n <= 14; ++n) {
    oracle::for_each_word(2, n, [&](const oracle::Str& s) {
      bool short_border = false;
      for (std::size_t l = 1; l <= n / 2 && !short_border; ++l) {
        short_border = oracle::has_border_of_length(s, l);
      }
      REQUIRE(is_bordered(Word(s, 2)) == short_border);
      REQUIRE(oracle::bordered(s) == short_border);
    });
  }
}

TEST_CASE("property: non-primitive words have no unbordered conjugate") {
  for (std::size_t n = 1; n <= 14; ++n) {
    oracle::for_each_word(2, n, [&](const oracle::Str& s) {
      const Word w(s, 2);
      REQUIRE(is_primitive(w) == oracle::primitive(s));
      if (!is_primitive(w)) REQUIRE(nuc(w) == 0);
    });
  }
}

TEST_CASE("packed binary border test") {
  for (unsigned n = 1; n <= 12; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      oracle::Str s;
      for (unsigned j = 0; j < n; ++j) s.push_back((bits >> (n - 1 - j)) & 1);
      REQUIRE(packed_binary_is_bordered(bits, n) == oracle::bordered(s));
    }
  }
}

TEST_CASE("binary words of length 4..18: shifts with two adjacent unbordered positions") {
  // The pattern uu in the circular border correlation does occur for
  // binary words: 0^(n-1)1 has unbordered shifts 0..01 and 10..0 next to
  // each other. These are the only conjugacy classes with that pattern up
  // to length 14 (checked against the naive oracle), and nuc never exceeds
  // floor(n/2) for n >= 4.
  for (std::size_t n = 4; n <= 14; ++n) {
    std::set<std::string> classes;
    oracle::for_each_word(2, n, [&](const oracle::Str& s) {
      std::string beta;
      for (std::size_t i = 0; i < n; ++i) beta += oracle::bordered(oracle::rotate(s, i)) ? 'b' : 'u';
      REQUIRE(beta == border_correlation(Word(s, 2)));
      REQUIRE(oracle::nuc(s) <= n / 2);
      const std::string doubled = beta + beta;
      if (doubled.substr(0, n + 1).find("uu") != std::string::npos) {
        classes.insert(least_conjugate(Word(s, 2)).to_string());
      }
    });
    const std::string zeros(n - 1, '0'), ones(n - 1, '1');
    CHECK(classes == std::set<std::string>{zeros + "1", "0" + ones});
  }
}
