#include <algorithm>
#include <map>
#include <mutex>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "theorems_internal.hpp"
#include "wordlogic/sequences.hpp"
#include "wordlogic/words.hpp"

namespace wordlogic::theorems {

using detail::join;
using detail::param;
using detail::run_check;

namespace {

Word binary(std::span<const Symbol> s) { return Word(std::vector<Symbol>(s.begin(), s.end()), 2); }

const Word& tm_prefix(std::size_t len) {
  static std::mutex mu;
  static Word cached;
  std::lock_guard lock(mu);
  if (cached.size() < len) cached = sequences::thue_morse_prefix(std::max(len, 2 * cached.size()));
  return cached;
}

bool circular_contains(const Word& w, std::string_view pattern) {
  const std::size_t n = w.size();
  if (pattern.size() > n) return false;
  for (std::size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (std::size_t j = 0; j < pattern.size() && ok; ++j) {
      ok = w[(s + j) % n] == static_cast<Symbol>(pattern[j] - '0');
    }
    if (ok) return true;
  }
  return false;
}

bool circular_uu(const std::string& beta) {
  const std::size_t n = beta.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (beta[i] == 'u' && beta[(i + 1) % n] == 'u') return true;
  }
  return false;
}

// Conjugates starting with 000, in shift order.
std::vector<Word> rotations_with_000_prefix(const Word& w) {
  std::vector<Word> out;
  for (std::size_t s = 0; s < w.size(); ++s) {
    Word c = words::conjugate(w, s);
    if (c.size() >= 3 && c[0] == 0 && c[1] == 0 && c[2] == 0) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Word> necklaces_where(std::size_t n, const std::function<bool(const Word&)>& keep) {
  std::vector<Word> out;
  words::for_each_necklace(2, n, [&](std::span<const Symbol> s) {
    Word w = binary(s);
    if (keep(w)) out.push_back(std::move(w));
  });
  return out;
}

}  // namespace

VerificationReport verify_mnuc_formula(std::size_t N, const RunOptions& opt) {
  return run_check("mnuc", {{"N", param(N)}}, [&](VerificationReport& r) {
    if (N > 20) throw ContractError("verify_mnuc_formula needs N <= 20");
    words::MnucOptions mo;
    mo.jobs = opt.jobs;
    mo.budget = opt.enumeration_budget;
    mo.witness_cap = 1;
    std::vector<std::uint64_t> table;
    for (std::size_t n = 1; n <= N; ++n) {
      const auto ex = words::mnuc_exhaustive(2, n, mo);
      const auto formula = mnuc_formula(n);
      table.push_back(ex.value);
      std::ostringstream line;
      line << "n=" << n << " mnuc=" << ex.value << " formula=" << formula
           << " example=" << ex.witnesses.front().to_string();
      if (ex.value != formula) r.counterexamples.push_back(line.str());
      else r.witnesses.push_back(line.str());
    }
    r.notes.push_back("exhaustive table " + join(table));
  });
}

std::optional<Achiever> tm_achiever(std::size_t n) {
  if (n == 0) return std::nullopt;
  const Word& t = tm_prefix(2 * n + 1);
  const auto target = mnuc_formula(n);
  for (std::size_t m = 0; m <= n; ++m) {
    const std::size_t v = words::nuc(t.symbols().subspan(m, n));
    if (v == target) return Achiever{m, t.slice(m, n), v};
  }
  return std::nullopt;
}

VerificationReport verify_tm_achievers(std::size_t N, std::size_t cross_check_limit,
                                       const RunOptions& opt) {
  return run_check(
      "tm-achievers", {{"N", param(N)}, {"cross_check", param(cross_check_limit)}},
      [&](VerificationReport& r) {
        words::MnucOptions mo;
        mo.jobs = opt.jobs;
        mo.budget = opt.enumeration_budget;
        mo.witness_cap = 1;
        for (std::size_t n = 1; n <= N; ++n) {
          const auto a = tm_achiever(n);
          std::ostringstream line;
          line << "n=" << n << " mnuc=" << mnuc_formula(n);
          if (!a) {
            r.counterexamples.push_back(line.str() + " no factor of t at position <= n attains it");
            continue;
          }
          line << " position=" << a->position << " factor=" << a->factor.to_string();
          if (n <= cross_check_limit) {
            const auto ex = words::mnuc_exhaustive(2, n, mo).value;
            line << " exhaustive=" << ex;
            if (ex != a->nuc) {
              r.counterexamples.push_back(line.str());
              continue;
            }
          }
          r.witnesses.push_back(line.str());
        }
      });
}

VerificationReport harju_nowotka_suite(std::size_t N, const RunOptions& opt) {
  return run_check("harju-nowotka", {{"N", param(N)}}, [&](VerificationReport& r) {
    if (N > 20) throw ContractError("harju_nowotka_suite needs N <= 20");
    detail::require_budget(2, N, opt.enumeration_budget, "unbordered-shift claims enumeration");
    constexpr std::size_t kPerLength = 2;
    std::vector<std::size_t> uu_lengths, uu_counts;
    bool uu_only_extremal = true;
    std::vector<std::size_t> exists_half;
    std::size_t not_overlap_free = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      std::size_t uu = 0, listed_iv = 0;
      bool half = false;
      words::for_each_necklace(2, n, [&](std::span<const Symbol> s) {
        const Word w = binary(s);
        const std::string beta = words::border_correlation(w);
        const std::size_t v = static_cast<std::size_t>(std::count(beta.begin(), beta.end(), 'u'));
        if (n >= 4 && circular_uu(beta)) {
          if (uu < kPerLength) {
            r.counterexamples.push_back("(i) n=" + std::to_string(n) + " w=" + w.to_string() +
                                        " beta=" + beta);
          }
          ++uu;
          const std::size_t ones = static_cast<std::size_t>(std::count(s.begin(), s.end(), 1u));
          if (ones != 1 && ones != n - 1) uu_only_extremal = false;
        }
        if (n >= 4 && v > n / 2) {
          r.counterexamples.push_back("(ii) n=" + std::to_string(n) + " w=" + w.to_string() +
                                      " nuc=" + std::to_string(v));
        }
        if (n % 2 == 0 && n >= 4 && v == n / 2) {
          if (!half) {
            r.witnesses.push_back("(iii) n=" + std::to_string(n) + " w=" + w.to_string() +
                                  " nuc=" + std::to_string(v));
          }
          half = true;
          if (auto ov = words::overlap_check(w, true)) {
            ++not_overlap_free;
            if (listed_iv++ < kPerLength) {
              r.counterexamples.push_back("(iv) n=" + std::to_string(n) + " w=" + w.to_string() +
                                          " nuc=" + std::to_string(v) + " circular overlap at " +
                                          std::to_string(ov->start) + " period " +
                                          std::to_string(ov->period));
            }
          }
        }
      });
      if (uu > 0) {
        uu_lengths.push_back(n);
        uu_counts.push_back(uu);
      }
      if (n % 2 == 0 && n >= 4) {
        if (half) exists_half.push_back(n);
        if (half != is_pow2_or_3pow2(n)) {
          r.counterexamples.push_back("(iii) n=" + std::to_string(n) + (half ? " has" : " lacks") +
                                      " a word with nuc = n/2");
        }
      }
    }
    r.notes.push_back("(i) classes with uu in beta: lengths " + join(uu_lengths) + " counts " +
                      join(uu_counts) +
                      (uu_only_extremal ? "; every such class is 0^(n-1)1 or 01^(n-1)"
                                        : "; some classes besides 0^(n-1)1 and 01^(n-1)"));
    r.notes.push_back("(iii) even n with a word of nuc n/2: " + join(exists_half));
    r.notes.push_back("(iv) maximizer classes with a circular overlap: " +
                      std::to_string(not_overlap_free));
  });
}

namespace {

// Odd-length bases u with nuc(u) = floor(m/2) and 000 circularly, in
// search order: factors of t (wraparound forms) first, then exhaustive.
std::vector<Word> pump_bases(std::size_t m) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Word>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  std::vector<Word> bases;
  const std::size_t scan = 16 * m + 64;
  const Word& t = tm_prefix(scan + m);
  for (std::size_t p = 0; p < scan; ++p) {
    const auto f = t.symbols().subspan(p, m);
    const bool wrap = f[0] == 0 && f[m - 1] == 0 && (f[1] == 0 || f[m - 2] == 0);
    if (!wrap || words::nuc(f) != m / 2) continue;
    Word w = binary(f);
    if (std::find(bases.begin(), bases.end(), w) == bases.end()) bases.push_back(std::move(w));
  }
  if (m <= 21) {
    auto more = necklaces_where(m, [&](const Word& w) {
      return words::nuc(w) == m / 2 && circular_contains(w, "000");
    });
    bases.insert(bases.end(), more.begin(), more.end());
  }
  cache.emplace(m, bases);
  return bases;
}

}  // namespace

Word construct_word_with_nuc(std::size_t n, std::size_t i) {
  if (i <= 1 || i > mnuc_formula(n)) {
    throw ContractError("construct_word_with_nuc needs 1 < i <= mnuc(n)");
  }
  if (i == mnuc_formula(n)) {
    if (auto a = tm_achiever(n); a && naive_nuc(a->factor) == i) return a->factor;
    throw ResourceError(CapKind::kSearchBound, n, "no Thue-Morse achiever at positions <= n");
  }
  const std::size_t m = 2 * i + 1;
  for (const Word& u : pump_bases(m)) {
    for (const Word& rotated : rotations_with_000_prefix(u)) {
      Word w = Word::repeat(0, n - m, 2) + rotated;
      if (naive_nuc(w) == i) return w;
    }
  }
  throw ResourceError(CapKind::kSearchBound, m,
                      "no pumpable base of length " + std::to_string(m) + " for n=" + std::to_string(n));
}

VerificationReport verify_intermediate_nuc(std::size_t N, unsigned k, const RunOptions& opt) {
  return run_check("intermediate-nuc", {{"N", param(N)}, {"k", param(k)}}, [&](VerificationReport& r) {
    if (k < 2 || k > 4) throw ContractError("verify_intermediate_nuc needs k in {2,3,4}");
    if (k == 2) {
      for (std::size_t n = 2; n <= N; ++n) {
        for (std::size_t i = 2; i <= mnuc_formula(n); ++i) {
          const Word w = construct_word_with_nuc(n, i);
          const std::size_t v = naive_nuc(w);
          std::string line = "n=" + std::to_string(n) + " i=" + std::to_string(i) + " w=" + w.to_string();
          if (w.size() != n || v != i) r.counterexamples.push_back(line + " nuc=" + std::to_string(v));
          else r.witnesses.push_back(line);
        }
      }
      return;
    }
    const std::set<std::uint64_t> exceptions = k == 3 ? kCurrieExceptions : std::set<std::uint64_t>{};
    for (std::size_t n = 1; n <= N; ++n) {
      detail::require_budget(k, n, opt.enumeration_budget, "intermediate nuc enumeration");
      std::set<std::size_t> achieved;
      std::map<std::size_t, Word> example;
      words::for_each_necklace(k, n, [&](std::span<const Symbol> s) {
        Word w(std::vector<Symbol>(s.begin(), s.end()), k);
        const std::size_t v = words::nuc(w);
        if (achieved.insert(v).second) example.emplace(v, std::move(w));
      });
      const std::size_t top = n == 1 ? 1 : (exceptions.count(n) ? n - 1 : n);
      std::vector<std::size_t> missing;
      for (std::size_t i = 2; i <= top; ++i) {
        if (!achieved.count(i)) missing.push_back(i);
      }
      const std::size_t max = *achieved.rbegin();
      std::string line = "n=" + std::to_string(n) + " range 1<i<=" + std::to_string(top) +
                         " achieved " + join(achieved);
      if (!missing.empty() || max != top) {
        r.counterexamples.push_back(line + " missing " + join(missing) + " max " + std::to_string(max));
      } else {
        r.witnesses.push_back(line + " max example " + example.at(max).to_string());
      }
    }
    if (k == 3) r.notes.push_back("k=3: for n in {5,7,9,10,14,17} the range is 1<i<n");
  });
}

VerificationReport lemma7_check(std::size_t N) {
  return run_check("lemma7", {{"N", param(N)}}, [&](VerificationReport& r) {
    for (std::size_t n = 5; n <= N; n += 2) {
      std::optional<Word> found;
      words::for_each_necklace(2, n, [&](std::span<const Symbol> s) {
        if (found) return;
        Word w = binary(s);
        if (words::nuc(w) == n / 2 && circular_contains(w, "000")) found = std::move(w);
      });
      if (!found) {
        r.counterexamples.push_back("n=" + std::to_string(n) + " no maximizer with 000 in a conjugate");
        continue;
      }
      std::string line = "n=" + std::to_string(n) + " class " + found->to_string();
      // The Thue-Morse factor of the forms 0u00 / 00u0 the proof relies on.
      const Word& t = tm_prefix(32 * n + n);
      for (std::size_t p = 0; p < 32 * n; ++p) {
        const auto f = t.symbols().subspan(p, n);
        if (f[0] == 0 && f[n - 1] == 0 && (f[1] == 0 || f[n - 2] == 0) && words::nuc(f) == n / 2) {
          line += " t-factor at " + std::to_string(p) + " " + binary(f).to_string();
          break;
        }
      }
      r.witnesses.push_back(line);
    }
  });
}

VerificationReport lemma8_check(std::size_t N) {
  return run_check("lemma8", {{"N", param(N)}}, [&](VerificationReport& r) {
    if (N > 18) throw ContractError("lemma8_check needs N <= 18");
    std::size_t raw_multi = 0;
    for (std::size_t n = 5; n <= N; n += 2) {
      std::size_t tested = 0;
      for (const Word& w : necklaces_where(n, [&](const Word& w) {
             return words::nuc(w) == n / 2 && circular_contains(w, "000");
           })) {
        ++tested;
        bool four = circular_contains(w, "0000");
        bool disjoint = false, multi = false;
        for (std::size_t s = 0; s < n; ++s) {
          const Word c = words::conjugate(w, s);
          std::vector<std::size_t> at;
          for (std::size_t j = 0; j + 3 <= n; ++j) {
            if (c[j] == 0 && c[j + 1] == 0 && c[j + 2] == 0) at.push_back(j);
          }
          multi = multi || at.size() > 1;
          if (at.size() > 1 && at.back() >= at.front() + 3) disjoint = true;
        }
        raw_multi += multi;
        if (four) r.counterexamples.push_back("n=" + std::to_string(n) + " w=" + w.to_string() + " a conjugate contains 0000");
        if (disjoint) r.counterexamples.push_back("n=" + std::to_string(n) + " w=" + w.to_string() + " a conjugate contains two disjoint 000");
      }
      r.witnesses.push_back("n=" + std::to_string(n) + " classes tested " + std::to_string(tested));
    }
    r.notes.push_back("reading: no conjugate contains 0000 and none contains two disjoint 000 blocks");
    r.notes.push_back("classes with some conjugate having >= 2 start positions of 000: " + std::to_string(raw_multi));
  });
}

VerificationReport lemma9_pump_check(std::size_t N) {
  return run_check("lemma9", {{"N", param(N)}}, [&](VerificationReport& r) {
    if (N > 18) throw ContractError("lemma9_pump_check needs N <= 18");
    for (std::size_t n = 5; n <= std::min<std::size_t>(N, 14); n += 2) {
      std::size_t pumped = 0;
      for (const Word& w : necklaces_where(n, [&](const Word& w) { return words::nuc(w) == n / 2; })) {
        const std::size_t base = words::nuc(w);
        for (const Word& rotated : rotations_with_000_prefix(w)) {
          for (std::size_t i = 0; n + i <= N; ++i) {
            const Word p = Word::repeat(0, i, 2) + rotated;
            const std::size_t v = naive_nuc(p);
            ++pumped;
            if (v != base) {
              r.counterexamples.push_back("w'=" + rotated.to_string() + " i=" + std::to_string(i) +
                                          " nuc=" + std::to_string(v) + " expected " + std::to_string(base));
            }
          }
        }
      }
      r.witnesses.push_back("n=" + std::to_string(n) + " pumped words checked " + std::to_string(pumped));
    }
  });
}

VerificationReport expected_nuc_report(unsigned k, std::size_t N, const RunOptions& opt) {
  return run_check("expected-nuc", {{"k", param(k)}, {"N", param(N)}}, [&](VerificationReport& r) {
    if (k < 2) throw ContractError("expected_nuc_report needs k >= 2");
    detail::require_budget(k, N, opt.enumeration_budget, "unbordered-word enumeration");
    std::uint64_t pow = 1;
    for (std::size_t n = 1; n <= N; ++n) {
      pow *= k;
      const std::uint64_t u = k == 2 ? unbordered_binary_count(static_cast<unsigned>(n), opt.jobs)
                                     : unbordered_count(k, static_cast<unsigned>(n));
      std::ostringstream line;
      line << "n=" << n << " u=" << u;
      if (n <= 14) {
        // Second enumeration: nuc of every word.
        std::uint64_t sum = 0;
        std::vector<Symbol> w(n, 0);
        while (true) {
          sum += words::nuc(std::span<const Symbol>(w));
          std::size_t j = n;
          while (j > 0 && w[j - 1] == k - 1) w[--j] = 0;
          if (j == 0) break;
          ++w[j - 1];
        }
        const std::uint64_t g = std::gcd(n * u, pow);
        line << " sum_nuc=" << sum << " expectation=" << n * u / g << "/" << pow / g;
        if (sum != n * u) {
          r.counterexamples.push_back(line.str() + " but n*u=" + std::to_string(n * u));
          continue;
        }
      }
      line << " ratio=" << std::fixed << std::setprecision(6)
           << static_cast<double>(u) / static_cast<double>(pow);
      r.witnesses.push_back(line.str());
      if (k == 2 && n == 24) {
        // |u/2^24 - 0.2677| < 0.01, in integers.
        const std::int64_t diff = static_cast<std::int64_t>(u * 10000) - static_cast<std::int64_t>(2677 * pow);
        if (std::abs(diff) >= static_cast<std::int64_t>(100 * pow)) {
          r.counterexamples.push_back("u(24)/2^24 is not within 0.01 of 0.2677");
        } else {
          r.notes.push_back("u(24)/2^24 within 0.01 of 0.2677");
        }
      }
    }
  });
}

}  // namespace wordlogic::theorems
