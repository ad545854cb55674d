#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <sstream>

#include "theorems_internal.hpp"
#include "wordlogic/sequences.hpp"
#include "wordlogic/words.hpp"

namespace wordlogic::theorems {

using detail::join;
using detail::param;
using detail::run_check;

const char* to_string(Theorem2Form f) { return f == Theorem2Form::kSuffix021 ? "x021" : "x2120"; }

const Word& ternary_prefix(std::size_t len) {
  static std::mutex mu;
  static Word cached;
  std::lock_guard lock(mu);
  if (cached.size() < len) {
    cached = sequences::ternary_thue_morse_prefix(std::max(len, 2 * cached.size()),
                                                  sequences::TernaryMethod::kCodedFixedPoint);
  }
  return cached;
}

namespace {

// No square xx ending at a position >= from.
bool no_square_ending_from(std::span<const Symbol> y, std::size_t from) {
  for (std::size_t e = from + 1; e <= y.size(); ++e) {
    for (std::size_t p = 1; 2 * p <= e; ++p) {
      std::size_t j = 0;
      while (j < p && y[e - 1 - j] == y[e - 1 - j - p]) ++j;
      if (j == p) return false;
    }
  }
  return true;
}

bool squarefree_prefix_extension_is_circularly_squarefree(std::span<const Symbol> y, std::size_t from) {
  return no_square_ending_from(y, from) && words::squarefree_word_is_circularly_squarefree(y);
}

}  // namespace

bool is_circularly_squarefree(std::span<const Symbol> w) { return !words::square_check(w, true); }

std::optional<Theorem2Witness> theorem2_witness(std::size_t n, std::size_t s_bound) {
  if (n <= 3) throw ContractError("theorem2_witness needs n > 3");
  const Word& c = ternary_prefix(s_bound + n + 1);
  static const std::vector<Symbol> kA = {0, 2, 1}, kB = {2, 1, 2, 0};
  std::vector<Symbol> y;
  for (std::size_t s = 0; s <= s_bound; ++s) {
    for (Theorem2Form form : {Theorem2Form::kSuffix021, Theorem2Form::kSuffix2120}) {
      const auto& tail = form == Theorem2Form::kSuffix021 ? kA : kB;
      const std::size_t len = n - tail.size();
      y.assign(c.begin() + static_cast<std::ptrdiff_t>(s), c.begin() + static_cast<std::ptrdiff_t>(s + len));
      y.insert(y.end(), tail.begin(), tail.end());
      if (squarefree_prefix_extension_is_circularly_squarefree(y, len)) {
        return Theorem2Witness{s, form, c.slice(s, len), Word(y, 3)};
      }
    }
  }
  return std::nullopt;
}

VerificationReport verify_theorem2(std::size_t N, std::size_t s_bound) {
  return run_check("theorem2", {{"N", param(N)}, {"s_bound", param(s_bound)}}, [&](VerificationReport& r) {
    std::set<std::uint64_t> missing, expected;
    for (std::size_t n = 4; n <= N; ++n) {
      if (kTheorem2Exceptions.count(n)) expected.insert(n);
      const auto w = theorem2_witness(n, s_bound);
      if (!w) {
        missing.insert(n);
        continue;
      }
      if (!is_circularly_squarefree(w->word.symbols())) {
        r.counterexamples.push_back("n=" + std::to_string(n) + " witness " + w->word.to_string() +
                                    " fails the circular square check");
      }
      r.witnesses.push_back("n=" + std::to_string(n) + " s=" + std::to_string(w->position) + " form=" +
                            to_string(w->form) + " word=" + w->word.to_string());
    }
    r.notes.push_back("no witness with s <= " + std::to_string(s_bound) + " for " + join(missing));
    if (missing != expected) {
      r.counterexamples.push_back("exception set " + join(missing) + " differs from " + join(expected));
    }
  });
}

std::optional<Word> circularly_squarefree_search(std::size_t n, std::uint64_t node_cap) {
  if (n == 0) throw ContractError("circularly_squarefree_search needs n >= 1");
  // Letter permutations preserve circular squarefreeness, so the least
  // solution (if any) starts with 0 and then 1.
  std::vector<Symbol> w;
  w.reserve(n);
  std::uint64_t nodes = 0;
  std::optional<Word> found;
  auto extend = [&](auto&& self) -> bool {
    if (++nodes > node_cap) {
      throw ResourceError(CapKind::kSearchBound, node_cap,
                          "circular squarefree search at length " + std::to_string(n));
    }
    if (w.size() == n) {
      if (!words::squarefree_word_is_circularly_squarefree(w)) return false;
      found = Word(w, 3);
      return true;
    }
    const Symbol first = w.size() == 1 ? 1 : 0;
    const Symbol last = w.size() < 2 ? first : 2;
    for (Symbol a = first; a <= last; ++a) {
      w.push_back(a);
      if (no_square_ending_from(w, w.size() - 1) && self(self)) return true;
      w.pop_back();
    }
    return false;
  };
  extend(extend);
  return found;
}

VerificationReport verify_currie(std::size_t N, std::size_t s_bound, const RunOptions& opt) {
  return run_check("currie", {{"N", param(N)}, {"s_bound", param(s_bound)}}, [&](VerificationReport& r) {
    std::set<std::uint64_t> none, expected;
    std::size_t via_theorem2 = 0, via_search = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      if (kCurrieExceptions.count(n)) expected.insert(n);
      std::string line = "n=" + std::to_string(n);
      std::optional<Word> w;
      if (n > 3) {
        if (auto t2 = theorem2_witness(n, s_bound)) {
          w = t2->word;
          ++via_theorem2;
          line += " theorem2 s=" + std::to_string(t2->position) + " form=" + to_string(t2->form);
        }
      }
      if (!w) {
        w = circularly_squarefree_search(n, opt.search_nodes);
        if (!w) {
          none.insert(n);
          if (n > 20) line += " none (search exhausted beyond the exhaustive range)";
          else line += " none (exhaustive)";
          r.witnesses.push_back(line);
          continue;
        }
        ++via_search;
        line += " search";
      }
      if (!is_circularly_squarefree(w->symbols())) {
        r.counterexamples.push_back(line + " witness " + w->to_string() + " fails the circular square check");
        continue;
      }
      r.witnesses.push_back(line + " word=" + w->to_string());
    }
    r.notes.push_back("exceptions " + join(none) + "; witnesses via theorem2 " + std::to_string(via_theorem2) +
                      ", via search " + std::to_string(via_search));
    if (none != expected) {
      r.counterexamples.push_back("exception set " + join(none) + " differs from " + join(expected));
    }
  });
}

std::vector<bool> circsf_lengths_bruteforce(std::size_t L, std::size_t s_bound) {
  const Word& c = ternary_prefix(s_bound + L + 1);
  std::vector<bool> accepted(L + 1, false);
  accepted[0] = true;  // the empty factor
  for (std::size_t n = 1; n <= L; ++n) {
    for (std::size_t s = 0; s <= s_bound; ++s) {
      if (words::squarefree_word_is_circularly_squarefree(c.symbols().subspan(s, n))) {
        accepted[n] = true;
        break;
      }
    }
  }
  return accepted;
}

VerificationReport corollary4_check(std::size_t lo, std::size_t hi, std::size_t s_bound,
                                    const std::vector<bool>* accepted) {
  return run_check(
      "corollary4", {{"lo", param(lo)}, {"hi", param(hi)}, {"s_bound", param(s_bound)}},
      [&](VerificationReport& r) {
        if (lo < 4 || hi < lo || hi > 20) throw ContractError("corollary4_check needs 4 <= lo <= hi <= 20");
        std::vector<bool> local;
        if (!accepted) {
          local = circsf_lengths_bruteforce((std::size_t{2} << hi) - 1, s_bound);
          accepted = &local;
        } else if (accepted->size() < (std::size_t{2} << hi)) {
          throw ContractError("accepted-length table too short");
        }
        // Lengths in [2^(n+shift), 2^(n+shift+1)); shift 0 is the stated
        // interval, shift -1 counts lengths with exactly n binary digits.
        auto counts_for = [&](int shift) {
          std::vector<std::uint64_t> out;
          for (std::size_t n = lo; n <= hi; ++n) {
            const std::size_t b = n + static_cast<std::size_t>(shift + 1) - 1;
            std::uint64_t count = 0;
            for (std::size_t l = std::size_t{1} << b; l < (std::size_t{2} << b); ++l) count += (*accepted)[l];
            out.push_back(count);
          }
          return out;
        };
        auto formula = [](std::size_t n, int offset) {
          return (std::uint64_t{1} << (n - 3)) - fibonacci(static_cast<std::uint64_t>(static_cast<int>(n) - 3 + offset)) + 2;
        };
        // F'_j = F_(j + offset) with F_0 = 0, F_1 = 1.
        auto fits_for = [&](const std::vector<std::uint64_t>& counts) {
          std::vector<int> fits;
          for (int offset = -1; offset <= 3; ++offset) {
            bool all = true;
            for (std::size_t n = lo; n <= hi && all; ++n) all = counts[n - lo] == formula(n, offset);
            if (all) fits.push_back(offset);
          }
          return fits;
        };
        auto describe = [](int offset) {
          return "F_j = standard F_(j" + std::string(offset < 0 ? "-" : "+") + std::to_string(std::abs(offset)) +
                 "), i.e. F_1 = " + std::to_string(fibonacci(static_cast<std::uint64_t>(1 + offset))) +
                 ", F_2 = " + std::to_string(fibonacci(static_cast<std::uint64_t>(2 + offset)));
        };
        const auto counts = counts_for(0);
        const auto fits = fits_for(counts);
        for (std::size_t n = lo; n <= hi; ++n) {
          std::string line = "n=" + std::to_string(n) + " count=" + std::to_string(counts[n - lo]);
          if (!fits.empty()) line += " formula=" + std::to_string(formula(n, fits.front()));
          r.witnesses.push_back(line);
        }
        for (int offset : fits) r.notes.push_back("Fibonacci convention: " + describe(offset));
        if (fits.empty()) {
          r.counterexamples.push_back("counts over [2^n, 2^(n+1)) " + join(counts) +
                                      " fit no Fibonacci index offset in [-1, 3]");
          const auto shifted = counts_for(-1);
          const auto alt = fits_for(shifted);
          if (alt.empty()) {
            r.notes.push_back("counts over [2^(n-1), 2^n) " + join(shifted) + " fit no offset either");
          } else {
            r.notes.push_back("counts over [2^(n-1), 2^n) " + join(shifted) + " match the formula with " +
                              describe(alt.front()));
          }
        }
        r.notes.push_back("acceptance scanned only factors starting at s <= " + std::to_string(s_bound));
      });
}

}  // namespace wordlogic::theorems
