#include "wordlogic/words.hpp"

#include <algorithm>
#include <thread>

#include "wordlogic/error.hpp"

namespace wordlogic::words {

namespace {

// Smallest index of the least rotation (two-pointer minimum expression).
std::size_t least_rotation_index(std::span<const Symbol> w) {
  const std::size_t n = w.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Symbol a = w[(i + k) % n];
    Symbol b = w[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

void rotate_into(std::span<const Symbol> w, std::size_t i, std::vector<Symbol>& out) {
  const std::size_t n = w.size();
  out.resize(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = w[(i + j) % n];
}

}  // namespace

Word conjugate(const Word& w, std::size_t i) {
  if (w.empty()) return w;
  std::vector<Symbol> out;
  rotate_into(w.symbols(), i % w.size(), out);
  return Word(std::move(out), w.alphabet_size());
}

std::vector<std::size_t> failure_table(std::span<const Symbol> w) {
  std::vector<std::size_t> fail(w.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t j = 1; j < w.size(); ++j) {
    while (k > 0 && w[j] != w[k]) k = fail[k];
    if (w[j] == w[k]) ++k;
    fail[j + 1] = k;
  }
  return fail;
}

BorderProfile border_profile(const Word& w) {
  BorderProfile profile;
  if (w.size() < 2) return profile;
  auto fail = failure_table(w.symbols());
  for (std::size_t len = fail[w.size()]; len > 0; len = fail[len]) {
    profile.borders.push_back(len);
  }
  std::reverse(profile.borders.begin(), profile.borders.end());
  profile.is_bordered = !profile.borders.empty();
  if (profile.is_bordered) profile.shortest = profile.borders.front();
  return profile;
}

bool is_bordered(std::span<const Symbol> w) {
  if (w.size() < 2) return false;
  // The shortest border never exceeds |w|/2, so a direct scan of the short
  // candidates usually exits early.
  const std::size_t n = w.size();
  for (std::size_t len = 1; len <= n / 2; ++len) {
    if (std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len),
                   w.end() - static_cast<std::ptrdiff_t>(len))) {
      return true;
    }
  }
  return false;
}

bool is_bordered(const Word& w) { return is_bordered(w.symbols()); }

std::size_t nuc(std::span<const Symbol> w) {
  if (w.empty()) throw ContractError("nuc is undefined for the empty word");
  std::vector<Symbol> shifted;
  std::size_t count = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    rotate_into(w, i, shifted);
    if (!is_bordered(shifted)) ++count;
  }
  return count;
}

std::size_t nuc(const Word& w) { return nuc(w.symbols()); }

std::string border_correlation(const Word& w) {
  if (w.empty()) throw ContractError("border correlation is undefined for the empty word");
  std::string out(w.size(), 'b');
  std::vector<Symbol> shifted;
  for (std::size_t i = 0; i < w.size(); ++i) {
    rotate_into(w.symbols(), i, shifted);
    if (!is_bordered(shifted)) out[i] = 'u';
  }
  return out;
}

std::optional<SquareWitness> square_check(std::span<const Symbol> w, bool circular) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; 2 * p <= n; ++p) {
    std::size_t run = 0;
    const std::size_t limit = circular ? n + p - 1 : n - p;
    for (std::size_t j = 0; j < limit; ++j) {
      bool match = circular ? w[j % n] == w[(j + p) % n] : w[j] == w[j + p];
      run = match ? run + 1 : 0;
      if (run == p) return SquareWitness{j + 1 - p, p, circular};
    }
  }
  return std::nullopt;
}

std::optional<SquareWitness> square_check(const Word& w, bool circular) {
  return square_check(w.symbols(), circular);
}

bool squarefree_word_is_circularly_squarefree(std::span<const Symbol> w) {
  const std::size_t n = w.size();
  auto at = [&](std::size_t j) { return w[j < n ? j : j - n]; };
  for (std::size_t p = 1; 2 * p <= n; ++p) {
    for (std::size_t anchor : {n - p, n - 1}) {
      if (at(anchor) != at(anchor + p)) continue;
      std::size_t left = 0;
      while (left + 1 < p && at(anchor - left - 1) == at(anchor - left - 1 + p)) ++left;
      std::size_t right = 0;
      while (left + right + 1 < p && at(anchor + right + 1) == at(anchor + right + 1 + p)) ++right;
      if (left + right + 1 >= p) return false;
    }
  }
  return true;
}

std::optional<OverlapWitness> overlap_check(std::span<const Symbol> w, bool circular) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; 2 * p + 1 <= n; ++p) {
    std::size_t run = 0;
    const std::size_t limit = circular ? n + p : n - p;
    for (std::size_t j = 0; j < limit; ++j) {
      bool match = circular ? w[j % n] == w[(j + p) % n] : w[j] == w[j + p];
      run = match ? run + 1 : 0;
      if (run == p + 1) return OverlapWitness{j - p, p, circular};
    }
  }
  return std::nullopt;
}

std::optional<OverlapWitness> overlap_check(const Word& w, bool circular) {
  return overlap_check(w.symbols(), circular);
}

bool is_primitive(const Word& w) {
  if (w.empty()) throw ContractError("primitivity is undefined for the empty word");
  const std::size_t n = w.size();
  auto fail = failure_table(w.symbols());
  // KMP search of w inside (ww)[1 .. 2n-1).
  std::size_t k = 0;
  for (std::size_t j = 1; j + 1 < 2 * n; ++j) {
    Symbol c = w[j % n];
    while (k > 0 && w[k] != c) k = fail[k];
    if (w[k] == c) ++k;
    if (k == n) return false;
  }
  return true;
}

Word least_conjugate(const Word& w) {
  if (w.empty()) return w;
  return conjugate(w, least_rotation_index(w.symbols()));
}

bool is_least_conjugate(std::span<const Symbol> w) {
  return w.empty() || least_rotation_index(w) == 0;
}

void for_each_necklace(unsigned k, std::size_t n,
                       const std::function<void(std::span<const Symbol>)>& visit) {
  if (k == 0) throw ContractError("alphabet size must be at least 1");
  std::vector<Symbol> a(n + 1, 0);
  const std::span<const Symbol> view(a.data() + 1, n);
  visit(view);
  if (n == 0) return;
  while (true) {
    std::size_t i = n;
    while (i >= 1 && a[i] == k - 1) --i;
    if (i == 0) break;
    ++a[i];
    for (std::size_t j = i + 1; j <= n; ++j) a[j] = a[j - i];
    if (n % i == 0) visit(view);
  }
}

bool packed_binary_is_bordered(std::uint64_t bits, unsigned n) {
  for (unsigned len = 1; 2 * len <= n; ++len) {
    const std::uint64_t mask = (std::uint64_t{1} << len) - 1;
    if ((bits >> (n - len)) == (bits & mask)) return true;
  }
  return false;
}

void parallel_ranges(std::uint64_t count, unsigned jobs,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  if (jobs <= 1 || count < 2) {
    body(0, count, 0);
    return;
  }
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    std::uint64_t begin = count * t / jobs;
    std::uint64_t end = count * (t + 1) / jobs;
    workers.emplace_back([&body, begin, end, t] { body(begin, end, t); });
  }
  for (auto& worker : workers) worker.join();
}

MnucResult mnuc_exhaustive(unsigned k, std::size_t n, const MnucOptions& options) {
  if (n == 0) throw ContractError("mnuc needs n >= 1");
  if (k == 0) throw ContractError("alphabet size must be at least 1");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > options.budget / k) {
      throw ResourceError(CapKind::kEnumerationBudget, options.budget,
                          "mnuc over " + std::to_string(k) + "^" + std::to_string(n) + " words");
    }
    total *= k;
  }

  MnucResult result;
  constexpr std::size_t kBatch = 1 << 14;
  std::vector<Symbol> batch;
  std::vector<std::size_t> values;
  batch.reserve(kBatch * n);

  auto flush = [&] {
    const std::size_t count = batch.size() / n;
    values.assign(count, 0);
    parallel_ranges(count, options.jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
      for (std::uint64_t i = begin; i < end; ++i) {
        values[i] = nuc(std::span<const Symbol>(batch.data() + i * n, n));
      }
    });
    for (std::size_t i = 0; i < count; ++i) {
      if (values[i] > result.value) {
        result.value = values[i];
        result.witnesses.clear();
      }
      if (values[i] == result.value && result.witnesses.size() < options.witness_cap) {
        result.witnesses.emplace_back(
            std::vector<Symbol>(batch.begin() + static_cast<std::ptrdiff_t>(i * n),
                                batch.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)),
            k);
      }
    }
    result.necklaces += count;
    batch.clear();
  };

  for_each_necklace(k, n, [&](std::span<const Symbol> necklace) {
    batch.insert(batch.end(), necklace.begin(), necklace.end());
    if (batch.size() == kBatch * n) flush();
  });
  if (!batch.empty()) flush();
  return result;
}

}  // namespace wordlogic::words
