#include <algorithm>
#include <iomanip>
#include <sstream>

#include "wordlogic/theorems.hpp"
#include "wordlogic/words.hpp"

namespace wordlogic::theorems {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kResourceLimited: return "resource-limited";
  }
  return "?";
}

namespace {

std::string flat(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

std::optional<CapKind> cap_kind_from(const std::string& s) {
  for (CapKind k : {CapKind::kEnumerationBudget, CapKind::kStateCap, CapKind::kPrefixLength,
                    CapKind::kSearchBound}) {
    if (s == wordlogic::to_string(k)) return k;
  }
  return std::nullopt;
}

}  // namespace

std::string to_record(const VerificationReport& r) {
  std::ostringstream out;
  out << "check " << flat(r.check) << '\n';
  for (const auto& [k, v] : r.params) out << "param " << flat(k) << ' ' << flat(v) << '\n';
  out << "verdict " << to_string(r.verdict) << '\n';
  if (r.cap) {
    out << "cap " << wordlogic::to_string(r.cap->kind) << ' ' << r.cap->cap << ' '
        << flat(r.cap->detail) << '\n';
  }
  for (const auto& c : r.counterexamples) out << "counterexample " << flat(c) << '\n';
  for (const auto& w : r.witnesses) out << "witness " << flat(w) << '\n';
  for (const auto& n : r.notes) out << "note " << flat(n) << '\n';
  out << "end\n";
  return out.str();
}

std::vector<VerificationReport> parse_records(const std::string& text) {
  std::vector<VerificationReport> out;
  std::istringstream in(text);
  std::string line;
  std::optional<VerificationReport> cur;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& why) {
    return ContractError("record line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
    if (key == "check") {
      if (cur) throw bad("missing end");
      cur.emplace();
      cur->check = rest;
      continue;
    }
    if (!cur) throw bad("expected check");
    if (key == "end") {
      out.push_back(std::move(*cur));
      cur.reset();
    } else if (key == "param") {
      const auto s2 = rest.find(' ');
      cur->params.emplace_back(rest.substr(0, s2), s2 == std::string::npos ? "" : rest.substr(s2 + 1));
    } else if (key == "verdict") {
      if (rest == "pass") cur->verdict = Verdict::kPass;
      else if (rest == "fail") cur->verdict = Verdict::kFail;
      else if (rest == "resource-limited") cur->verdict = Verdict::kResourceLimited;
      else throw bad("unknown verdict '" + rest + "'");
    } else if (key == "cap") {
      std::istringstream fields(rest);
      std::string kind;
      CapHit hit;
      fields >> kind >> hit.cap;
      auto k = cap_kind_from(kind);
      if (!k || !fields) throw bad("malformed cap");
      hit.kind = *k;
      std::getline(fields >> std::ws, hit.detail);
      cur->cap = hit;
    } else if (key == "counterexample") {
      cur->counterexamples.push_back(rest);
    } else if (key == "witness") {
      cur->witnesses.push_back(rest);
    } else if (key == "note") {
      cur->notes.push_back(rest);
    } else {
      throw bad("unknown key '" + key + "'");
    }
  }
  if (cur) throw bad("missing end");
  return out;
}

std::string to_table(const VerificationReport& r, std::size_t max_items) {
  std::ostringstream out;
  out << "== " << r.check;
  for (const auto& [k, v] : r.params) out << "  " << k << '=' << v;
  out << '\n';
  out << "   verdict: " << to_string(r.verdict) << "   (" << std::fixed << std::setprecision(3)
      << r.wall_time.count() << " s)\n";
  if (r.cap) {
    out << "   cap hit: " << wordlogic::to_string(r.cap->kind) << " = " << r.cap->cap << "  "
        << r.cap->detail << '\n';
  }
  auto list = [&](const char* label, const std::vector<std::string>& items) {
    if (items.empty()) return;
    out << "   " << label << " (" << items.size() << "):\n";
    for (std::size_t i = 0; i < items.size() && i < max_items; ++i) out << "     " << items[i] << '\n';
    if (items.size() > max_items) out << "     ... " << items.size() - max_items << " more\n";
  };
  list("counterexamples", r.counterexamples);
  list("witnesses", r.witnesses);
  for (const auto& n : r.notes) out << "   note: " << n << '\n';
  return out.str();
}

// ---- exact helpers ----

bool is_pow2_or_3pow2(std::uint64_t n) {
  if (n == 0) return false;
  while (n % 2 == 0) n /= 2;
  return n == 1 || n == 3;
}

std::uint64_t mnuc_formula(std::uint64_t n) {
  if (n == 0) return 0;
  if (n == 1) return 1;
  if (n <= 3) return 2;
  if (n % 2 == 1) return n / 2;
  return is_pow2_or_3pow2(n) ? n / 2 : n / 2 - 1;
}

int f_value(std::uint64_t n) {
  return static_cast<int>(static_cast<std::int64_t>(mnuc_formula(n)) -
                          static_cast<std::int64_t>(n / 2));
}

std::uint64_t fibonacci(std::uint64_t n) {
  if (n > 93) throw ContractError("fibonacci index beyond 64-bit range");
  std::uint64_t a = 0, b = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

std::uint64_t unbordered_binary_count(unsigned n, unsigned jobs) {
  if (n == 0 || n > 40) throw ContractError("unbordered_binary_count needs 1 <= n <= 40");
  const std::uint64_t total = std::uint64_t{1} << n;
  jobs = std::max(1u, jobs);
  std::vector<std::uint64_t> partial(jobs, 0);
  words::parallel_ranges(total, jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned worker) {
    std::uint64_t count = 0;
    for (std::uint64_t bits = lo; bits < hi; ++bits) count += !words::packed_binary_is_bordered(bits, n);
    partial[worker] = count;
  });
  std::uint64_t sum = 0;
  for (auto p : partial) sum += p;
  return sum;
}

std::uint64_t unbordered_count(unsigned k, unsigned n) {
  if (k == 2) return unbordered_binary_count(n);
  std::vector<Symbol> w(n, 0);
  std::uint64_t count = 0;
  while (true) {
    count += !words::is_bordered(std::span<const Symbol>(w));
    std::size_t j = n;
    while (j > 0 && w[j - 1] == k - 1) w[--j] = 0;
    if (j == 0) break;
    ++w[j - 1];
  }
  return count;
}

std::size_t naive_nuc(const Word& w) {
  const std::size_t n = w.size();
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    bool bordered = false;
    for (std::size_t l = 1; l < n && !bordered; ++l) {
      bool eq = true;
      for (std::size_t j = 0; j < l && eq; ++j) eq = w[(s + j) % n] == w[(s + n - l + j) % n];
      bordered = eq;
    }
    count += !bordered;
  }
  return count;
}

}  // namespace wordlogic::theorems
