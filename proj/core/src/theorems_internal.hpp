#pragma once

#include <chrono>
#include <string>

#include "wordlogic/theorems.hpp"

namespace wordlogic::theorems::detail {

template <class Body>
VerificationReport run_check(std::string name,
                             std::vector<std::pair<std::string, std::string>> params, Body&& body) {
  VerificationReport r;
  r.check = std::move(name);
  r.params = std::move(params);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
    if (r.verdict == Verdict::kPass && !r.counterexamples.empty()) r.verdict = Verdict::kFail;
  } catch (const ResourceError& e) {
    r.verdict = Verdict::kResourceLimited;
    r.cap = CapHit{e.kind(), e.cap(), e.detail()};
  }
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

inline std::string param(std::uint64_t v) { return std::to_string(v); }

template <class Range>
std::string join(const Range& items, const char* sep = ",") {
  std::string out;
  for (const auto& x : items) {
    if (!out.empty()) out += sep;
    out += std::to_string(x);
  }
  return "{" + out + "}";
}

inline void require_budget(unsigned k, std::size_t n, std::uint64_t budget, const std::string& what) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > budget / k) throw ResourceError(CapKind::kEnumerationBudget, budget, what);
    total *= k;
  }
}

}  // namespace wordlogic::theorems::detail
