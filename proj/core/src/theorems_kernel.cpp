#include <array>
#include <map>
#include <optional>

#include "theorems_internal.hpp"

namespace wordlogic::theorems {

using detail::param;
using detail::run_check;

namespace {

struct KernelSeq {
  std::uint64_t e = 0, r = 0;
  std::vector<int> values;  // f(2^e n + r) for all n with index < window
};

KernelSeq kernel_seq(const std::vector<int>& f, std::uint64_t e, std::uint64_t r) {
  KernelSeq s{e, r, {}};
  for (std::uint64_t idx = r; idx < f.size(); idx += std::uint64_t{1} << e) s.values.push_back(f[idx]);
  return s;
}

bool agree(const KernelSeq& a, const KernelSeq& b) {
  const std::size_t len = std::min(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (a.values[i] != b.values[i]) return false;
  }
  return true;
}

}  // namespace

KernelResult f_kernel(std::uint64_t window) {
  if (window < 2 || window > (std::uint64_t{1} << 16)) throw ContractError("f_kernel needs 2 <= window <= 2^16");
  std::vector<int> f(window);
  for (std::uint64_t n = 0; n < window; ++n) f[n] = f_value(n);

  // Representatives in (e, r) order; a sequence is new when it disagrees
  // with every representative on their common range.
  std::vector<KernelSeq> reps;
  auto classify = [&](const KernelSeq& s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (agree(reps[i], s)) return i;
    }
    return std::nullopt;
  };
  KernelResult out;
  std::uint64_t levels = 0;
  while ((std::uint64_t{1} << levels) <= window) ++levels;
  for (std::uint64_t e = 0; e < levels; ++e) {
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << e); ++r) {
      KernelSeq s = kernel_seq(f, e, r);
      if (!classify(s)) reps.push_back(std::move(s));
    }
    out.classes_by_level.push_back(reps.size());
  }

  // lsd-first kernel automaton: rep g, digit d -> n |-> g(2n + d).
  const std::size_t q = reps.size();
  std::vector<std::array<std::size_t, 2>> lsd(q);
  for (std::size_t i = 0; i < q; ++i) {
    for (unsigned d = 0; d < 2; ++d) {
      const KernelSeq child = kernel_seq(f, reps[i].e + 1, reps[i].r + (std::uint64_t{d} << reps[i].e));
      if (child.values.empty()) return out;
      const auto c = classify(child);
      if (!c) return out;
      lsd[i][d] = *c;
    }
  }

  // msd-first by reversal: a state is the map q |-> output after reading
  // the reversed prefix from q.
  using Vec = std::vector<Symbol>;
  std::map<Vec, std::uint32_t> index;
  std::vector<Vec> states;
  Vec start(q);
  for (std::size_t i = 0; i < q; ++i) start[i] = static_cast<Symbol>(reps[i].values[0] + 1);
  index.emplace(start, 0);
  states.push_back(start);
  std::vector<std::uint32_t> transitions;
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (unsigned d = 0; d < 2; ++d) {
      Vec next(q);
      for (std::size_t i = 0; i < q; ++i) next[i] = states[s][lsd[i][d]];
      auto [it, inserted] = index.emplace(next, static_cast<std::uint32_t>(states.size()));
      if (inserted) states.push_back(next);
      transitions.push_back(it->second);
    }
  }
  std::vector<Symbol> outputs;
  for (const auto& v : states) outputs.push_back(v[0]);
  if (transitions[0] != 0) return out;  // leading zeros would matter
  out.dfao.emplace(2, std::move(transitions), std::move(outputs), "F");
  return out;
}

VerificationReport f_automatic_check(std::uint64_t window) {
  return run_check("f-automatic", {{"window", param(window)}}, [&](VerificationReport& r) {
    const KernelResult k = f_kernel(window);
    std::string counts;
    for (std::size_t e = 0; e < k.classes_by_level.size(); ++e) {
      counts += (e ? "," : "") + std::to_string(k.classes_by_level[e]);
    }
    r.notes.push_back("distinct kernel classes by level e: " + counts);
    const std::size_t levels = k.classes_by_level.size();
    if (levels < 15 || k.classes_by_level[7] != k.classes_by_level[14]) {
      if (levels < 15) {
        throw ResourceError(CapKind::kPrefixLength, window, "window below 2^14 cannot show stabilization for e = 8..14");
      }
      r.counterexamples.push_back("new kernel classes appear between e = 8 and e = 14");
    }
    if (!k.dfao) {
      r.counterexamples.push_back("kernel automaton is not closed or not leading-zero invariant on the window");
      return;
    }
    r.witnesses.push_back("DFAO with " + std::to_string(k.dfao->num_states()) + " states, outputs f+1");
    for (std::uint64_t n = 0; n < window; ++n) {
      const int got = static_cast<int>(k.dfao->eval(n)) - 1;
      if (got != f_value(n)) {
        r.counterexamples.push_back("n=" + std::to_string(n) + " dfao " + std::to_string(got) + " f " +
                                    std::to_string(f_value(n)));
        break;
      }
    }
    // Leading zeros: reading 0 from the start state stays put.
    if (k.dfao->next(0, 0) != 0) r.counterexamples.push_back("leading zero changes the state");
  });
}

}  // namespace wordlogic::theorems
