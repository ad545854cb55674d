#include <algorithm>
#include <unordered_set>

#include "wordlogic/automata.hpp"
#include "wordlogic/error.hpp"

namespace wordlogic::automata {

namespace {

// can[r][q]: some word of length exactly r leads from q to acceptance.
class ExactLengthTable {
 public:
  explicit ExactLengthTable(const TrackDfa& a) : a_(a) {
    rows_.emplace_back(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) rows_[0][q] = a.accepting(q);
  }

  const std::vector<std::uint8_t>& row(std::size_t r) {
    while (rows_.size() <= r) {
      const auto& prev = rows_.back();
      std::vector<std::uint8_t> next(a_.num_states(), 0);
      for (StateId q = 0; q < a_.num_states(); ++q) {
        for (Letter x = 0; x < a_.alphabet_size() && !next[q]; ++x) {
          next[q] = prev[a_.next(q, x)];
        }
      }
      rows_.push_back(std::move(next));
    }
    return rows_[r];
  }

 private:
  const TrackDfa& a_;
  std::vector<std::vector<std::uint8_t>> rows_;
};

bool pair_equivalent(const TrackDfa& a, StateId qa, const TrackDfa& b, StateId qb) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<StateId, StateId>> stack{{qa, qb}};
  seen.insert(static_cast<std::uint64_t>(qa) << 32 | qb);
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    if (a.accepting(p) != b.accepting(q)) return false;
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      StateId p2 = a.next(p, x), q2 = b.next(q, x);
      if (seen.insert(static_cast<std::uint64_t>(p2) << 32 | q2).second) stack.emplace_back(p2, q2);
    }
  }
  return true;
}

using Matrix = std::vector<std::uint64_t>;

Matrix multiply(const Matrix& x, const Matrix& y, std::size_t d) {
  Matrix out(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const std::uint64_t v = x[i * d + k];
      if (v == 0) continue;
      for (std::size_t j = 0; j < d; ++j) out[i * d + j] += v * y[k * d + j];
    }
  }
  return out;
}

}  // namespace

bool is_padding_closed(const TrackDfa& a) {
  return pair_equivalent(a, a.initial(), a, a.next(a.initial(), 0));
}

bool equivalent(const TrackDfa& a, const TrackDfa& b) {
  if (a.num_tracks() != b.num_tracks()) throw ContractError("equivalence needs equal track sets");
  const TrackDfa aligned = reorder_tracks(b, a.tracks());
  return pair_equivalent(a, a.initial(), aligned, aligned.initial());
}

Decision decide(const TrackDfa& a) {
  // Reachability first so that the empty case is linear.
  std::vector<std::uint8_t> seen(a.num_states(), 0);
  std::vector<StateId> stack{a.initial()};
  seen[a.initial()] = 1;
  bool reachable = false;
  while (!stack.empty() && !reachable) {
    StateId q = stack.back();
    stack.pop_back();
    reachable = a.accepting(q);
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      StateId r = a.next(q, x);
      if (!seen[r]) {
        seen[r] = 1;
        stack.push_back(r);
      }
    }
  }
  if (!reachable) return {};

  ExactLengthTable table(a);
  std::size_t length = 0;
  while (!table.row(length)[a.initial()]) ++length;
  std::vector<Letter> word;
  StateId q = a.initial();
  for (std::size_t remaining = length; remaining > 0; --remaining) {
    const auto& row = table.row(remaining - 1);
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      if (row[a.next(q, x)]) {
        word.push_back(x);
        q = a.next(q, x);
        break;
      }
    }
  }
  return Decision{true, decode(word, a.num_tracks())};
}

std::vector<std::vector<std::uint64_t>> enumerate(const TrackDfa& a, std::size_t limit,
                                                  std::size_t max_bits) {
  std::vector<std::vector<std::uint64_t>> out;
  if (limit == 0) return out;
  if (a.accepting(a.initial())) out.emplace_back(a.num_tracks(), 0);
  if (a.num_tracks() == 0) return out;  // only the empty word is canonical
  ExactLengthTable table(a);
  std::vector<Letter> word;
  std::vector<StateId> states;
  for (std::size_t length = 1; length <= max_bits && out.size() < limit; ++length) {
    // Depth-first over words of this length in lexicographic order; the
    // first letter must be nonzero for a canonical representation.
    word.assign(1, 0);
    states.assign(1, a.initial());
    while (!word.empty() && out.size() < limit) {
      const std::size_t depth = word.size() - 1;
      Letter& x = word.back();
      const Letter lowest = depth == 0 ? 1 : 0;
      if (x < lowest) x = lowest;
      bool advanced = false;
      for (; x < a.alphabet_size(); ++x) {
        StateId r = a.next(states[depth], x);
        if (table.row(length - 1 - depth)[r]) {
          advanced = true;
          if (depth + 1 == length) {
            out.push_back(decode(word, a.num_tracks()));
            ++x;
          } else {
            states.push_back(r);
            word.push_back(0);
          }
          break;
        }
      }
      if (!advanced) {
        word.pop_back();
        states.pop_back();
        if (!word.empty()) ++word.back();
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> accepted_values_upto(const TrackDfa& a, std::uint64_t bound) {
  if (a.num_tracks() != 1) throw ContractError("single-track automaton expected");
  std::size_t bits = 0;
  for (std::uint64_t v = bound; v > 0; v >>= 1) ++bits;
  std::vector<std::uint64_t> out;
  for (auto& tuple : enumerate(a, SIZE_MAX, bits)) {
    if (tuple[0] <= bound) out.push_back(tuple[0]);
  }
  return out;
}

LinearRep linear_representation(const TrackDfa& a) {
  LinearRep rep;
  const std::size_t d = a.num_states();
  rep.dimension = d;
  rep.matrices.assign(a.alphabet_size(), std::vector<std::uint64_t>(d * d, 0));
  for (StateId q = 0; q < d; ++q) {
    for (Letter x = 0; x < a.alphabet_size(); ++x) ++rep.matrices[x][q * d + a.next(q, x)];
  }
  rep.initial.assign(d, 0);
  rep.initial[a.initial()] = 1;
  rep.final.assign(d, 0);
  for (StateId q = 0; q < d; ++q) rep.final[q] = a.accepting(q);
  return rep;
}

std::uint64_t count_by_bitlength(const TrackDfa& a, std::size_t n) {
  if (a.num_tracks() != 1) throw ContractError("count_by_bitlength needs a single-track automaton");
  if (n > 64) throw ContractError("bit-length above 64 overflows the count");
  const TrackDfa m = minimize(a);
  if (n == 0) return m.accepting(m.initial()) ? 1 : 0;
  const LinearRep rep = linear_representation(m);
  const std::size_t d = rep.dimension;

  Matrix step(d * d, 0);
  for (std::size_t i = 0; i < d * d; ++i) step[i] = rep.matrices[0][i] + rep.matrices[1][i];
  Matrix power(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) power[i * d + i] = 1;
  for (std::size_t e = n - 1; e > 0; e >>= 1) {
    if (e & 1) power = multiply(power, step, d);
    if (e > 1) step = multiply(step, step, d);
  }
  // initial^T * M_1 * (M_0 + M_1)^(n-1) * final
  std::vector<std::uint64_t> row(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (!rep.initial[i]) continue;
    for (std::size_t j = 0; j < d; ++j) row[j] += rep.initial[i] * rep.matrices[1][i * d + j];
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (!row[i]) continue;
    for (std::size_t j = 0; j < d; ++j) total += row[i] * power[i * d + j] * rep.final[j];
  }
  return total;
}

}  // namespace wordlogic::automata
