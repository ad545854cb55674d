#include <algorithm>
#include <unordered_map>

#include "wordlogic/automata.hpp"
#include "wordlogic/error.hpp"

namespace wordlogic::automata {

// State k holds the partial value lo + k of the left-hand side. Once the
// partial value is above max(c, N) it can only grow, and once below
// min(c, -P) it can only shrink, so both ends collapse into sinks.
TrackDfa linear_constraint(std::vector<std::string> tracks, std::span<const std::int64_t> coefficients,
                           LinearRelation relation, std::int64_t constant) {
  if (coefficients.size() != tracks.size()) throw ContractError("one coefficient per track expected");
  const std::size_t k = tracks.size();
  std::int64_t positive = 0, negative = 0;
  for (auto a : coefficients) {
    if (a > 0) positive += a;
    else negative -= a;
  }
  const std::int64_t lo = std::min(constant, -positive);
  const std::int64_t hi = std::max(constant, negative);
  if (hi - lo > (std::int64_t{1} << 22)) throw ContractError("linear constraint constants too large");
  const auto span = static_cast<StateId>(hi - lo + 1);
  const StateId below = span, above = span + 1;

  const std::size_t letters = std::size_t{1} << k;
  std::vector<std::int64_t> delta(letters, 0);
  for (Letter x = 0; x < letters; ++x) {
    for (std::size_t t = 0; t < k; ++t) {
      if ((x >> (k - 1 - t)) & 1) delta[x] += coefficients[t];
    }
  }

  // Raw states: value slots, then the two sinks. Initial is the value 0.
  const std::size_t raw = span + 2;
  std::vector<StateId> transitions(raw * letters);
  std::vector<std::uint8_t> accepting(raw, 0);
  for (StateId s = 0; s < span; ++s) {
    const std::int64_t g = lo + s;
    accepting[s] = relation == LinearRelation::kEq ? g == constant : g <= constant;
    for (Letter x = 0; x < letters; ++x) {
      const std::int64_t g2 = 2 * g + delta[x];
      transitions[s * letters + x] =
          g2 < lo ? below : g2 > hi ? above : static_cast<StateId>(g2 - lo);
    }
  }
  for (Letter x = 0; x < letters; ++x) {
    transitions[below * letters + x] = below;
    transitions[above * letters + x] = above;
  }
  accepting[below] = relation == LinearRelation::kLe;

  // Swap the slot for value 0 into position 0.
  const auto zero = static_cast<StateId>(-lo);
  auto relabel = [&](StateId q) { return q == zero ? 0 : q == 0 ? zero : q; };
  std::vector<StateId> table(raw * letters);
  std::vector<std::uint8_t> flags(raw);
  for (StateId q = 0; q < raw; ++q) {
    const StateId r = relabel(q);
    flags[r] = accepting[q];
    for (Letter x = 0; x < letters; ++x) table[r * letters + x] = relabel(transitions[q * letters + x]);
  }
  return minimize(TrackDfa(std::move(tracks), std::move(table), std::move(flags)));
}

namespace {

void require_binary(const sequences::Dfao& d) {
  if (d.base() != 2) throw ContractError("sequence '" + d.name() + "' is not 2-automatic");
}

}  // namespace

TrackDfa sequence_compare(const sequences::Dfao& lhs, const std::string& lhs_track,
                          const sequences::Dfao& rhs, const std::string& rhs_track, bool equal) {
  require_binary(lhs);
  require_binary(rhs);
  const bool same = lhs_track == rhs_track;
  std::vector<std::string> tracks{lhs_track};
  if (!same) tracks.push_back(rhs_track);
  const Letter letters = Letter{1} << tracks.size();

  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<StateId> transitions;
  std::vector<std::uint8_t> accepting;
  auto intern = [&](std::uint32_t p, std::uint32_t q) {
    auto [it, inserted] =
        index.try_emplace(static_cast<std::uint64_t>(p) << 32 | q, static_cast<StateId>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(p, q);
      accepting.push_back((lhs.output(p) == rhs.output(q)) == equal);
    }
    return it->second;
  };
  intern(0, 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (Letter x = 0; x < letters; ++x) {
      const unsigned dl = same ? x : (x >> 1) & 1;
      const unsigned dr = same ? x : x & 1;
      transitions.push_back(intern(lhs.next(p, dl), rhs.next(q, dr)));
    }
  }
  return minimize(TrackDfa(std::move(tracks), std::move(transitions), std::move(accepting)));
}

TrackDfa sequence_constant(const sequences::Dfao& seq, const std::string& track, Symbol symbol,
                           bool equal) {
  require_binary(seq);
  std::vector<StateId> transitions;
  std::vector<std::uint8_t> accepting;
  for (std::uint32_t q = 0; q < seq.num_states(); ++q) {
    transitions.push_back(seq.next(q, 0));
    transitions.push_back(seq.next(q, 1));
    accepting.push_back((seq.output(q) == symbol) == equal);
  }
  return minimize(TrackDfa({track}, std::move(transitions), std::move(accepting)));
}

}  // namespace wordlogic::automata
