#include <algorithm>
#include <optional>
#include <unordered_map>

#include "wordlogic/automata.hpp"
#include "wordlogic/error.hpp"

namespace wordlogic::automata {

namespace {

// For every letter over `target` tracks, the letter over `source` tracks
// obtained by reading each source track's digit (source ⊆ target).
std::vector<Letter> letter_projection(const std::vector<std::string>& target,
                                      const std::vector<std::string>& source) {
  const std::size_t k = target.size();
  std::vector<std::size_t> positions;
  for (const auto& name : source) {
    auto it = std::find(target.begin(), target.end(), name);
    positions.push_back(static_cast<std::size_t>(it - target.begin()));
  }
  std::vector<Letter> out(std::size_t{1} << k);
  for (Letter x = 0; x < out.size(); ++x) {
    Letter y = 0;
    for (std::size_t pos : positions) y = (y << 1) | ((x >> (k - 1 - pos)) & 1);
    out[x] = y;
  }
  return out;
}

bool apply(BoolOp op, bool a, bool b) {
  switch (op) {
    case BoolOp::kAnd: return a && b;
    case BoolOp::kOr: return a || b;
    case BoolOp::kImplies: return !a || b;
    case BoolOp::kIff: return a == b;
  }
  return false;
}

struct VectorHash {
  std::size_t operator()(const std::vector<StateId>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (StateId s : v) {
      h ^= s;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

TrackDfa combine(const TrackDfa& a, const TrackDfa& b, BoolOp op, const Limits& limits) {
  std::vector<std::string> tracks = a.tracks();
  for (const auto& name : b.tracks()) {
    if (!a.track_index(name)) tracks.push_back(name);
  }
  if (tracks.size() > kMaxTracks) throw ContractError("combined automaton has too many tracks");
  const auto to_a = letter_projection(tracks, a.tracks());
  const auto to_b = letter_projection(tracks, b.tracks());
  const std::size_t letters = to_a.size();

  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<StateId> transitions;
  std::vector<std::uint8_t> accepting;
  auto intern = [&](StateId qa, StateId qb) -> StateId {
    const std::uint64_t key = static_cast<std::uint64_t>(qa) * b.num_states() + qb;
    auto [it, inserted] = index.try_emplace(key, static_cast<StateId>(pairs.size()));
    if (inserted) {
      if (pairs.size() >= limits.state_cap) {
        throw ResourceError(CapKind::kStateCap, limits.state_cap, "product construction");
      }
      pairs.emplace_back(qa, qb);
      accepting.push_back(apply(op, a.accepting(qa), b.accepting(qb)));
    }
    return it->second;
  };
  intern(a.initial(), b.initial());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [qa, qb] = pairs[i];
    for (Letter x = 0; x < letters; ++x) {
      transitions.push_back(intern(a.next(qa, to_a[x]), b.next(qb, to_b[x])));
    }
  }
  TrackDfa result(std::move(tracks), std::move(transitions), std::move(accepting));
  if (result.num_states() > limits.minimize_threshold) return minimize(result);
  return result;
}

TrackDfa negate(const TrackDfa& a) {
  std::vector<std::uint8_t> accepting = a.accepting_flags();
  for (auto& flag : accepting) flag = !flag;
  return TrackDfa(a.tracks(), a.transitions(), std::move(accepting));
}

TrackDfa project(const TrackDfa& input, std::string_view track, const Limits& limits) {
  if (!input.track_index(track)) return input;
  // A minimal input has at most one dead and one universal state, which keeps
  // the subsets small: dead states are dropped from every subset, and a subset
  // holding the universal state collapses to it.
  const TrackDfa a = minimize(input);
  const auto erased = a.track_index(track);
  const std::size_t k = a.num_tracks();
  std::vector<std::string> tracks;
  for (const auto& name : a.tracks()) {
    if (name != track) tracks.push_back(name);
  }
  const std::size_t letters = std::size_t{1} << (k - 1);
  const std::size_t low_bits = k - 1 - *erased;  // digits after the erased track
  const Letter erased_bit = Letter{1} << low_bits;
  auto widen = [&](Letter y) {
    const Letter high = (y >> low_bits) << (low_bits + 1);
    const Letter low = y & (erased_bit - 1);
    return high | low;
  };

  // Start set: everything reachable from the initial state on letters that
  // are zero on all remaining tracks.
  std::vector<StateId> start{a.initial()};
  std::vector<std::uint8_t> seen(a.num_states(), 0);
  seen[a.initial()] = 1;
  for (std::size_t i = 0; i < start.size(); ++i) {
    for (Letter x : {Letter{0}, erased_bit}) {
      StateId r = a.next(start[i], x);
      if (!seen[r]) {
        seen[r] = 1;
        start.push_back(r);
      }
    }
  }
  const std::size_t all_letters = std::size_t{1} << k;
  auto absorbing = [&](StateId q) {
    for (Letter x = 0; x < all_letters; ++x) {
      if (a.next(q, x) != q) return false;
    }
    return true;
  };
  std::optional<StateId> dead, full;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!absorbing(q)) continue;
    (a.accepting(q) ? full : dead) = q;
  }
  auto normalize = [&](std::vector<StateId>& subset) {
    if (full && std::find(subset.begin(), subset.end(), *full) != subset.end()) {
      subset.assign(1, *full);
      return;
    }
    if (dead) std::erase(subset, *dead);
    std::sort(subset.begin(), subset.end());
  };
  normalize(start);

  std::unordered_map<std::vector<StateId>, StateId, VectorHash> index;
  std::vector<const std::vector<StateId>*> subsets;
  std::vector<StateId> transitions;
  std::vector<std::uint8_t> accepting;
  std::vector<std::uint32_t> stamp(a.num_states(), 0);
  std::uint32_t epoch = 0;

  auto intern = [&](std::vector<StateId>&& subset) -> StateId {
    auto [it, inserted] = index.try_emplace(std::move(subset), static_cast<StateId>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= limits.state_cap) {
        throw ResourceError(CapKind::kStateCap, limits.state_cap,
                            "subset construction projecting '" + std::string(track) + "'");
      }
      subsets.push_back(&it->first);
      bool acc = std::any_of(it->first.begin(), it->first.end(),
                             [&](StateId q) { return a.accepting(q); });
      accepting.push_back(acc);
    }
    return it->second;
  };
  intern(std::move(start));
  std::vector<StateId> successor;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter y = 0; y < letters; ++y) {
      const Letter x0 = widen(y);
      ++epoch;
      successor.clear();
      for (StateId q : *subsets[i]) {
        for (Letter x : {x0, x0 | erased_bit}) {
          StateId r = a.next(q, x);
          if (stamp[r] != epoch) {
            stamp[r] = epoch;
            successor.push_back(r);
          }
        }
      }
      normalize(successor);
      auto found = index.find(successor);
      transitions.push_back(found != index.end() ? found->second
                                                 : intern(std::vector<StateId>(successor)));
    }
  }
  return minimize(TrackDfa(std::move(tracks), std::move(transitions), std::move(accepting)));
}

TrackDfa reorder_tracks(const TrackDfa& a, std::span<const std::string> order) {
  std::vector<std::string> target(order.begin(), order.end());
  if (target.size() != a.num_tracks()) throw ContractError("reorder must list every track");
  for (const auto& name : target) {
    if (!a.track_index(name)) throw ContractError("reorder names unknown track '" + name + "'");
  }
  if (target == a.tracks()) return a;
  const auto to_a = letter_projection(target, a.tracks());
  const std::size_t letters = to_a.size();
  std::vector<StateId> transitions(a.num_states() * letters);
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (Letter x = 0; x < letters; ++x) transitions[q * letters + x] = a.next(q, to_a[x]);
  }
  return TrackDfa(std::move(target), std::move(transitions), a.accepting_flags());
}

TrackDfa rename_track(const TrackDfa& a, std::string_view from, std::string to) {
  auto index = a.track_index(from);
  if (!index) throw ContractError("rename of unknown track '" + std::string(from) + "'");
  std::vector<std::string> tracks = a.tracks();
  tracks[*index] = std::move(to);
  return TrackDfa(std::move(tracks), a.transitions(), a.accepting_flags());
}

TrackDfa add_tracks(const TrackDfa& a, std::span<const std::string> names) {
  std::vector<std::string> tracks = a.tracks();
  for (const auto& name : names) {
    if (std::find(tracks.begin(), tracks.end(), name) == tracks.end()) tracks.push_back(name);
  }
  if (tracks.size() == a.num_tracks()) return a;
  if (tracks.size() > kMaxTracks) throw ContractError("too many tracks");
  const auto to_a = letter_projection(tracks, a.tracks());
  const std::size_t letters = to_a.size();
  std::vector<StateId> transitions(a.num_states() * letters);
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (Letter x = 0; x < letters; ++x) transitions[q * letters + x] = a.next(q, to_a[x]);
  }
  return TrackDfa(std::move(tracks), std::move(transitions), a.accepting_flags());
}

}  // namespace wordlogic::automata
