#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordlogic/sequences.hpp"

// Multi-track DFAs over msd-first, zero-padded base-2 digit tuples.
//
// A letter is a digit tuple packed into an integer with track 0 in the most
// significant bit, so the letter order is the lexicographic tuple order.
// Every automaton is padding-closed: prepending the all-zero tuple never
// changes acceptance, and the natural-number tuple encoded by a word does
// not depend on how many leading zeros it carries.
namespace wordlogic::automata {

using StateId = std::uint32_t;
using Letter = std::uint32_t;

inline constexpr std::size_t kMaxTracks = 16;

struct Limits {
  std::size_t state_cap = std::size_t{1} << 20;
  std::size_t minimize_threshold = 4096;
};

class TrackDfa {
 public:
  /// State 0 is initial. `transitions` has num_states * 2^|tracks| entries.
  TrackDfa(std::vector<std::string> tracks, std::vector<StateId> transitions,
           std::vector<std::uint8_t> accepting);

  const std::vector<std::string>& tracks() const { return tracks_; }
  std::size_t num_tracks() const { return tracks_.size(); }
  Letter alphabet_size() const { return Letter{1} << tracks_.size(); }
  std::size_t num_states() const { return accepting_.size(); }
  StateId initial() const { return 0; }
  StateId next(StateId q, Letter a) const {
    return transitions_[static_cast<std::size_t>(q) * alphabet_size() + a];
  }
  bool accepting(StateId q) const { return accepting_[q] != 0; }
  std::optional<std::size_t> track_index(std::string_view name) const;

  StateId run(std::span<const Letter> word) const;
  bool accepts(std::span<const Letter> word) const { return accepting(run(word)); }
  /// `values` in track order; encoded with max bit-length digits.
  bool accepts_values(std::span<const std::uint64_t> values) const;

  const std::vector<StateId>& transitions() const { return transitions_; }
  const std::vector<std::uint8_t>& accepting_flags() const { return accepting_; }

  friend bool operator==(const TrackDfa&, const TrackDfa&) = default;

 private:
  std::vector<std::string> tracks_;
  std::vector<StateId> transitions_;
  std::vector<std::uint8_t> accepting_;
};

/// msd-first encoding of a value tuple into `length` letters (length 0
/// means the minimal canonical length).
std::vector<Letter> encode(std::span<const std::uint64_t> values, std::size_t length = 0);
std::vector<std::uint64_t> decode(std::span<const Letter> word, std::size_t num_tracks);

TrackDfa universal(std::vector<std::string> tracks);
TrackDfa empty_language(std::vector<std::string> tracks);

enum class BoolOp { kAnd, kOr, kImplies, kIff };

/// Product automaton; tracks are aligned by name and a track missing on one
/// side is ignored by that side. Result tracks: a's, then b's new ones.
TrackDfa combine(const TrackDfa& a, const TrackDfa& b, BoolOp op, const Limits& limits = {});
TrackDfa negate(const TrackDfa& a);

/// Existential quantification of `track`: erase it, determinize, and
/// saturate the start set with every state reachable on letters that are
/// zero on the remaining tracks (the erased value may need more digits).
TrackDfa project(const TrackDfa& a, std::string_view track, const Limits& limits = {});

/// Minimal equivalent DFA; states numbered in BFS order from the initial
/// state, visiting letters in increasing order.
TrackDfa minimize(const TrackDfa& a);

TrackDfa reorder_tracks(const TrackDfa& a, std::span<const std::string> order);
TrackDfa rename_track(const TrackDfa& a, std::string_view from, std::string to);
/// Adds tracks the language does not depend on.
TrackDfa add_tracks(const TrackDfa& a, std::span<const std::string> names);

bool is_padding_closed(const TrackDfa& a);
bool equivalent(const TrackDfa& a, const TrackDfa& b);

struct Decision {
  bool nonempty = false;
  /// Length-lexicographically least accepted tuple, in track order.
  std::vector<std::uint64_t> witness;
};
Decision decide(const TrackDfa& a);

/// Accepted tuples in increasing canonical bit-length, then lexicographic
/// order of the digit-tuple word. Stops after `limit` tuples or after all
/// lengths up to `max_bits` are exhausted.
std::vector<std::vector<std::uint64_t>> enumerate(const TrackDfa& a, std::size_t limit,
                                                  std::size_t max_bits = 64);

/// Accepted values <= bound of a single-track automaton, increasing.
std::vector<std::uint64_t> accepted_values_upto(const TrackDfa& a, std::uint64_t bound);

/// Transition-count matrices per letter with initial and final vectors.
struct LinearRep {
  std::size_t dimension = 0;
  std::vector<std::vector<std::uint64_t>> matrices;  // row-major, per letter
  std::vector<std::uint64_t> initial;
  std::vector<std::uint64_t> final;
};
LinearRep linear_representation(const TrackDfa& a);

/// Number of accepted values with exactly n binary digits (values in
/// [2^(n-1), 2^n); n = 0 counts the value 0). Single-track only, n <= 64.
std::uint64_t count_by_bitlength(const TrackDfa& a, std::size_t n);

/// Linear constraint sum(coefficients[t] * x_t) (= or <=) constant over
/// the given tracks, as a digit-serial automaton whose state is the partial
/// value of the left-hand side.
enum class LinearRelation { kEq, kLe };
TrackDfa linear_constraint(std::vector<std::string> tracks, std::span<const std::int64_t> coefficients,
                           LinearRelation relation, std::int64_t constant);

/// S1[x] (= or !=) S2[y] by DFAO product; x == y yields a one-track automaton.
TrackDfa sequence_compare(const sequences::Dfao& lhs, const std::string& lhs_track,
                          const sequences::Dfao& rhs, const std::string& rhs_track, bool equal);
/// S[x] (= or !=) symbol.
TrackDfa sequence_constant(const sequences::Dfao& seq, const std::string& track, Symbol symbol,
                           bool equal);

/// Exchange format: header `msd_2 <tracks...>`, then per state
/// `q<i> <0|1>` followed by one `t<digit-tuple> -> q<j>` line per letter.
void write_text(std::ostream& out, const TrackDfa& a);
TrackDfa read_text(std::istream& in);
std::string to_text(const TrackDfa& a);
void write_dot(std::ostream& out, const TrackDfa& a);

}  // namespace wordlogic::automata
