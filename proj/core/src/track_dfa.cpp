#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "wordlogic/automata.hpp"
#include "wordlogic/error.hpp"

namespace wordlogic::automata {

TrackDfa::TrackDfa(std::vector<std::string> tracks, std::vector<StateId> transitions,
                   std::vector<std::uint8_t> accepting)
    : tracks_(std::move(tracks)), transitions_(std::move(transitions)),
      accepting_(std::move(accepting)) {
  if (tracks_.size() > kMaxTracks) {
    throw ContractError("too many tracks (" + std::to_string(tracks_.size()) + ")");
  }
  std::set<std::string_view> seen;
  for (const auto& name : tracks_) {
    if (name.empty()) throw ContractError("empty track name");
    if (!seen.insert(name).second) throw ContractError("duplicate track name '" + name + "'");
  }
  if (accepting_.empty()) throw ContractError("automaton needs at least one state");
  if (transitions_.size() != accepting_.size() * alphabet_size()) {
    throw ContractError("transition table must be total");
  }
  for (StateId q : transitions_) {
    if (q >= accepting_.size()) throw ContractError("transition to unknown state");
  }
}

std::optional<std::size_t> TrackDfa::track_index(std::string_view name) const {
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (tracks_[i] == name) return i;
  }
  return std::nullopt;
}

StateId TrackDfa::run(std::span<const Letter> word) const {
  StateId q = initial();
  for (Letter a : word) {
    if (a >= alphabet_size()) throw ContractError("letter outside the tuple alphabet");
    q = next(q, a);
  }
  return q;
}

bool TrackDfa::accepts_values(std::span<const std::uint64_t> values) const {
  if (values.size() != num_tracks()) throw ContractError("one value per track expected");
  return accepts(encode(values));
}

std::vector<Letter> encode(std::span<const std::uint64_t> values, std::size_t length) {
  std::size_t bits = 0;
  for (auto v : values) {
    std::size_t b = 0;
    for (; v > 0; v >>= 1) ++b;
    bits = std::max(bits, b);
  }
  if (length == 0) length = bits;
  if (length < bits) throw ContractError("encoding length too short for the values");
  std::vector<Letter> word(length, 0);
  const std::size_t k = values.size();
  for (std::size_t pos = 0; pos < length; ++pos) {
    const std::size_t shift = length - 1 - pos;
    Letter letter = 0;
    for (std::size_t t = 0; t < k; ++t) {
      const std::uint64_t bit = shift < 64 ? (values[t] >> shift) & 1 : 0;
      letter = (letter << 1) | static_cast<Letter>(bit);
    }
    word[pos] = letter;
  }
  return word;
}

std::vector<std::uint64_t> decode(std::span<const Letter> word, std::size_t num_tracks) {
  std::vector<std::uint64_t> values(num_tracks, 0);
  for (Letter letter : word) {
    for (std::size_t t = 0; t < num_tracks; ++t) {
      values[t] = (values[t] << 1) | ((letter >> (num_tracks - 1 - t)) & 1);
    }
  }
  return values;
}

namespace {
TrackDfa constant_language(std::vector<std::string> tracks, bool accept) {
  const std::size_t letters = std::size_t{1} << tracks.size();
  return TrackDfa(std::move(tracks), std::vector<StateId>(letters, 0),
                  std::vector<std::uint8_t>{static_cast<std::uint8_t>(accept)});
}

std::string letter_digits(Letter a, std::size_t k) {
  std::string s(k, '0');
  for (std::size_t t = 0; t < k; ++t) {
    if ((a >> (k - 1 - t)) & 1) s[t] = '1';
  }
  return s;
}
}  // namespace

TrackDfa universal(std::vector<std::string> tracks) {
  return constant_language(std::move(tracks), true);
}

TrackDfa empty_language(std::vector<std::string> tracks) {
  return constant_language(std::move(tracks), false);
}

void write_text(std::ostream& out, const TrackDfa& a) {
  out << "msd_2";
  for (const auto& t : a.tracks()) out << ' ' << t;
  out << '\n';
  const std::size_t k = a.num_tracks();
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << 'q' << q << ' ' << (a.accepting(q) ? 1 : 0) << '\n';
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      out << 't' << letter_digits(x, k) << " -> q" << a.next(q, x) << '\n';
    }
  }
}

std::string to_text(const TrackDfa& a) {
  std::ostringstream out;
  write_text(out, a);
  return out.str();
}

TrackDfa read_text(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError({1, 1}, "empty automaton file");
  std::istringstream header(line);
  std::string tag;
  header >> tag;
  if (tag != "msd_2") throw ParseError({line_no, 1}, "expected header 'msd_2 <tracks>'");
  std::vector<std::string> tracks;
  for (std::string name; header >> name;) tracks.push_back(name);
  if (tracks.size() > kMaxTracks) throw ParseError({line_no, 1}, "too many tracks");
  const std::size_t k = tracks.size();
  const std::size_t letters = std::size_t{1} << k;

  std::vector<std::uint8_t> accepting;
  std::vector<StateId> transitions;
  std::vector<std::size_t> filled;
  while (next_line()) {
    std::istringstream row(line);
    std::string head;
    row >> head;
    if (head.size() > 1 && head[0] == 'q') {
      if (std::stoul(head.substr(1)) != accepting.size()) {
        throw ParseError({line_no, 1}, "states must be listed as q0, q1, ... in order");
      }
      int flag = -1;
      row >> flag;
      if (flag != 0 && flag != 1) throw ParseError({line_no, 1}, "acceptance must be 0 or 1");
      accepting.push_back(static_cast<std::uint8_t>(flag));
      transitions.resize(accepting.size() * letters, 0);
      filled.push_back(0);
    } else if (!head.empty() && head[0] == 't') {
      if (accepting.empty()) throw ParseError({line_no, 1}, "transition before any state");
      std::string digits = head.substr(1);
      std::string arrow, target;
      row >> arrow >> target;
      if (digits.size() != k || arrow != "->" || target.size() < 2 || target[0] != 'q' ||
          digits.find_first_not_of("01") != std::string::npos) {
        throw ParseError({line_no, 1}, "expected 't<digit-tuple> -> q<j>'");
      }
      Letter x = 0;
      for (char c : digits) x = (x << 1) | static_cast<Letter>(c - '0');
      transitions[(accepting.size() - 1) * letters + x] =
          static_cast<StateId>(std::stoul(target.substr(1)));
      ++filled.back();
    } else {
      throw ParseError({line_no, 1}, "unexpected line '" + line + "'");
    }
  }
  for (std::size_t q = 0; q < filled.size(); ++q) {
    if (filled[q] != letters) {
      throw ParseError({line_no, 1}, "state q" + std::to_string(q) + " lacks transitions");
    }
  }
  try {
    return TrackDfa(std::move(tracks), std::move(transitions), std::move(accepting));
  } catch (const ContractError& e) {
    throw ParseError({line_no, 1}, e.what());
  }
}

void write_dot(std::ostream& out, const TrackDfa& a) {
  out << "digraph automaton {\n  rankdir=LR;\n  label=\"msd_2";
  for (const auto& t : a.tracks()) out << ' ' << t;
  out << "\";\n  start [shape=point];\n  start -> q0;\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "  q" << q << " [shape=" << (a.accepting(q) ? "doublecircle" : "circle") << "];\n";
  }
  const std::size_t k = a.num_tracks();
  for (StateId q = 0; q < a.num_states(); ++q) {
    // Group letters by target to keep the picture readable.
    std::vector<std::string> labels(a.num_states());
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      auto& label = labels[a.next(q, x)];
      if (!label.empty()) label += ",";
      label += letter_digits(x, k);
    }
    for (StateId r = 0; r < a.num_states(); ++r) {
      if (!labels[r].empty()) {
        out << "  q" << q << " -> q" << r << " [label=\"" << labels[r] << "\"];\n";
      }
    }
  }
  out << "}\n";
}

}  // namespace wordlogic::automata
