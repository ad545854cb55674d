#include "wordlogic/sequences.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "wordlogic/error.hpp"

namespace wordlogic::sequences {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses "symbol -> image" lines into an ordered map.
std::map<Symbol, std::string> parse_rules(std::string_view text) {
  std::map<Symbol, std::string> rules;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    auto arrow = body.find("->");
    if (arrow == std::string_view::npos) {
      throw ParseError({line_no, 1}, "expected 'symbol -> image'");
    }
    std::string lhs(trim(body.substr(0, arrow)));
    std::string rhs(trim(body.substr(arrow + 2)));
    Symbol s = 0;
    try {
      s = static_cast<Symbol>(std::stoul(lhs));
    } catch (const std::exception&) {
      throw ParseError({line_no, 1}, "bad symbol '" + lhs + "'");
    }
    if (!rules.emplace(s, rhs).second) {
      throw ParseError({line_no, 1}, "duplicate rule for symbol " + lhs);
    }
  }
  for (Symbol expected = 0; const auto& [s, image] : rules) {
    if (s != expected++) throw ParseError({1, 1}, "rules must cover symbols 0..k-1");
  }
  return rules;
}

}  // namespace

Morphism::Morphism(unsigned alphabet_size, std::vector<Word> images)
    : alphabet_size_(alphabet_size), images_(std::move(images)) {
  if (images_.size() != alphabet_size_) {
    throw ContractError("morphism needs one image per symbol");
  }
  for (const auto& image : images_) {
    for (Symbol s : image) {
      if (s >= alphabet_size_) throw ContractError("morphism image leaves the alphabet");
    }
  }
}

Morphism Morphism::parse(std::string_view text) {
  auto rules = parse_rules(text);
  const auto k = static_cast<unsigned>(rules.size());
  std::vector<Word> images;
  for (const auto& [s, image] : rules) images.push_back(Word::parse(image, k));
  return Morphism(k, std::move(images));
}

Word Morphism::apply(const Word& w) const {
  std::vector<Symbol> out;
  for (Symbol s : w) {
    const Word& image = images_.at(s);
    out.insert(out.end(), image.begin(), image.end());
  }
  return Word(std::move(out), alphabet_size_);
}

bool Morphism::is_uniform(std::size_t length) const {
  return std::all_of(images_.begin(), images_.end(),
                     [length](const Word& w) { return w.size() == length; });
}

bool Morphism::prolongable_on(Symbol seed) const {
  if (seed >= alphabet_size_) return false;
  const Word& image = images_[seed];
  return image.size() >= 2 && image[0] == seed;
}

std::string Morphism::to_text() const {
  std::string out;
  for (Symbol s = 0; s < alphabet_size_; ++s) {
    out += std::to_string(s) + " -> " + images_[s].to_string() + "\n";
  }
  return out;
}

Coding::Coding(std::vector<Symbol> table, unsigned output_alphabet_size)
    : table_(std::move(table)), output_alphabet_size_(output_alphabet_size) {
  for (Symbol s : table_) {
    if (s >= output_alphabet_size_) throw ContractError("coding output leaves its alphabet");
  }
}

Coding Coding::identity(unsigned alphabet_size) {
  std::vector<Symbol> table(alphabet_size);
  for (Symbol s = 0; s < alphabet_size; ++s) table[s] = s;
  return Coding(std::move(table), alphabet_size);
}

Coding Coding::parse(std::string_view text) {
  std::vector<Symbol> table;
  Symbol largest = 0;
  for (const auto& [s, image] : parse_rules(text)) {
    Word w = Word::parse(image);
    if (w.size() != 1) throw ParseError({1, 1}, "coding images must be single symbols");
    table.push_back(w[0]);
    largest = std::max(largest, w[0]);
  }
  return Coding(std::move(table), std::max<unsigned>(2, largest + 1));
}

Word Coding::apply(const Word& w) const {
  std::vector<Symbol> out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(table_.at(s));
  return Word(std::move(out), output_alphabet_size_);
}

Dfao::Dfao(unsigned base, std::vector<std::uint32_t> transitions, std::vector<Symbol> outputs,
           std::string name)
    : base_(base), transitions_(std::move(transitions)), outputs_(std::move(outputs)),
      name_(std::move(name)) {
  if (base_ < 2) throw ContractError("DFAO base must be at least 2");
  if (outputs_.empty()) throw ContractError("DFAO needs at least one state");
  if (transitions_.size() != outputs_.size() * base_) {
    throw ContractError("DFAO transition table must be total");
  }
  for (auto target : transitions_) {
    if (target >= outputs_.size()) throw ContractError("DFAO transition to unknown state");
  }
  if (transitions_[0] != 0) {
    throw ContractError("DFAO initial state must loop on digit 0");
  }
}

Symbol Dfao::eval(std::uint64_t n) const {
  std::vector<unsigned> digits;
  for (; n > 0; n /= base_) digits.push_back(static_cast<unsigned>(n % base_));
  std::uint32_t state = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) state = next(state, *it);
  return outputs_[state];
}

Word Dfao::prefix(std::size_t len) const {
  Symbol largest = 0;
  for (Symbol s : outputs_) largest = std::max(largest, s);
  std::vector<Symbol> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = eval(i);
  return Word(std::move(out), std::max<unsigned>(2, largest + 1));
}

Word fixed_point_prefix(const Morphism& m, Symbol seed, std::size_t len, std::size_t cap) {
  if (!m.prolongable_on(seed)) {
    throw ContractError("morphism is not prolongable on symbol " + std::to_string(seed));
  }
  if (len > cap) throw ResourceError(CapKind::kPrefixLength, cap, "fixed point prefix");
  const Word& start = m.image(seed);
  std::vector<Symbol> buf(start.begin(), start.end());
  for (std::size_t pos = 1; buf.size() < len; ++pos) {
    const Word& image = m.image(buf[pos]);
    buf.insert(buf.end(), image.begin(), image.end());
  }
  if (len == 0) return Word({}, m.alphabet_size());
  buf.resize(len);
  return Word(std::move(buf), m.alphabet_size());
}

Morphism thue_morse_morphism() {
  return Morphism(2, {Word::parse("01", 2), Word::parse("10", 2)});
}

Morphism ternary_thue_morse_morphism() {
  return Morphism(4, {Word::parse("01", 4), Word::parse("20", 4), Word::parse("23", 4),
                      Word::parse("02", 4)});
}

Coding ternary_thue_morse_coding() { return Coding({2, 1, 0, 1}, 3); }

Word thue_morse_prefix(std::size_t len, std::size_t cap) {
  if (len > cap) throw ResourceError(CapKind::kPrefixLength, cap, "Thue-Morse prefix");
  std::vector<Symbol> t{0};
  while (t.size() < len) {
    const std::size_t half = t.size();
    for (std::size_t i = 0; i < half; ++i) t.push_back(1 - t[i]);
  }
  t.resize(len);
  return Word(std::move(t), 2);
}

Word ternary_thue_morse_prefix(std::size_t len, TernaryMethod method, std::size_t cap) {
  if (len > cap) throw ResourceError(CapKind::kPrefixLength, cap, "ternary Thue-Morse prefix");
  switch (method) {
    case TernaryMethod::kGapCount: {
      // c[i] is the number of 1s between the i-th and (i+1)-th 0 of t.
      std::vector<Symbol> out;
      out.reserve(len);
      std::vector<Symbol> t{0};
      std::size_t pos = 1;
      Symbol ones = 0;
      while (out.size() < len) {
        if (pos == t.size()) {
          const std::size_t half = t.size();
          for (std::size_t i = 0; i < half; ++i) t.push_back(1 - t[i]);
        }
        if (t[pos++] == 0) {
          out.push_back(ones);
          ones = 0;
        } else {
          ++ones;
        }
      }
      return Word(std::move(out), 3);
    }
    case TernaryMethod::kCodedFixedPoint:
      return ternary_thue_morse_coding().apply(
          fixed_point_prefix(ternary_thue_morse_morphism(), 0, len, cap));
    case TernaryMethod::kDfao: {
      Word w = ternary_thue_morse_dfao().prefix(len);
      return Word(std::vector<Symbol>(w.begin(), w.end()), 3);
    }
  }
  throw ContractError("unknown method");
}

Dfao dfao_from_uniform_morphism(const Morphism& m, const Coding& coding, Symbol seed,
                                std::string name) {
  const unsigned k = static_cast<unsigned>(m.image(0).size());
  if (k < 2 || !m.is_uniform(k)) throw ContractError("morphism is not k-uniform with k >= 2");
  if (coding.domain_size() != m.alphabet_size()) {
    throw ContractError("coding domain does not match the morphism alphabet");
  }
  if (m.image(seed)[0] != seed) throw ContractError("seed image must start with the seed");

  // Renumber so the seed becomes state 0.
  const unsigned n = m.alphabet_size();
  std::vector<std::uint32_t> to_state(n), to_symbol(n);
  for (Symbol s = 0, next = 1; s < n; ++s) {
    to_state[s] = (s == seed) ? 0 : next++;
  }
  for (Symbol s = 0; s < n; ++s) to_symbol[to_state[s]] = s;

  std::vector<std::uint32_t> transitions(static_cast<std::size_t>(n) * k);
  std::vector<Symbol> outputs(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    const Word& image = m.image(to_symbol[q]);
    for (unsigned d = 0; d < k; ++d) transitions[q * k + d] = to_state[image[d]];
    outputs[q] = coding(to_symbol[q]);
  }
  return Dfao(k, std::move(transitions), std::move(outputs), std::move(name));
}

Dfao thue_morse_dfao() {
  return dfao_from_uniform_morphism(thue_morse_morphism(), Coding::identity(2), 0, "T");
}

Dfao ternary_thue_morse_dfao() {
  return dfao_from_uniform_morphism(ternary_thue_morse_morphism(), ternary_thue_morse_coding(),
                                    0, "C");
}

Symbol dfao_eval(const Dfao& d, std::uint64_t n) { return d.eval(n); }

void write_dfao(std::ostream& out, const Dfao& d) {
  out << "msd_" << d.base() << ' ' << d.name() << '\n';
  for (std::uint32_t q = 0; q < d.num_states(); ++q) {
    out << 'q' << q << ' ' << d.output(q) << '\n';
    for (unsigned digit = 0; digit < d.base(); ++digit) {
      out << 't' << digit << " -> q" << d.next(q, digit) << '\n';
    }
  }
}

Dfao read_dfao(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (!trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError({1, 1}, "empty DFAO file");
  std::istringstream header(line);
  std::string base_tag, name;
  header >> base_tag >> name;
  if (base_tag.rfind("msd_", 0) != 0 || name.empty()) {
    throw ParseError({line_no, 1}, "expected header 'msd_<base> <name>'");
  }
  const unsigned base = static_cast<unsigned>(std::stoul(base_tag.substr(4)));
  std::vector<Symbol> outputs;
  std::vector<std::uint32_t> transitions;
  std::vector<std::uint8_t> given;
  while (next_line()) {
    std::istringstream row(line);
    std::string head;
    row >> head;
    if (head.size() > 1 && head[0] == 'q') {
      if (std::stoul(head.substr(1)) != outputs.size()) {
        throw ParseError({line_no, 1}, "states must be listed as q0, q1, ... in order");
      }
      Symbol output = 0;
      if (!(row >> output)) throw ParseError({line_no, 1}, "missing state output");
      outputs.push_back(output);
      transitions.resize(outputs.size() * base, 0);
      given.resize(outputs.size() * base, 0);
    } else if (head.size() > 1 && head[0] == 't') {
      if (outputs.empty()) throw ParseError({line_no, 1}, "transition before any state");
      std::string arrow, target;
      row >> arrow >> target;
      const auto digit = static_cast<unsigned>(std::stoul(head.substr(1)));
      if (arrow != "->" || target.size() < 2 || target[0] != 'q' || digit >= base) {
        throw ParseError({line_no, 1}, "expected 't<digit> -> q<j>'");
      }
      const std::size_t slot = (outputs.size() - 1) * base + digit;
      if (given[slot]++) throw ParseError({line_no, 1}, "duplicate transition");
      transitions[slot] = static_cast<std::uint32_t>(std::stoul(target.substr(1)));
    } else {
      throw ParseError({line_no, 1}, "unexpected line '" + line + "'");
    }
  }
  if (std::find(given.begin(), given.end(), 0) != given.end()) {
    throw ParseError({line_no, 1}, "some state lacks a transition");
  }
  try {
    return Dfao(base, std::move(transitions), std::move(outputs), name);
  } catch (const ContractError& e) {
    throw ParseError({line_no, 1}, e.what());
  }
}

}  // namespace wordlogic::sequences
