#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wordlogic/word.hpp"

namespace wordlogic::sequences {

/// Default cap on generated prefix lengths.
inline constexpr std::size_t kDefaultPrefixCap = std::size_t{1} << 24;

/// Letter-to-word substitution over Σ_k.
class Morphism {
 public:
  Morphism(unsigned alphabet_size, std::vector<Word> images);

  /// One line per symbol: `0 -> 01`. Blank lines and `#` comments skipped.
  static Morphism parse(std::string_view text);

  unsigned alphabet_size() const { return alphabet_size_; }
  const Word& image(Symbol s) const { return images_.at(s); }
  Word apply(const Word& w) const;
  bool is_uniform(std::size_t length) const;
  bool prolongable_on(Symbol seed) const;

  std::string to_text() const;

 private:
  unsigned alphabet_size_;
  std::vector<Word> images_;
};

/// Letter-to-letter substitution.
class Coding {
 public:
  Coding(std::vector<Symbol> table, unsigned output_alphabet_size);
  static Coding identity(unsigned alphabet_size);
  static Coding parse(std::string_view text);

  Symbol operator()(Symbol s) const { return table_.at(s); }
  std::size_t domain_size() const { return table_.size(); }
  unsigned output_alphabet_size() const { return output_alphabet_size_; }
  Word apply(const Word& w) const;

 private:
  std::vector<Symbol> table_;
  unsigned output_alphabet_size_;
};

/// Deterministic finite automaton with output reading base-k digits,
/// most significant first. State 0 is initial. The constructor enforces
/// transition(0, 0) == 0 so that leading zeros never matter.
class Dfao {
 public:
  Dfao(unsigned base, std::vector<std::uint32_t> transitions, std::vector<Symbol> outputs,
       std::string name = "S");

  unsigned base() const { return base_; }
  std::size_t num_states() const { return outputs_.size(); }
  std::uint32_t next(std::uint32_t state, unsigned digit) const {
    return transitions_[static_cast<std::size_t>(state) * base_ + digit];
  }
  Symbol output(std::uint32_t state) const { return outputs_[state]; }
  const std::string& name() const { return name_; }

  /// Value at index n, fed as (n)_k msd-first; (0)_k is empty.
  Symbol eval(std::uint64_t n) const;
  Word prefix(std::size_t len) const;

  friend bool operator==(const Dfao&, const Dfao&) = default;

 private:
  unsigned base_;
  std::vector<std::uint32_t> transitions_;
  std::vector<Symbol> outputs_;
  std::string name_;
};

/// Length-`len` prefix of m^ω(seed). Throws ContractError when m is not
/// prolongable on seed and ResourceError past `cap`.
Word fixed_point_prefix(const Morphism& m, Symbol seed, std::size_t len,
                        std::size_t cap = kDefaultPrefixCap);

/// μ: 0 -> 01, 1 -> 10.
Morphism thue_morse_morphism();
/// φ: 0 -> 01, 1 -> 20, 2 -> 23, 3 -> 02.
Morphism ternary_thue_morse_morphism();
/// τ: 0 -> 2, 1 -> 1, 2 -> 0, 3 -> 1.
Coding ternary_thue_morse_coding();

/// Prefix of t by block doubling: t_{j+1} = t_j · complement(t_j).
Word thue_morse_prefix(std::size_t len, std::size_t cap = kDefaultPrefixCap);

enum class TernaryMethod { kGapCount, kCodedFixedPoint, kDfao };

/// Prefix of the ternary Thue-Morse word c. All methods agree.
Word ternary_thue_morse_prefix(std::size_t len, TernaryMethod method,
                               std::size_t cap = kDefaultPrefixCap);

/// Cobham construction: states are the morphism's letters with `seed` as
/// the initial state; transition(q, d) = m(q)[d]; output is the coding.
Dfao dfao_from_uniform_morphism(const Morphism& m, const Coding& coding, Symbol seed = 0,
                                std::string name = "S");

Dfao thue_morse_dfao();
Dfao ternary_thue_morse_dfao();

Symbol dfao_eval(const Dfao& d, std::uint64_t n);

/// Exchange format shared with the automata module: header
/// `msd_<base> <name>`, then per state `q<i> <output>` followed by its
/// transitions `t<digit> -> q<j>`.
void write_dfao(std::ostream& out, const Dfao& d);
Dfao read_dfao(std::istream& in);

}  // namespace wordlogic::sequences
