#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordlogic {

using Symbol = std::uint32_t;

/// A finite word over the alphabet {0, ..., k-1}. Indexing is 0-based.
class Word {
 public:
  Word() = default;
  /// Throws ContractError if k == 0 or some symbol is >= k.
  Word(std::vector<Symbol> symbols, unsigned alphabet_size);

  /// Parses digits "0021" (k <= 10), comma-separated naturals "3,11,0"
  /// or lowercase letters "alfalfa" (a -> 0, ..., alphabet of 26).
  /// When `alphabet_size` is absent it is inferred: 26 for letters,
  /// otherwise max(2, largest symbol + 1).
  static Word parse(std::string_view text,
                    std::optional<unsigned> alphabet_size = std::nullopt);

  /// `count` copies of `symbol`.
  static Word repeat(Symbol symbol, std::size_t count, unsigned alphabet_size);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  unsigned alphabet_size() const { return alphabet_size_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  Word slice(std::size_t pos, std::size_t len) const;
  Word operator+(const Word& other) const;

  /// Digits when k <= 10, comma-separated naturals otherwise.
  std::string to_string() const;
  /// a, b, c, ... rendering; symbols must be < 26.
  std::string to_letters() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Symbol> symbols_;
  unsigned alphabet_size_ = 2;
};

}  // namespace wordlogic
