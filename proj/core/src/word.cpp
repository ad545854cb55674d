#include "wordlogic/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "wordlogic/error.hpp"

namespace wordlogic {

const char* to_string(CapKind kind) {
  switch (kind) {
    case CapKind::kEnumerationBudget: return "enumeration-budget";
    case CapKind::kStateCap: return "state-cap";
    case CapKind::kPrefixLength: return "prefix-length";
    case CapKind::kSearchBound: return "search-bound";
  }
  return "unknown";
}

ResourceError::ResourceError(CapKind kind, std::uint64_t cap, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " " + std::to_string(cap) +
                         " exceeded: " + what),
      kind_(kind),
      cap_(cap),
      detail_(what) {}

ParseError::ParseError(SourcePos pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                         ": " + message),
      pos_(pos),
      message_(message) {}

Word::Word(std::vector<Symbol> symbols, unsigned alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ == 0) throw ContractError("alphabet size must be at least 1");
  for (Symbol s : symbols_) {
    if (s >= alphabet_size_) {
      throw ContractError("symbol " + std::to_string(s) + " outside alphabet of size " +
                          std::to_string(alphabet_size_));
    }
  }
}

Word Word::parse(std::string_view text, std::optional<unsigned> alphabet_size) {
  std::vector<Symbol> symbols;
  unsigned inferred = 2;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view item = text.substr(pos, comma - pos);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
      Symbol value = 0;
      auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
        throw ContractError("bad symbol '" + std::string(item) + "' in word");
      }
      symbols.push_back(value);
      inferred = std::max<unsigned>(inferred, value + 1);
      pos = comma + 1;
    }
  } else if (!text.empty() && std::islower(static_cast<unsigned char>(text.front()))) {
    for (char ch : text) {
      if (!std::islower(static_cast<unsigned char>(ch))) {
        throw ContractError("mixed letters and digits in word '" + std::string(text) + "'");
      }
      symbols.push_back(static_cast<Symbol>(ch - 'a'));
    }
    inferred = 26;
  } else {
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw ContractError("bad character '" + std::string(1, ch) + "' in word");
      }
      symbols.push_back(static_cast<Symbol>(ch - '0'));
      inferred = std::max<unsigned>(inferred, symbols.back() + 1);
    }
  }
  return Word(std::move(symbols), alphabet_size.value_or(inferred));
}

Word Word::repeat(Symbol symbol, std::size_t count, unsigned alphabet_size) {
  return Word(std::vector<Symbol>(count, symbol), alphabet_size);
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos) throw ContractError("slice out of range");
  Word out;
  out.alphabet_size_ = alphabet_size_;
  out.symbols_.assign(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                      symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

Word Word::operator+(const Word& other) const {
  Word out;
  out.alphabet_size_ = std::max(alphabet_size_, other.alphabet_size_);
  out.symbols_ = symbols_;
  out.symbols_.insert(out.symbols_.end(), other.symbols_.begin(), other.symbols_.end());
  return out;
}

std::string Word::to_string() const {
  std::string out;
  if (alphabet_size_ <= 10) {
    out.reserve(size());
    for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
    return out;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(symbols_[i]);
  }
  return out;
}

std::string Word::to_letters() const {
  std::string out;
  out.reserve(size());
  for (Symbol s : symbols_) {
    if (s >= 26) throw ContractError("symbol too large for letter rendering");
    out.push_back(static_cast<char>('a' + s));
  }
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = std::lexicographical_compare_three_way(a.symbols_.begin(), a.symbols_.end(),
                                                      b.symbols_.begin(), b.symbols_.end());
      c != 0) {
    return c;
  }
  return a.alphabet_size_ <=> b.alphabet_size_;
}

}  // namespace wordlogic
