#pragma once

// Deliberately naive reference implementations used as test oracles.
// Nothing here shares code with the library.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

using Str = std::vector<std::uint32_t>;

inline Str from_string(const std::string& s) {
  Str out;
  for (char c : s) out.push_back(c >= 'a' ? static_cast<std::uint32_t>(c - 'a')
                                          : static_cast<std::uint32_t>(c - '0'));
  return out;
}

inline Str rotate(const Str& w, std::size_t i) {
  Str out;
  for (std::size_t j = 0; j < w.size(); ++j) out.push_back(w[(i + j) % w.size()]);
  return out;
}

inline bool has_border_of_length(const Str& w, std::size_t l) {
  for (std::size_t j = 0; j < l; ++j) {
    if (w[j] != w[w.size() - l + j]) return false;
  }
  return true;
}

inline std::vector<std::size_t> borders(const Str& w) {
  std::vector<std::size_t> out;
  for (std::size_t l = 1; l < w.size(); ++l) {
    if (has_border_of_length(w, l)) out.push_back(l);
  }
  return out;
}

inline bool bordered(const Str& w) { return !borders(w).empty(); }

inline std::size_t nuc(const Str& w) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < w.size(); ++i) count += !bordered(rotate(w, i));
  return count;
}

inline bool contains_square(const Str& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t p = 1; i + 2 * p <= w.size(); ++p) {
      bool eq = true;
      for (std::size_t j = 0; j < p && eq; ++j) eq = w[i + j] == w[i + p + j];
      if (eq) return true;
    }
  }
  return false;
}

inline bool contains_overlap(const Str& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t p = 1; i + 2 * p + 1 <= w.size(); ++p) {
      bool eq = true;
      for (std::size_t j = 0; j <= p && eq; ++j) eq = w[i + j] == w[i + p + j];
      if (eq) return true;
    }
  }
  return false;
}

inline bool circularly_squarefree(const Str& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (contains_square(rotate(w, i))) return false;
  }
  return true;
}

inline bool circularly_overlap_free(const Str& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (contains_overlap(rotate(w, i))) return false;
  }
  return true;
}

inline bool primitive(const Str& w) {
  for (std::size_t d = 1; d < w.size(); ++d) {
    if (w.size() % d) continue;
    bool power = true;
    for (std::size_t j = d; j < w.size() && power; ++j) power = w[j] == w[j - d];
    if (power) return false;
  }
  return true;
}

/// Calls f on every word of length n over k letters, in lexicographic order.
inline void for_each_word(unsigned k, std::size_t n, const std::function<void(const Str&)>& f) {
  Str w(n, 0);
  while (true) {
    f(w);
    std::size_t j = n;
    while (j > 0 && w[j - 1] == k - 1) w[--j] = 0;
    if (j == 0) return;
    ++w[j - 1];
  }
}

}  // namespace oracle
