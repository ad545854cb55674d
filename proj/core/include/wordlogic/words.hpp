#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordlogic/word.hpp"

// Exact algorithms on finite words: conjugates, borders, squares,
// overlaps, primitivity and unbordered-conjugate counts.
namespace wordlogic::words {

struct BorderProfile {
  std::vector<std::size_t> borders;  // increasing
  bool is_bordered = false;
  std::optional<std::size_t> shortest;
};

/// A repetition found in a word. For squares, w[i..i+p) == w[i+p..i+2p);
/// for overlaps the repeated block has p+1 symbols. When `circular` is
/// set, indices are read modulo |w|.
struct RepetitionWitness {
  std::size_t start = 0;
  std::size_t period = 0;
  bool circular = false;

  friend bool operator==(const RepetitionWitness&, const RepetitionWitness&) = default;
};
using SquareWitness = RepetitionWitness;
using OverlapWitness = RepetitionWitness;

/// sigma^i(w); i is reduced modulo max(|w|, 1).
Word conjugate(const Word& w, std::size_t i);

/// KMP failure table: fail[j] is the longest proper border of w[0..j).
/// Size |w| + 1.
std::vector<std::size_t> failure_table(std::span<const Symbol> w);

BorderProfile border_profile(const Word& w);
bool is_bordered(std::span<const Symbol> w);
bool is_bordered(const Word& w);

/// Number of shifts i in [0, |w|) with sigma^i(w) unbordered. Throws
/// ContractError for the empty word.
std::size_t nuc(const Word& w);
std::size_t nuc(std::span<const Symbol> w);

/// Position i holds 'u' when sigma^i(w) is unbordered and 'b' otherwise.
std::string border_correlation(const Word& w);

/// Smallest period first, then leftmost start. Circular mode scans ww for
/// squares of period p <= |w|/2 starting before |w|.
std::optional<SquareWitness> square_check(std::span<const Symbol> w, bool circular);
std::optional<SquareWitness> square_check(const Word& w, bool circular);

/// Circular squarefreeness for a word already known to be squarefree: only
/// squares crossing the seam between the last and the first symbol can
/// occur, so two anchors per period suffice.
bool squarefree_word_is_circularly_squarefree(std::span<const Symbol> w);

/// Overlaps axaxa encoded as w[i..i+p] == w[i+p..i+2p], p >= 1.
std::optional<OverlapWitness> overlap_check(std::span<const Symbol> w, bool circular);
std::optional<OverlapWitness> overlap_check(const Word& w, bool circular);

/// True iff w occurs in ww only at positions 0 and |w|. Throws for ε.
bool is_primitive(const Word& w);

/// Least conjugate of w (its necklace representative).
Word least_conjugate(const Word& w);
bool is_least_conjugate(std::span<const Symbol> w);

/// Calls `visit` on every necklace (least conjugate) of length n over
/// Σ_k, in lexicographic order. Fredricksen-Kessler-Maiorana generation.
void for_each_necklace(unsigned k, std::size_t n,
                       const std::function<void(std::span<const Symbol>)>& visit);

struct MnucOptions {
  std::uint64_t budget = std::uint64_t{1} << 26;  // max k^n words
  std::size_t witness_cap = 64;
  unsigned jobs = 1;
};

struct MnucResult {
  std::size_t value = 0;
  std::vector<Word> witnesses;  // necklace representatives, lexicographic
  std::uint64_t necklaces = 0;
};

/// Exact maximum of nuc over Σ_k^n, enumerating one word per conjugacy
/// class. Throws ResourceError when k^n exceeds the budget.
MnucResult mnuc_exhaustive(unsigned k, std::size_t n, const MnucOptions& options = {});

/// Unbordered test on a binary word packed msb-first in the low n bits.
bool packed_binary_is_bordered(std::uint64_t bits, unsigned n);

/// Splits [0, count) into `jobs` contiguous ranges and runs them on
/// separate threads. `body(begin, end, worker)` must only touch
/// worker-local state.
void parallel_ranges(std::uint64_t count, unsigned jobs,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body);

}  // namespace wordlogic::words
