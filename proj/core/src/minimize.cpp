#include <algorithm>

#include "wordlogic/automata.hpp"

namespace wordlogic::automata {

namespace {

// Renumbers the states reachable from the initial state in BFS order,
// visiting letters in increasing order. `block_of` maps old states to the
// classes being renumbered (identity when not minimizing).
TrackDfa bfs_quotient(const TrackDfa& a, const std::vector<StateId>& block_of,
                      std::size_t num_blocks) {
  const Letter letters = a.alphabet_size();
  std::vector<StateId> representative;  // new id -> some old state
  std::vector<StateId> new_id(num_blocks, UINT32_MAX);
  new_id[block_of[a.initial()]] = 0;
  representative.push_back(a.initial());
  std::vector<StateId> transitions;
  std::vector<std::uint8_t> accepting;
  for (std::size_t i = 0; i < representative.size(); ++i) {
    const StateId q = representative[i];
    accepting.push_back(a.accepting(q));
    for (Letter x = 0; x < letters; ++x) {
      const StateId r = a.next(q, x);
      StateId& id = new_id[block_of[r]];
      if (id == UINT32_MAX) {
        id = static_cast<StateId>(representative.size());
        representative.push_back(r);
      }
      transitions.push_back(id);
    }
  }
  return TrackDfa(a.tracks(), std::move(transitions), std::move(accepting));
}

}  // namespace

// Hopcroft partition refinement with a worklist of splitter blocks.
TrackDfa minimize(const TrackDfa& input) {
  std::vector<StateId> identity(input.num_states());
  for (StateId q = 0; q < identity.size(); ++q) identity[q] = q;
  const TrackDfa a = bfs_quotient(input, identity, identity.size());

  const std::size_t n = a.num_states();
  const Letter letters = a.alphabet_size();

  // Inverse transitions, CSR per letter.
  std::vector<std::uint32_t> offsets(static_cast<std::size_t>(letters) * (n + 1), 0);
  std::vector<StateId> sources(static_cast<std::size_t>(letters) * n);
  for (StateId q = 0; q < n; ++q) {
    for (Letter x = 0; x < letters; ++x) ++offsets[x * (n + 1) + a.next(q, x) + 1];
  }
  for (Letter x = 0; x < letters; ++x) {
    auto* off = &offsets[x * (n + 1)];
    for (std::size_t t = 0; t < n; ++t) off[t + 1] += off[t];
  }
  {
    std::vector<std::uint32_t> fill(offsets);
    for (StateId q = 0; q < n; ++q) {
      for (Letter x = 0; x < letters; ++x) {
        const StateId t = a.next(q, x);
        sources[x * n + fill[x * (n + 1) + t]++] = q;
      }
    }
  }

  std::vector<StateId> elems(n), loc(n), block_of(n);
  std::vector<std::uint32_t> first, end, marked;
  {
    std::size_t pos = 0;
    for (int pass = 1; pass >= 0; --pass) {
      const std::size_t begin = pos;
      for (StateId q = 0; q < n; ++q) {
        if (a.accepting(q) == static_cast<bool>(pass)) {
          elems[pos] = q;
          loc[q] = static_cast<StateId>(pos);
          block_of[q] = static_cast<StateId>(first.size());
          ++pos;
        }
      }
      if (pos > begin) {
        first.push_back(static_cast<std::uint32_t>(begin));
        end.push_back(static_cast<std::uint32_t>(pos));
        marked.push_back(0);
      }
    }
  }

  std::vector<std::uint32_t> worklist;
  std::vector<std::uint8_t> in_worklist(first.size(), 0);
  if (first.size() == 2) {
    const std::uint32_t smaller = (end[0] - first[0] <= end[1] - first[1]) ? 0 : 1;
    worklist.push_back(smaller);
    in_worklist[smaller] = 1;
  }

  std::vector<StateId> splitter;
  std::vector<std::uint32_t> touched;
  while (!worklist.empty()) {
    const std::uint32_t b = worklist.back();
    worklist.pop_back();
    in_worklist[b] = 0;
    splitter.assign(elems.begin() + first[b], elems.begin() + end[b]);
    for (Letter x = 0; x < letters; ++x) {
      const auto* off = &offsets[x * (n + 1)];
      const auto* src = &sources[x * n];
      touched.clear();
      for (StateId s : splitter) {
        for (std::uint32_t e = off[s]; e < off[s + 1]; ++e) {
          const StateId p = src[e];
          const std::uint32_t c = block_of[p];
          const std::uint32_t i = loc[p];
          const std::uint32_t j = first[c] + marked[c];
          std::swap(elems[i], elems[j]);
          loc[elems[i]] = i;
          loc[elems[j]] = j;
          if (marked[c]++ == 0) touched.push_back(c);
        }
      }
      for (std::uint32_t c : touched) {
        const std::uint32_t size = end[c] - first[c];
        const std::uint32_t m = marked[c];
        marked[c] = 0;
        if (m == size) continue;
        const auto nb = static_cast<std::uint32_t>(first.size());
        first.push_back(first[c]);
        end.push_back(first[c] + m);
        marked.push_back(0);
        in_worklist.push_back(0);
        first[c] += m;
        for (std::uint32_t i = first[nb]; i < end[nb]; ++i) block_of[elems[i]] = nb;
        if (in_worklist[c]) {
          worklist.push_back(nb);
          in_worklist[nb] = 1;
        } else {
          const std::uint32_t smaller = (m <= size - m) ? nb : c;
          worklist.push_back(smaller);
          in_worklist[smaller] = 1;
        }
      }
    }
  }
  return bfs_quotient(a, block_of, first.size());
}

}  // namespace wordlogic::automata
