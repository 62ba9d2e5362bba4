#pragma once

#include <deque>
#include <set>
#include <vector>

#include "pebbling/graph.hpp"

// Deliberately naive reference implementations used to cross-check the
// engine and the exact solver. Nothing here shares code with engine.hpp.

namespace pebbling::oracle {

/// Plain breadth-first search over all states reachable by pebbling moves.
inline bool naive_reachable(const Graph& g, const std::vector<int>& start, Vertex target, int k) {
  std::set<std::vector<int>> seen{start};
  std::deque<std::vector<int>> queue{start};
  while (!queue.empty()) {
    std::vector<int> state = std::move(queue.front());
    queue.pop_front();
    if (state[static_cast<std::size_t>(target)] >= k) return true;
    for (auto [a, b] : g.edges()) {
      for (auto [from, to] : {Edge{a, b}, Edge{b, a}}) {
        if (state[static_cast<std::size_t>(from)] < 2) continue;
        std::vector<int> next = state;
        next[static_cast<std::size_t>(from)] -= 2;
        next[static_cast<std::size_t>(to)] += 1;
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
  }
  return false;
}

inline bool naive_solvable(const Graph& g, const std::vector<int>& counts, int k) {
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!naive_reachable(g, counts, v, k)) return false;
  }
  return true;
}

namespace detail {

// Visits every count vector with the given total, recursively.
template <typename Visit>
bool for_each_composition(std::vector<int>& counts, std::size_t index, int remaining,
                          Visit&& visit) {
  if (index + 1 == counts.size()) {
    counts[index] = remaining;
    return visit(counts);
  }
  for (int c = remaining; c >= 0; --c) {
    counts[index] = c;
    if (for_each_composition(counts, index + 1, remaining - c, visit)) return true;
  }
  counts[index] = 0;
  return false;
}

}  // namespace detail

/// π*_k by trying every count vector of each size in turn. No pruning.
inline int oracle_pi_star(const Graph& g, int k) {
  const int n = g.order();
  if (n < 1 || n > 12) throw PreconditionError("oracle-size", "oracle needs 1 <= n <= 12");
  if (!g.connected()) throw PreconditionError("disconnected", "oracle needs a connected graph");
  constexpr int kMaxAnswer = 6;
  for (int size = 1; size <= kMaxAnswer; ++size) {
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    const bool found = detail::for_each_composition(
        counts, 0, size, [&](const std::vector<int>& c) { return naive_solvable(g, c, k); });
    if (found) return size;
  }
  throw PreconditionError("oracle-size", "oracle answer exceeds its size guard of 6");
}

}  // namespace pebbling::oracle
