#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

using Permutation = std::vector<Vertex>;

/// Enumerates the full automorphism group by backtracking, with vertex
/// candidates filtered by their sorted distance profile. Returns nullopt if
/// the group has more than `limit` elements.
inline std::optional<std::vector<Permutation>> automorphisms(const Graph& g, std::size_t limit = 20000) {
  const int n = g.order();
  std::vector<std::vector<int>> profile(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    auto& p = profile[static_cast<std::size_t>(v)];
    for (Vertex u = 0; u < n; ++u) p.push_back(g.distance(v, u));
    std::sort(p.begin(), p.end());
  }
  // Map vertices in BFS order from 0 so adjacency constraints bite early.
  VertexList order;
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n; ++s) {
    if (placed[static_cast<std::size_t>(s)]) continue;
    placed[static_cast<std::size_t>(s)] = 1;
    order.push_back(s);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
      for (Vertex y : g.neighbors(order[i])) {
        if (!placed[static_cast<std::size_t>(y)]) {
          placed[static_cast<std::size_t>(y)] = 1;
          order.push_back(y);
        }
      }
    }
  }

  std::vector<Permutation> group;
  Permutation image(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  bool overflow = false;

  auto extend = [&](auto&& self, std::size_t depth) -> void {
    if (overflow) return;
    if (depth == order.size()) {
      group.push_back(image);
      if (group.size() > limit) overflow = true;
      return;
    }
    const Vertex x = order[depth];
    for (Vertex y = 0; y < n; ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      if (profile[static_cast<std::size_t>(x)] != profile[static_cast<std::size_t>(y)]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < depth && ok; ++j) {
        const Vertex w = order[j];
        ok = g.adjacent(x, w) == g.adjacent(y, image[static_cast<std::size_t>(w)]);
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(x)] = y;
      used[static_cast<std::size_t>(y)] = 1;
      self(self, depth + 1);
      used[static_cast<std::size_t>(y)] = 0;
      image[static_cast<std::size_t>(x)] = -1;
      if (overflow) return;
    }
  };
  extend(extend, 0);
  if (overflow) return std::nullopt;
  return group;
}

}  // namespace pebbling
