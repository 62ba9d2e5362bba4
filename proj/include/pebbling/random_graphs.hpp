#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "pebbling/graph.hpp"
#include "pebbling/rng.hpp"

namespace pebbling {

/// Random attachment tree plus every other pair independently with
/// probability p. Always connected.
inline Graph random_connected_graph(SplitMix64& rng, int n, double p) {
  std::set<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace(rng.between(0, v - 1), v);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (rng.chance(p)) edges.emplace(a, b);
    }
  }
  return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

/// Dense clusters in a row, sparsely joined to their neighbours in the row:
/// high minimum degree together with diameter often >= 3.
inline Graph clustered_graph(SplitMix64& rng, int n) {
  const int clusters = rng.between(2, 6);
  std::vector<int> cluster(static_cast<std::size_t>(n));
  for (auto& c : cluster) c = rng.between(0, clusters - 1);
  const double inside = 0.4 + 0.6 * rng.uniform();
  const double across = 0.15 * rng.uniform();
  std::set<Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const int gap = std::abs(cluster[static_cast<std::size_t>(a)] - cluster[static_cast<std::size_t>(b)]);
      const double p = gap == 0 ? inside : gap == 1 ? across : 0.0;
      if (p > 0 && rng.chance(p)) edges.emplace(a, b);
    }
  }
  // Hook any vertex without a lower neighbour to a random earlier one.
  for (Vertex v = 1; v < n; ++v) {
    const bool linked = std::any_of(edges.begin(), edges.end(), [v](const Edge& e) { return e.second == v; });
    if (!linked) edges.emplace(rng.between(0, v - 1), v);
  }
  return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

/// Connected k-regular graph on n vertices from the pairing model, or empty
/// when no attempt produced a simple connected graph.
inline std::optional<Graph> random_regular_graph(SplitMix64& rng, int n, int k, int attempts = 200) {
  if (n < 1 || k < 0 || k >= n || n * k % 2 != 0) return std::nullopt;
  std::vector<Vertex> stubs;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    stubs.clear();
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(k), v);
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
    std::set<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
      const Vertex a = std::min(stubs[i], stubs[i + 1]);
      const Vertex b = std::max(stubs[i], stubs[i + 1]);
      simple = a != b && edges.emplace(a, b).second;
    }
    if (!simple) continue;
    Graph g(n, std::vector<Edge>(edges.begin(), edges.end()));
    if (g.connected()) return g;
  }
  return std::nullopt;
}

/// All connected graphs on n <= 6 vertices up to isomorphism, each in the
/// lexicographically least edge-mask labelling.
inline std::vector<Graph> connected_graphs_up_to_iso(int n) {
  if (n < 1 || n > 6) throw PreconditionError("bad-parameter", "connected_graphs_up_to_iso needs 1 <= n <= 6");
  std::vector<Edge> pairs;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  std::vector<std::vector<int>> index(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    index[static_cast<std::size_t>(pairs[i].first)][static_cast<std::size_t>(pairs[i].second)] = static_cast<int>(i);
    index[static_cast<std::size_t>(pairs[i].second)][static_cast<std::size_t>(pairs[i].first)] = static_cast<int>(i);
  }
  std::vector<std::vector<Vertex>> perms;
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (Vertex i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> out;
  const std::uint32_t total = std::uint32_t{1} << pairs.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    bool least = true;
    for (const auto& p : perms) {
      std::uint32_t image = 0;
      for (std::size_t i = 0; i < pairs.size() && least; ++i) {
        if (mask >> i & 1U) {
          image |= std::uint32_t{1} << index[static_cast<std::size_t>(p[static_cast<std::size_t>(pairs[i].first)])]
                                            [static_cast<std::size_t>(p[static_cast<std::size_t>(pairs[i].second)])];
        }
      }
      if (image < mask) least = false;
      if (!least) break;
    }
    if (!least) continue;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1U) edges.push_back(pairs[i]);
    }
    Graph g(n, edges);
    if (g.connected()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace pebbling
