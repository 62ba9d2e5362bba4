#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pebbling/errors.hpp"

namespace pebbling {

using Vertex = int;
using VertexList = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

/// Distance value for vertex pairs in different components.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// Immutable simple undirected graph on the dense vertex ids 0..n-1.
///
/// All-pairs distances are computed once at construction, so metric queries
/// are table lookups. Labels are decorative and never affect semantics.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, std::span<const Edge> edges,
        std::vector<std::string> labels = {})
      : n_(vertex_count), labels_(std::move(labels)) {
    if (vertex_count < 0) {
      throw InputError("bad-vertex-count", "vertex count must be nonnegative");
    }
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n_) {
      throw InputError("bad-labels", "label count must equal vertex count");
    }
    const auto un = static_cast<std::size_t>(n_);
    adjacency_.assign(un * un, 0);
    neighbors_.assign(un, {});
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= n_ || b >= n_) {
        throw InputError("bad-vertex", "edge endpoint out of range: " + std::to_string(a) +
                                           " " + std::to_string(b));
      }
      if (a == b) {
        throw InputError("self-loop", "self-loop at vertex " + std::to_string(a));
      }
      if (adjacent(a, b)) {
        throw InputError("multi-edge", "duplicate edge " + std::to_string(a) + " " +
                                           std::to_string(b));
      }
      adjacency_[index(a, b)] = 1;
      adjacency_[index(b, a)] = 1;
      neighbors_[static_cast<std::size_t>(a)].push_back(b);
      neighbors_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& list : neighbors_) std::sort(list.begin(), list.end());
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) edges_.emplace_back(u, v);
      }
    }
    compute_distances();
    compute_fingerprint();
  }

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }

  /// Edges as (u, v) with u < v, in lexicographic order.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const VertexList& neighbors(Vertex v) const { return neighbors_[check(v)]; }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(Vertex u, Vertex v) const {
    return adjacency_[index(check(u), check(v))] != 0;
  }

  int min_degree() const {
    int best = n_ == 0 ? 0 : kInfinity;
    for (const auto& list : neighbors_) best = std::min(best, static_cast<int>(list.size()));
    return best;
  }

  int max_degree() const {
    int best = 0;
    for (const auto& list : neighbors_) best = std::max(best, static_cast<int>(list.size()));
    return best;
  }

  /// Shortest-path edge count, or kInfinity for a disconnected pair.
  int distance(Vertex u, Vertex v) const { return dist_[index(check(u), check(v))]; }

  bool connected() const noexcept { return connected_; }

  bool is_tree() const noexcept {
    return connected_ && static_cast<int>(edges_.size()) == n_ - 1;
  }

  /// Largest distance from v; kInfinity when the graph is disconnected.
  int eccentricity(Vertex v) const {
    int ecc = 0;
    for (Vertex u = 0; u < n_; ++u) ecc = std::max(ecc, distance(v, u));
    return ecc;
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(Vertex v) const {
    check(v);
    return labels_.empty() ? std::to_string(v) : labels_[static_cast<std::size_t>(v)];
  }

  /// Structural hash of (n, edge set). Distributions use it to detect
  /// being applied to a graph they were not built for.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  bool valid_vertex(Vertex v) const noexcept { return v >= 0 && v < n_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t index(Vertex u, Vertex v) const noexcept {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(v);
  }

  std::size_t check(Vertex v) const {
    if (!valid_vertex(v)) {
      throw InputError("bad-vertex", "vertex id out of range: " + std::to_string(v));
    }
    return static_cast<std::size_t>(v);
  }

  void compute_distances() {
    const auto un = static_cast<std::size_t>(n_);
    dist_.assign(un * un, kInfinity);
    std::vector<Vertex> queue(un);
    for (Vertex s = 0; s < n_; ++s) {
      std::size_t head = 0;
      std::size_t tail = 0;
      dist_[index(s, s)] = 0;
      queue[tail++] = s;
      while (head < tail) {
        const Vertex x = queue[head++];
        const int dx = dist_[index(s, x)];
        for (Vertex y : neighbors_[static_cast<std::size_t>(x)]) {
          if (dist_[index(s, y)] == kInfinity) {
            dist_[index(s, y)] = dx + 1;
            queue[tail++] = y;
          }
        }
      }
    }
    connected_ = std::none_of(dist_.begin(), dist_.end(), [](int d) { return d == kInfinity; });
  }

  void compute_fingerprint() {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffU;
        h *= 1099511628211ULL;
      }
    };
    mix(static_cast<std::uint64_t>(n_));
    for (auto [a, b] : edges_) {
      mix(static_cast<std::uint64_t>(a));
      mix(static_cast<std::uint64_t>(b));
    }
    fingerprint_ = h;
  }

  int n_ = 0;
  std::vector<char> adjacency_;
  std::vector<VertexList> neighbors_;
  std::vector<Edge> edges_;
  std::vector<int> dist_;
  std::vector<std::string> labels_;
  bool connected_ = true;
  std::uint64_t fingerprint_ = 0;
};

/// Throws PreconditionError unless g is connected and nonempty.
inline void require_connected(const Graph& g, const char* what) {
  if (g.order() == 0 || !g.connected()) {
    throw PreconditionError("disconnected", std::string(what) + " requires a connected graph");
  }
}

/// Largest pairwise distance. Requires a connected graph.
inline int diameter(const Graph& g) {
  require_connected(g, "diameter");
  int best = 0;
  for (Vertex v = 0; v < g.order(); ++v) best = std::max(best, g.eccentricity(v));
  return best;
}

/// Length of a shortest cycle, or kInfinity for forests.
inline int girth(const Graph& g) {
  int best = kInfinity;
  const int n = g.order();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<Vertex> queue;
    dist[static_cast<std::size_t>(s)] = 0;
    parent[static_cast<std::size_t>(s)] = -1;
    queue.push(s);
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop();
      const auto ux = static_cast<std::size_t>(x);
      for (Vertex y : g.neighbors(x)) {
        const auto uy = static_cast<std::size_t>(y);
        if (dist[uy] < 0) {
          dist[uy] = dist[ux] + 1;
          parent[uy] = x;
          queue.push(y);
        } else if (parent[ux] != y) {
          best = std::min(best, dist[ux] + dist[uy] + 1);
        }
      }
    }
  }
  return best;
}

/// Membership mask for a vertex list.
inline std::vector<char> to_mask(const Graph& g, std::span<const Vertex> set) {
  std::vector<char> mask(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : set) {
    if (!g.valid_vertex(v)) throw InputError("bad-vertex", "vertex id out of range");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

inline VertexList from_mask(std::span<const char> mask) {
  VertexList out;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

/// Distance from vertex v to the nearest member of a nonempty set.
inline int distance_to_set(const Graph& g, Vertex v, std::span<const Vertex> set) {
  int best = kInfinity;
  for (Vertex s : set) best = std::min(best, g.distance(v, s));
  return best;
}

/// N^k[s] when closed, N^k(s) = N^k[s] \ N^{k-1}[s] when open.
inline VertexList k_neighborhood(const Graph& g, std::span<const Vertex> s, int k, bool closed) {
  if (s.empty()) throw PreconditionError("empty-set", "k_neighborhood needs a nonempty set");
  if (k < 0) throw InputError("bad-radius", "k must be nonnegative");
  VertexList out;
  for (Vertex v = 0; v < g.order(); ++v) {
    const int d = distance_to_set(g, v, s);
    if (d == kInfinity) continue;
    if (closed ? d <= k : d == k) out.push_back(v);
  }
  return out;
}

/// Closed neighbourhood N[v].
inline VertexList closed_neighborhood(const Graph& g, Vertex v) {
  VertexList out = g.neighbors(v);
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

/// |N[u] ∪ N[v]|.
inline int closed_union_size(const Graph& g, Vertex u, Vertex v) {
  int count = 0;
  for (Vertex x = 0; x < g.order(); ++x) {
    if (g.distance(u, x) <= 1 || g.distance(v, x) <= 1) ++count;
  }
  return count;
}

/// Subgraph induced by `keep` (sorted ascending). Vertex i of the result is keep[i].
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<int> position(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    position[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (auto [a, b] : g.edges()) {
    const int pa = position[static_cast<std::size_t>(a)];
    const int pb = position[static_cast<std::size_t>(b)];
    if (pa >= 0 && pb >= 0) edges.emplace_back(pa, pb);
  }
  if (!g.labels().empty()) {
    for (Vertex v : keep) labels.push_back(g.label(v));
  }
  return Graph(static_cast<int>(keep.size()), edges, std::move(labels));
}

/// Connected components of the subgraph induced by `mask`, each sorted,
/// ordered by their least vertex.
inline std::vector<VertexList> induced_components(const Graph& g, std::span<const char> mask) {
  std::vector<VertexList> components;
  std::vector<char> seen(mask.size(), 0);
  for (Vertex s = 0; s < g.order(); ++s) {
    const auto us = static_cast<std::size_t>(s);
    if (!mask[us] || seen[us]) continue;
    VertexList comp{s};
    seen[us] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex y : g.neighbors(comp[i])) {
        const auto uy = static_cast<std::size_t>(y);
        if (mask[uy] && !seen[uy]) {
          seen[uy] = 1;
          comp.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

}  // namespace pebbling
