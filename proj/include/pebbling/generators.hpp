#pragma once

#include <string>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

inline Graph complete_graph(int m) {
  if (m < 1) throw PreconditionError("bad-parameter", "complete_graph needs m >= 1");
  std::vector<Edge> edges;
  for (Vertex a = 0; a < m; ++a) {
    for (Vertex b = a + 1; b < m; ++b) edges.emplace_back(a, b);
  }
  return Graph(m, edges);
}

inline Graph path_graph(int n) {
  if (n < 1) throw PreconditionError("bad-parameter", "path_graph needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex a = 0; a + 1 < n; ++a) edges.emplace_back(a, a + 1);
  return Graph(n, edges);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw PreconditionError("bad-parameter", "cycle_graph needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a) edges.emplace_back(std::min(a, (a + 1) % n), std::max(a, (a + 1) % n));
  return Graph(n, edges);
}

/// K_{1,leaves}; vertex 0 is the centre.
inline Graph star_graph(int leaves) {
  if (leaves < 1) throw PreconditionError("bad-parameter", "star_graph needs >= 1 leaf");
  std::vector<Edge> edges;
  for (Vertex a = 1; a <= leaves; ++a) edges.emplace_back(0, a);
  return Graph(leaves + 1, edges);
}

/// Hub 0 joined to every vertex of the cycle 1..rim.
inline Graph wheel_graph(int rim) {
  if (rim < 3) throw PreconditionError("bad-parameter", "wheel_graph needs rim >= 3");
  std::vector<Edge> edges;
  for (Vertex a = 1; a <= rim; ++a) {
    edges.emplace_back(0, a);
    const Vertex b = a == rim ? 1 : a + 1;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return Graph(rim + 1, edges);
}

/// G □ H. Vertex (x, y) gets id x * |H| + y.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  if (g.order() == 0 || h.order() == 0) {
    throw PreconditionError("empty-graph", "cartesian_product needs nonempty factors");
  }
  const int nh = h.order();
  auto id = [nh](Vertex x, Vertex y) { return x * nh + y; };
  std::vector<Edge> edges;
  for (Vertex x = 0; x < g.order(); ++x) {
    for (auto [a, b] : h.edges()) edges.emplace_back(id(x, a), id(x, b));
  }
  for (auto [a, b] : g.edges()) {
    for (Vertex y = 0; y < nh; ++y) edges.emplace_back(id(a, y), id(b, y));
  }
  std::vector<std::string> labels;
  for (Vertex x = 0; x < g.order(); ++x) {
    for (Vertex y = 0; y < nh; ++y) labels.push_back("(" + g.label(x) + "," + h.label(y) + ")");
  }
  return Graph(g.order() * nh, edges, std::move(labels));
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (Vertex a = 0; a < g.order(); ++a) {
    for (Vertex b = a + 1; b < g.order(); ++b) {
      if (!g.adjacent(a, b)) edges.emplace_back(a, b);
    }
  }
  return Graph(g.order(), edges, g.labels());
}

/// Complement of K_m □ K_m: (i,j) ~ (k,l) iff i != k and j != l.
inline Graph complement_km_km(int m) {
  return complement(cartesian_product(complete_graph(m), complete_graph(m)));
}

/// Circulant graph on 2m vertices where i ~ j iff i - j is not congruent
/// to m or m ± 1 modulo 2m. Labels run 1..2m.
/// Note: for every m >= 5 the edge {1, 4} dominates (the non-neighbours of
/// 1 and of 4 are disjoint), so this graph is not special.
inline Graph circulant_special(int m) {
  if (m < 5) throw PreconditionError("bad-parameter", "circulant_special needs m >= 5");
  const int n = 2 * m;
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const int diff = (b - a) % n;
      if (diff != m && diff != m - 1 && diff != m + 1) edges.emplace_back(a, b);
    }
  }
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return Graph(n, edges, std::move(labels));
}

/// C_n(jumps): i ~ j iff i - j = ±s (mod n) for some jump s.
/// circulant_graph(10, {1, 4, 5}) is a special graph.
inline Graph circulant_graph(int n, const std::vector<int>& jumps) {
  if (n < 1) throw PreconditionError("bad-parameter", "circulant_graph needs n >= 1");
  std::vector<char> allowed(static_cast<std::size_t>(n), 0);
  for (int s : jumps) {
    const int r = ((s % n) + n) % n;
    if (r == 0) throw PreconditionError("bad-parameter", "circulant jump must be nonzero mod n");
    allowed[static_cast<std::size_t>(r)] = 1;
    allowed[static_cast<std::size_t>(n - r)] = 1;
  }
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (allowed[static_cast<std::size_t>(b - a)]) edges.emplace_back(a, b);
    }
  }
  return Graph(n, edges);
}

inline Graph hypercube_graph(int d) {
  if (d < 0 || d > 12) throw PreconditionError("bad-parameter", "hypercube needs 0 <= d <= 12");
  Graph g = complete_graph(1);
  for (int i = 0; i < d; ++i) g = cartesian_product(g, complete_graph(2));
  return g;
}

}  // namespace pebbling
