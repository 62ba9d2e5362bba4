#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

/// Does the vertex set dominate g (every vertex in the set or adjacent to it)?
inline bool dominates(const Graph& g, std::span<const Vertex> set) {
  std::vector<char> covered(static_cast<std::size_t>(g.order()), 0);
  for (Vertex s : set) {
    covered[static_cast<std::size_t>(s)] = 1;
    for (Vertex y : g.neighbors(s)) covered[static_cast<std::size_t>(y)] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

/// First edge (lexicographic order) whose endpoints dominate g, if any.
inline std::optional<Edge> has_dominating_edge(const Graph& g) {
  for (auto [a, b] : g.edges()) {
    const Vertex pair[2] = {a, b};
    if (dominates(g, pair)) return Edge{a, b};
  }
  return std::nullopt;
}

/// g with vertex v deleted (ids above v shift down by one).
inline Graph delete_vertex(const Graph& g, Vertex v) {
  VertexList keep;
  for (Vertex x = 0; x < g.order(); ++x) {
    if (x != v) keep.push_back(x);
  }
  return induced_subgraph(g, keep);
}

enum class SpecialFailure { kNone, kDiameterNotTwo, kDominatingEdge, kNoValidPair };

inline std::string_view to_string(SpecialFailure f) {
  switch (f) {
    case SpecialFailure::kNone: return "none";
    case SpecialFailure::kDiameterNotTwo: return "diameter-not-two";
    case SpecialFailure::kDominatingEdge: return "dominating-edge";
    case SpecialFailure::kNoValidPair: return "no-valid-pair";
  }
  return "unknown";
}

struct SpecialReport {
  bool is_special = false;
  std::optional<Edge> witness_pair;
  SpecialFailure failure_reason = SpecialFailure::kNoValidPair;
};

/// The three pair clauses: distance two, neither deletion creates a
/// dominating edge, and the common neighbourhood plus the pair dominates.
inline bool is_special_pair(const Graph& g, Vertex u, Vertex v) {
  if (g.distance(u, v) != 2) return false;
  VertexList core{u, v};
  for (Vertex x : g.neighbors(u)) {
    if (g.adjacent(x, v)) core.push_back(x);
  }
  if (!dominates(g, core)) return false;
  if (has_dominating_edge(delete_vertex(g, u))) return false;
  if (has_dominating_edge(delete_vertex(g, v))) return false;
  return true;
}

/// Checks every clause of the special-graph definition. The witness is the
/// lexicographically first valid pair.
inline SpecialReport is_special(const Graph& g) {
  require_connected(g, "is_special");
  SpecialReport report;
  if (g.order() < 2 || diameter(g) != 2) {
    report.failure_reason = SpecialFailure::kDiameterNotTwo;
    return report;
  }
  if (has_dominating_edge(g)) {
    report.failure_reason = SpecialFailure::kDominatingEdge;
    return report;
  }
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (is_special_pair(g, u, v)) {
        report.is_special = true;
        report.witness_pair = Edge{u, v};
        report.failure_reason = SpecialFailure::kNone;
        return report;
      }
    }
  }
  report.failure_reason = SpecialFailure::kNoValidPair;
  return report;
}

}  // namespace pebbling
