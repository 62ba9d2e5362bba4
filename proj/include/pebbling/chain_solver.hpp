#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pebbling/automorphism.hpp"
#include "pebbling/bound_constructor.hpp"
#include "pebbling/chain.hpp"
#include "pebbling/solver.hpp"

namespace pebbling {

/// π*_k of a chain. Adds the chain's automorphisms for orbit pruning, the
/// collapsed-path filter (a solvable D collapses to a solvable distribution
/// of P_{3l}) and, for k = 1, starts right below the size of the explicit
/// upper-bound distribution when that one is solvable.
inline SolverResult pi_star_chain(const ChainSpec& spec, int k = 1, SolverOptions options = {}) {
  const Graph g = build_chain(spec);
  if (!options.symmetry) options.symmetry = automorphisms(g);
  if (spec.variant == ChainVariant::kPlain) {
    const auto map = std::make_shared<QuotientMap>(collapse_chain(spec));
    if (!options.necessary_filter) {
      options.necessary_filter = [map, k](const std::vector<int>& counts) {
        return collapsed_path_solvable(*map, counts, k);
      };
    }
    if (k == 1 && options.start_size <= 1) {
      const Distribution upper = chain_upper_distribution(spec);
      if (is_k_solvable(g, upper, 1, options.engine).solvable) options.start_size = upper.size();
    }
  }
  return pi_star(g, k, options);
}

/// Where a solvable distribution with fewer than 3l - 1 pebbles splits a
/// chain. Path ids are 1-based, p_1 .. p_{3l}; the cut lies on {p_a, p_{a+1}}.
struct ChainCut {
  int a = 0;
  /// "G_k|G_{l-k}", "G_k^-|G_{l-k}^+" or the mirrored "G_{k}^+|G_{l-k}^-"
  /// (leaf at v_k, first u deleted).
  std::string kind;
  int left_blocks = 0;
  int right_blocks = 0;
  VertexList left;
  VertexList right;
  std::vector<Edge> cut_edges;
};

/// Locates the cut through collapsing onto P_{3l}. Returns nothing when
/// |D| >= 3l - 1. Every claimed property of the cut is checked and
/// reported as InternalError if it fails.
inline std::optional<ChainCut> decomposition_check(const ChainSpec& spec, const Distribution& d,
                                                   const EngineOptions& engine = {}) {
  if (spec.variant != ChainVariant::kPlain) {
    throw PreconditionError("bad-variant", "decomposition_check needs the plain variant");
  }
  const int l = spec.length();
  if (d.size() >= 3 * l - 1) return std::nullopt;
  const QuotientMap map = collapse_chain(spec);
  const Graph& g = map.source;
  require_bound(g, d);
  if (!is_k_solvable(g, d, 1, engine).solvable) {
    throw PreconditionError("not-solvable", "decomposition_check needs a solvable distribution");
  }

  Distribution boosted = d;
  boosted.add(spec.global_u(0), 1);
  boosted.add(spec.global_v(l - 1), 1);
  const Distribution collapsed = map.collapse(boosted);
  const Graph& path = map.target;
  auto two_reachable = [&](Vertex p) { return is_k_reachable(path, collapsed, p, 2).reachable; };

  Vertex first = -1;
  for (Vertex p = 0; p < path.order(); ++p) {
    if (!two_reachable(p)) {
      first = p;
      break;
    }
  }
  if (first < 0) throw InternalError("no-cut", "collapsed distribution is 2-solvable on the path");
  if (first == 0 || first == path.order() - 1 || two_reachable(first + 1)) {
    throw InternalError("no-cut", "least non-2-reachable path vertex has no blocked edge");
  }

  ChainCut cut;
  cut.a = first + 1;
  const int a = cut.a;
  if (a % 3 == 0) {
    cut.left_blocks = a / 3;
    cut.right_blocks = l - a / 3;
    cut.kind = "G_k|G_{l-k}";
  } else if (a % 3 == 2) {
    cut.left_blocks = (a + 1) / 3;
    cut.right_blocks = l - (a + 1) / 3;
    cut.kind = "G_k^-|G_{l-k}^+";
  } else {
    cut.left_blocks = (a - 1) / 3;
    cut.right_blocks = l - (a - 1) / 3;
    cut.kind = "G_k^+|G_{l-k}^-";
  }

  std::vector<char> on_left(static_cast<std::size_t>(g.order()), 0);
  for (Vertex x = 0; x < g.order(); ++x) {
    if (map.phi[static_cast<std::size_t>(x)] <= first) {
      on_left[static_cast<std::size_t>(x)] = 1;
      cut.left.push_back(x);
    } else {
      cut.right.push_back(x);
    }
  }
  for (auto [x, y] : g.edges()) {
    if (on_left[static_cast<std::size_t>(x)] != on_left[static_cast<std::size_t>(y)]) cut.cut_edges.emplace_back(x, y);
  }

  // Both classes at the cut stay below 2 pebbles under D itself.
  for (Vertex p : {first, first + 1}) {
    for (Vertex x : map.preimage(p)) {
      if (is_k_reachable(g, d, x, 2, engine).reachable) {
        throw InternalError("cut-crossable", "vertex " + std::to_string(x) + " at the cut is 2-reachable");
      }
    }
  }
  // D restricted to each side solves that side on its own.
  for (const VertexList* side : {&cut.left, &cut.right}) {
    const Graph part = induced_subgraph(g, *side);
    std::vector<int> counts;
    for (Vertex x : *side) counts.push_back(d[x]);
    if (!part.connected() || !is_k_solvable(part, Distribution(part, counts), 1, engine).solvable) {
      throw InternalError("part-unsolvable", "a side of the cut is not solved by its own pebbles");
    }
  }
  return cut;
}

}  // namespace pebbling
