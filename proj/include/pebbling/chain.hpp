#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pebbling/distribution.hpp"
#include "pebbling/generators.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/special.hpp"

namespace pebbling {

/// plain: blocks joined v_i -- u_{i+1}; minus: v_l deleted; plus: a leaf hung on u_1.
enum class ChainVariant { kPlain, kMinus, kPlus };

inline std::string_view to_string(ChainVariant v) {
  switch (v) {
    case ChainVariant::kPlain: return "plain";
    case ChainVariant::kMinus: return "minus";
    case ChainVariant::kPlus: return "plus";
  }
  return "plain";
}

inline ChainVariant parse_chain_variant(std::string_view text) {
  if (text == "plain") return ChainVariant::kPlain;
  if (text == "minus") return ChainVariant::kMinus;
  if (text == "plus") return ChainVariant::kPlus;
  throw InputError("bad-variant", "unknown chain variant '" + std::string(text) + "'");
}

struct ChainBlock {
  Graph graph;
  Vertex u = 0;  // joined to the previous block's v
  Vertex v = 0;  // joined to the next block's u
  std::string descriptor;
};

/// Blocks H_1..H_l with their special pairs, plus the variant.
struct ChainSpec {
  std::vector<ChainBlock> blocks;
  ChainVariant variant = ChainVariant::kPlain;
  /// When false, blocks only need a valid non-adjacent pair (u, v); the
  /// structural operations still apply but the pebbling claims may not.
  bool require_special = true;

  int length() const noexcept { return static_cast<int>(blocks.size()); }

  /// l copies of one special block, using its lexicographically first special pair.
  static ChainSpec homogeneous(const Graph& block, int l, ChainVariant variant = ChainVariant::kPlain,
                               std::string descriptor = {}) {
    if (l < 1) throw PreconditionError("bad-parameter", "chain length must be >= 1");
    const SpecialReport report = is_special(block);
    if (!report.is_special) {
      throw PreconditionError("block-not-special",
                              "block is not special: " + std::string(to_string(report.failure_reason)));
    }
    ChainSpec spec;
    spec.variant = variant;
    for (int i = 0; i < l; ++i) {
      spec.blocks.push_back({block, report.witness_pair->first, report.witness_pair->second, descriptor});
    }
    return spec;
  }

  /// First global id of block i (0-based) in the plain numbering.
  Vertex offset(int i) const {
    Vertex total = 0;
    for (int j = 0; j < i; ++j) total += blocks[static_cast<std::size_t>(j)].graph.order();
    return total;
  }

  Vertex global_u(int i) const { return offset(i) + blocks[static_cast<std::size_t>(i)].u; }
  Vertex global_v(int i) const { return offset(i) + blocks[static_cast<std::size_t>(i)].v; }

  int plain_order() const { return offset(length()); }

  /// l copies of any block joined through the given non-adjacent pair,
  /// without checking specialness.
  static ChainSpec unchecked(const Graph& block, Vertex u, Vertex v, int l, std::string descriptor = {}) {
    if (l < 1) throw PreconditionError("bad-parameter", "chain length must be >= 1");
    ChainSpec spec;
    spec.require_special = false;
    for (int i = 0; i < l; ++i) spec.blocks.push_back({block, u, v, descriptor});
    return spec;
  }

  ChainSpec with_variant(ChainVariant v) const {
    ChainSpec copy = *this;
    copy.variant = v;
    return copy;
  }
};

namespace detail {

inline void validate_chain(const ChainSpec& spec) {
  if (spec.blocks.empty()) throw PreconditionError("bad-parameter", "chain needs at least one block");
  for (int i = 0; i < spec.length(); ++i) {
    const auto& block = spec.blocks[static_cast<std::size_t>(i)];
    const bool seen = std::any_of(spec.blocks.begin(), spec.blocks.begin() + i, [&](const ChainBlock& b) {
      return b.graph == block.graph && b.u == block.u && b.v == block.v;
    });
    if (seen) continue;
    if (!spec.require_special) {
      if (!block.graph.valid_vertex(block.u) || !block.graph.valid_vertex(block.v) || block.u == block.v ||
          block.graph.adjacent(block.u, block.v)) {
        throw PreconditionError("bad-special-pair",
                                "block " + std::to_string(i + 1) + " needs distinct non-adjacent u, v");
      }
      continue;
    }
    const auto report = is_special(block.graph);
    if (!report.is_special) {
      throw PreconditionError("block-not-special", "block " + std::to_string(i + 1) +
                                                       " is not special: " +
                                                       std::string(to_string(report.failure_reason)));
    }
    if (!block.graph.valid_vertex(block.u) || !block.graph.valid_vertex(block.v) ||
        !is_special_pair(block.graph, block.u, block.v)) {
      throw PreconditionError("bad-special-pair",
                              "block " + std::to_string(i + 1) + " has an invalid special pair");
    }
  }
}

}  // namespace detail

/// Builds G_l, G_l^- or G_l^+ from the spec.
inline Graph build_chain(const ChainSpec& spec) {
  detail::validate_chain(spec);
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (int i = 0; i < spec.length(); ++i) {
    const auto& block = spec.blocks[static_cast<std::size_t>(i)];
    const Vertex base = spec.offset(i);
    for (auto [a, b] : block.graph.edges()) edges.emplace_back(base + a, base + b);
    for (Vertex x = 0; x < block.graph.order(); ++x) {
      labels.push_back("B" + std::to_string(i + 1) + ":" + block.graph.label(x));
    }
    if (i + 1 < spec.length()) edges.emplace_back(spec.global_v(i), spec.global_u(i + 1));
  }
  const int n = spec.plain_order();
  Graph plain(n, edges, labels);
  switch (spec.variant) {
    case ChainVariant::kPlain:
      return plain;
    case ChainVariant::kMinus:
      return delete_vertex(plain, spec.global_v(spec.length() - 1));
    case ChainVariant::kPlus: {
      edges.emplace_back(spec.global_u(0), n);
      labels.push_back("leaf");
      return Graph(n + 1, edges, std::move(labels));
    }
  }
  return plain;
}

/// A surjection phi: V(source) -> V(target) under which target is a quotient.
struct QuotientMap {
  Graph source;
  Graph target;
  std::vector<Vertex> phi;

  /// Every target vertex has a preimage, every target edge has a preimage
  /// edge, and every source edge between different classes maps to a
  /// target edge. Edges inside one class are contracted.
  bool satisfies_quotient_condition() const {
    if (static_cast<int>(phi.size()) != source.order()) return false;
    std::vector<char> hit(static_cast<std::size_t>(target.order()), 0);
    for (Vertex h : phi) {
      if (!target.valid_vertex(h)) return false;
      hit[static_cast<std::size_t>(h)] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
    std::vector<char> covered(static_cast<std::size_t>(target.order()) *
                                  static_cast<std::size_t>(target.order()),
                              0);
    for (auto [a, b] : source.edges()) {
      const Vertex ha = phi[static_cast<std::size_t>(a)];
      const Vertex hb = phi[static_cast<std::size_t>(b)];
      if (ha == hb) continue;
      if (!target.adjacent(ha, hb)) return false;
      covered[static_cast<std::size_t>(ha) * static_cast<std::size_t>(target.order()) +
              static_cast<std::size_t>(hb)] = 1;
      covered[static_cast<std::size_t>(hb) * static_cast<std::size_t>(target.order()) +
              static_cast<std::size_t>(ha)] = 1;
    }
    for (auto [a, b] : target.edges()) {
      if (!covered[static_cast<std::size_t>(a) * static_cast<std::size_t>(target.order()) +
                   static_cast<std::size_t>(b)]) {
        return false;
      }
    }
    return true;
  }

  /// D_phi(h) = Σ_{phi(g) = h} D(g).
  Distribution collapse(const Distribution& d) const {
    require_bound(source, d);
    Distribution out(target);
    for (Vertex x = 0; x < source.order(); ++x) {
      if (d[x] > 0) out.add(phi[static_cast<std::size_t>(x)], d[x]);
    }
    return out;
  }

  VertexList preimage(Vertex h) const {
    VertexList out;
    for (std::size_t x = 0; x < phi.size(); ++x) {
      if (phi[x] == h) out.push_back(static_cast<Vertex>(x));
    }
    return out;
  }
};

/// Collapses plain G_l onto P_{3l}: u_i -> p_{3i-2}, v_i -> p_{3i}, the rest
/// of block i -> p_{3i-1} (0-based path ids 3i, 3i+2, 3i+1).
inline QuotientMap collapse_chain(const ChainSpec& spec) {
  if (spec.variant != ChainVariant::kPlain) {
    throw PreconditionError("bad-variant", "collapse_chain needs the plain variant");
  }
  QuotientMap map{build_chain(spec), path_graph(3 * spec.length()), {}};
  map.phi.resize(static_cast<std::size_t>(map.source.order()));
  for (int i = 0; i < spec.length(); ++i) {
    const auto& block = spec.blocks[static_cast<std::size_t>(i)];
    for (Vertex x = 0; x < block.graph.order(); ++x) {
      Vertex image = 3 * i + 1;
      if (x == block.u) image = 3 * i;
      if (x == block.v) image = 3 * i + 2;
      map.phi[static_cast<std::size_t>(spec.offset(i) + x)] = image;
    }
  }
  if (!map.satisfies_quotient_condition()) {
    throw InternalError("quotient-violated", "chain collapse failed the quotient condition");
  }
  return map;
}

}  // namespace pebbling
