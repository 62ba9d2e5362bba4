#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

/// Pebble counts on the vertices of one particular graph.
class Distribution {
 public:
  Distribution() = default;

  explicit Distribution(const Graph& g)
      : counts_(static_cast<std::size_t>(g.order()), 0), graph_key_(g.fingerprint()) {}

  Distribution(const Graph& g, std::vector<int> counts)
      : counts_(std::move(counts)), graph_key_(g.fingerprint()) {
    if (static_cast<int>(counts_.size()) != g.order()) {
      throw InputError("bad-distribution", "count vector length must equal vertex count");
    }
    if (std::any_of(counts_.begin(), counts_.end(), [](int c) { return c < 0; })) {
      throw InputError("negative-count", "pebble counts must be nonnegative");
    }
  }

  /// Builds from sparse (vertex, count) pairs; repeated vertices accumulate.
  static Distribution from_pairs(const Graph& g, std::span<const std::pair<Vertex, int>> pairs) {
    Distribution d(g);
    for (auto [v, c] : pairs) d.add(v, c);
    return d;
  }

  int vertex_count() const noexcept { return static_cast<int>(counts_.size()); }

  int operator[](Vertex v) const { return counts_[check(v)]; }
  int at(Vertex v) const { return counts_[check(v)]; }

  void add(Vertex v, int c) {
    auto& slot = counts_[check(v)];
    if (slot + c < 0) throw InputError("negative-count", "pebble counts must stay nonnegative");
    slot += c;
  }

  void set(Vertex v, int c) {
    if (c < 0) throw InputError("negative-count", "pebble counts must be nonnegative");
    counts_[check(v)] = c;
  }

  /// |D|.
  long long size() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0LL);
  }

  /// D(S).
  long long subset_sum(std::span<const Vertex> s) const {
    long long total = 0;
    for (Vertex v : s) total += at(v);
    return total;
  }

  bool empty() const { return size() == 0; }

  /// Vertices holding at least one pebble, ascending.
  VertexList support() const {
    VertexList out;
    for (std::size_t v = 0; v < counts_.size(); ++v) {
      if (counts_[v] > 0) out.push_back(static_cast<Vertex>(v));
    }
    return out;
  }

  const std::vector<int>& counts() const noexcept { return counts_; }
  std::uint64_t graph_key() const noexcept { return graph_key_; }

  bool bound_to(const Graph& g) const noexcept {
    return graph_key_ == g.fingerprint() && vertex_count() == g.order();
  }

  /// Pointwise D <= other.
  bool dominated_by(const Distribution& other) const {
    if (other.counts_.size() != counts_.size()) return false;
    for (std::size_t v = 0; v < counts_.size(); ++v) {
      if (counts_[v] > other.counts_[v]) return false;
    }
    return true;
  }

  Distribution& operator+=(const Distribution& other) {
    if (other.graph_key_ != graph_key_ || other.counts_.size() != counts_.size()) {
      throw InputError("graph-mismatch", "distributions live on different graphs");
    }
    for (std::size_t v = 0; v < counts_.size(); ++v) counts_[v] += other.counts_[v];
    return *this;
  }

  friend Distribution operator+(Distribution a, const Distribution& b) { return a += b; }

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.graph_key_ == b.graph_key_ && a.counts_ == b.counts_;
  }

 private:
  std::size_t check(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= counts_.size()) {
      throw InputError("bad-vertex", "vertex id out of range: " + std::to_string(v));
    }
    return static_cast<std::size_t>(v);
  }

  std::vector<int> counts_;
  std::uint64_t graph_key_ = 0;
};

/// Throws unless d was built for g.
inline void require_bound(const Graph& g, const Distribution& d) {
  if (!d.bound_to(g)) {
    throw InputError("graph-mismatch", "distribution is bound to a different graph");
  }
}

struct Move {
  Vertex from = 0;
  Vertex to = 0;
  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSequence = std::vector<Move>;

/// Removes two pebbles from `from` and places one on adjacent `to`.
inline Distribution apply_move(const Graph& g, const Distribution& d, Vertex from, Vertex to) {
  require_bound(g, d);
  if (!g.adjacent(from, to)) {
    throw PreconditionError("not-adjacent", "pebbling move between non-adjacent vertices " +
                                                std::to_string(from) + "->" + std::to_string(to));
  }
  if (d[from] < 2) {
    throw PreconditionError("insufficient-pebbles",
                            "pebbling move needs two pebbles at vertex " + std::to_string(from));
  }
  Distribution out = d;
  out.add(from, -2);
  out.add(to, 1);
  return out;
}

/// Replays a move sequence, validating every step.
inline Distribution replay(const Graph& g, Distribution d, std::span<const Move> moves) {
  for (const Move& m : moves) d = apply_move(g, d, m.from, m.to);
  return d;
}

// Text formats ---------------------------------------------------------------

/// Sparse "vertex count" lines, ascending vertex order, zero entries omitted.
inline std::string format_distribution(const Distribution& d) {
  std::ostringstream out;
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    if (d[v] > 0) out << v << ' ' << d[v] << '\n';
  }
  return out.str();
}

/// Compact single-line form "v:c,v:c".
inline std::string format_distribution_inline(const Distribution& d) {
  std::string out;
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    if (d[v] == 0) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(v) + ':' + std::to_string(d[v]);
  }
  return out;
}

namespace detail {

inline int parse_int(const std::string& token, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw InputError("parse-error", std::string("expected integer ") + what + ", got '" + token + "'");
  }
  return value;
}

}  // namespace detail

/// Parses either the line format ("vertex count" per line, '#' comments) or
/// the inline format ("v:c" tokens separated by commas or whitespace).
inline Distribution parse_distribution(const Graph& g, const std::string& text) {
  Distribution d(g);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) continue;
    const bool inline_form = parts[0].find(':') != std::string::npos;
    if (inline_form) {
      for (const auto& p : parts) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) {
          throw InputError("parse-error", "expected v:c token, got '" + p + "'");
        }
        const int v = detail::parse_int(p.substr(0, colon), "vertex");
        const int c = detail::parse_int(p.substr(colon + 1), "count");
        if (!g.valid_vertex(v)) throw InputError("bad-vertex", "vertex out of range: " + p);
        if (c < 0) throw InputError("negative-count", "negative pebble count: " + p);
        d.add(v, c);
      }
    } else {
      if (parts.size() != 2) throw InputError("parse-error", "expected 'vertex count': " + line);
      const int v = detail::parse_int(parts[0], "vertex");
      const int c = detail::parse_int(parts[1], "count");
      if (!g.valid_vertex(v)) throw InputError("bad-vertex", "vertex out of range: " + line);
      if (c < 0) throw InputError("negative-count", "negative pebble count: " + line);
      d.add(v, c);
    }
  }
  return d;
}

/// One "from->to" line per move, in execution order.
inline std::string format_moves(std::span<const Move> moves) {
  std::string out;
  for (const Move& m : moves) out += std::to_string(m.from) + "->" + std::to_string(m.to) + "\n";
  return out;
}

}  // namespace pebbling
