#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pebbling/chain.hpp"
#include "pebbling/distribution.hpp"
#include "pebbling/engine.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/ratio.hpp"
#include "pebbling/solver.hpp"

namespace pebbling {

/// Edge with 15 |N[u] ∪ N[v]| >= 29 (δ+1).
inline bool star_property(const Graph& g, Vertex u, Vertex v) {
  if (!g.valid_vertex(u) || !g.valid_vertex(v) || !g.adjacent(u, v)) {
    throw PreconditionError("not-an-edge", "star_property needs an edge");
  }
  return 15LL * closed_union_size(g, u, v) >= 29LL * (g.min_degree() + 1);
}

struct StarSets {
  VertexList h_set;
  VertexList a_set;
  VertexList b_set;
  std::vector<Edge> p_pairs;
  std::vector<Edge> r_pairs;
  std::map<Edge, VertexList> l_map;
};

struct StartDistribution {
  Distribution distribution;
  StarSets sets;
};

namespace detail {

inline int distance_to_pair(const Graph& g, Vertex x, const Edge& p) {
  return std::min(g.distance(x, p.first), g.distance(x, p.second));
}

}  // namespace detail

/// Greedy start distribution: every endpoint of a star edge ends up
/// reachable, with strengthening ratio at least 4(δ+1)/15. Edges are
/// scanned in lexicographic order.
inline StartDistribution build_d0(const Graph& g) {
  require_connected(g, "build_d0");
  const int n = g.order();
  std::vector<char> in_h(static_cast<std::size_t>(n), 0);
  auto add_ball = [&](Vertex v) {
    for (Vertex x = 0; x < n; ++x) {
      if (g.distance(v, x) <= 2) in_h[static_cast<std::size_t>(x)] = 1;
    }
  };
  auto h = [&](Vertex v) { return in_h[static_cast<std::size_t>(v)] != 0; };

  StarSets sets;
  std::vector<Edge> star_edges;
  for (auto [a, b] : g.edges()) {
    if (star_property(g, a, b)) star_edges.emplace_back(a, b);
  }

  // Steps 1-2: star edges with both ends outside H.
  for (bool found = true; found;) {
    found = false;
    for (auto [u, v] : star_edges) {
      if (h(u) || h(v)) continue;
      add_ball(u);
      add_ball(v);
      sets.p_pairs.emplace_back(u, v);
      found = true;
      break;
    }
  }

  // Steps 3-5: star edges with one end outside H.
  std::vector<char> in_a(static_cast<std::size_t>(n), 0);
  std::vector<char> in_b(static_cast<std::size_t>(n), 0);
  for (bool found = true; found;) {
    found = false;
    for (auto [a, b] : star_edges) {
      Vertex u = a;
      Vertex v = b;
      if (h(v)) std::swap(u, v);
      if (h(v)) continue;
      add_ball(v);
      int near = 0;
      const Edge* only = nullptr;
      for (const Edge& p : sets.p_pairs) {
        if (detail::distance_to_pair(g, u, p) == 2) {
          ++near;
          only = &p;
        }
      }
      if (near > 1) {
        in_b[static_cast<std::size_t>(v)] = 1;
      } else {
        in_a[static_cast<std::size_t>(v)] = 1;
        if (near == 1) sets.l_map[*only].push_back(v);
      }
      found = true;
      break;
    }
  }

  // Step 6: promote pairs with at least five attached A-vertices.
  std::vector<Edge> kept;
  for (const Edge& p : sets.p_pairs) {
    auto it = sets.l_map.find(p);
    if (it != sets.l_map.end() && it->second.size() >= 5) {
      for (Vertex x : it->second) {
        in_a[static_cast<std::size_t>(x)] = 0;
        in_b[static_cast<std::size_t>(x)] = 1;
      }
      sets.r_pairs.push_back(p);
    } else {
      kept.push_back(p);
    }
  }
  sets.p_pairs = std::move(kept);
  sets.h_set = from_mask(in_h);
  sets.a_set = from_mask(in_a);
  sets.b_set = from_mask(in_b);

  // Step 7.
  Distribution d(g);
  for (Vertex x : sets.a_set) d.add(x, 4);
  for (Vertex x : sets.b_set) d.add(x, 3);
  for (auto [u, v] : sets.p_pairs) {
    d.add(u, 3);
    d.add(v, 3);
  }
  for (auto [u, v] : sets.r_pairs) {
    d.add(u, 5);
    d.add(v, 6);
  }
  return {std::move(d), std::move(sets)};
}

enum class CaseTag { A, B1, B2, C1, C2, C3, C4, D1, D2a, D2b, D3a, D4, D5, D6, D7 };

inline std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::A: return "A";
    case CaseTag::B1: return "B1";
    case CaseTag::B2: return "B2";
    case CaseTag::C1: return "C1";
    case CaseTag::C2: return "C2";
    case CaseTag::C3: return "C3";
    case CaseTag::C4: return "C4";
    case CaseTag::D1: return "D1";
    case CaseTag::D2a: return "D2a";
    case CaseTag::D2b: return "D2b";
    case CaseTag::D3a: return "D3a";
    case CaseTag::D4: return "D4";
    case CaseTag::D5: return "D5";
    case CaseTag::D6: return "D6";
    case CaseTag::D7: return "D7";
  }
  return "?";
}

struct ExpansionStep {
  Distribution delta;
  CaseTag case_tag = CaseTag::A;
  Ratio ratio;
  VertexList new_t_vertices;
  /// The unreachable component the case was applied to (empty for case A).
  VertexList component;
};

namespace detail {

struct Proposal {
  CaseTag tag;
  std::vector<std::pair<Vertex, int>> delta;
  VertexList component;
};

/// Picks the first applicable expansion case for a non-solvable D.
class CaseSelector {
 public:
  CaseSelector(const Graph& g, const ReachabilityReport& report)
      : g_(g), report_(report), dp1_(g.min_degree() + 1) {}

  Proposal select() const {
    if (auto p = case_a()) return *p;
    for (const auto& s : report_.u_components) {
      if (auto p = component_case(s)) return *p;
    }
    if (auto p = case_d5()) return *p;
    for (const auto& s : report_.u_components) {
      if (auto p = case_d6_d7(s)) return *p;
    }
    throw InternalError("subcase-8", subcase8_diagnostics());
  }

 private:
  // 15 x >= num (δ+1)
  bool over(long long x, long long num) const { return 15 * x >= num * dp1_; }
  bool under(long long x, long long num) const { return 15 * x <= num * dp1_; }

  std::optional<Proposal> case_a() const {
    const auto& u_set = report_.u_set;
    for (std::size_t i = 0; i < u_set.size(); ++i) {
      for (std::size_t j = i + 1; j < u_set.size(); ++j) {
        const Vertex u = u_set[i];
        const Vertex v = u_set[j];
        if (g_.distance(u, v) != 3) continue;
        for (Vertex w : report_.h_set) {
          if (g_.distance(u, w) + g_.distance(w, v) != 3) continue;
          // The endpoint next to w gets 3, the far one 4.
          if (g_.distance(w, v) == 1) return Proposal{CaseTag::A, {{u, 4}, {v, 3}}, {}};
          return Proposal{CaseTag::A, {{v, 4}, {u, 3}}, {}};
        }
      }
    }
    return std::nullopt;
  }

  static int max_distance(const DistanceTable& table, const VertexList& s) {
    int best = 0;
    for (Vertex a : s) {
      for (Vertex b : s) best = std::max(best, table(a, b));
    }
    return best;
  }

  /// Greedy maximal set of S vertices at pairwise B-distance >= 3.
  static VertexList maximal_far_set(const DistanceTable& b, const VertexList& s, VertexList seed) {
    for (Vertex x : s) {
      if (std::find(seed.begin(), seed.end(), x) != seed.end()) continue;
      bool far = true;
      for (Vertex k : seed) far = far && b(x, k) >= 3;
      if (far) seed.push_back(x);
    }
    std::sort(seed.begin(), seed.end());
    return seed;
  }

  static void add_ones(Proposal& p, const VertexList& k, Vertex skip) {
    for (Vertex x : k) {
      if (x != skip) p.delta.emplace_back(x, 1);
    }
  }

  std::optional<Proposal> component_case(const VertexList& s) const {
    const DistanceTable b(g_, k_neighborhood(g_, s, 1, true));
    const int max_b = max_distance(b, s);
    if (max_b >= 4) return case_b(s, b);
    if (max_b == 3) return case_c(s, b);
    return case_d(s, b);
  }

  Proposal case_b(const VertexList& s, const DistanceTable& b) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const Vertex u = s[i];
        const Vertex v = s[j];
        if (b(u, v) != 2) continue;
        VertexList both = b.closed_neighborhood(u);
        const VertexList nv = b.closed_neighborhood(v);
        both.insert(both.end(), nv.begin(), nv.end());
        std::sort(both.begin(), both.end());
        both.erase(std::unique(both.begin(), both.end()), both.end());
        if (!over(static_cast<long long>(both.size()), 28)) continue;
        for (Vertex w : b.members()) {
          if (b(u, w) == 1 && b(w, v) == 1) return Proposal{CaseTag::B1, {{u, 2}, {v, 2}, {w, 3}}, s};
        }
      }
    }
    const DistanceTable inside(g_, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const Vertex a = s[i];
        const Vertex e = s[j];
        if (b(a, e) == 4 && inside(a, e) == 4) return Proposal{CaseTag::B2, {{a, 4}, {e, 4}}, s};
      }
    }
    throw InternalError("case-b", "no B-distance-2 pair or 4-path found in component" + describe(s));
  }

  Proposal case_c(const VertexList& s, const DistanceTable& b) const {
    // Edge of S with 15 |N[u] ∪ N[v]| >= 20 (δ+1). Scanning every S-edge
    // includes the three edges of the 3-path the existence argument uses.
    std::optional<Edge> edge;
    for (auto [x, y] : g_.edges()) {
      if (!std::binary_search(s.begin(), s.end(), x) || !std::binary_search(s.begin(), s.end(), y)) continue;
      if (over(closed_union_size(g_, x, y), 20)) {
        edge = Edge{x, y};
        break;
      }
    }
    if (!edge) throw InternalError("case-c-edge", "no heavy edge in component" + describe(s));

    auto eccentric = [&](Vertex v) {
      int e = 0;
      for (Vertex x : s) e = std::max(e, b(v, x));
      return e;
    };
    // Subcase 1: one endpoint is within B-distance 2 of all of S.
    for (Vertex v : {edge->second, edge->first}) {
      if (eccentric(v) > 2) continue;
      VertexList seed;
      for (std::size_t i = 0; i < s.size() && seed.empty(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (b(s[i], s[j]) >= 3) {
            seed = {s[i], s[j]};
            break;
          }
        }
      }
      const VertexList k = maximal_far_set(b, s, seed);
      Proposal p{CaseTag::C1, {{v, 4}}, s};
      add_ones(p, k, v);
      return p;
    }
    const auto [u, v] = *edge;
    bool covered = true;
    for (Vertex x : s) covered = covered && std::min(b(u, x), b(v, x)) <= 2;
    if (covered) {
      const VertexList k = maximal_far_set(b, s, {v});
      Proposal p{CaseTag::C2, {{u, 3}, {v, 3}}, s};
      add_ones(p, k, v);
      return p;
    }
    Vertex far = -1;
    for (Vertex x : s) {
      if (b(x, u) == 3 && b(x, v) == 3) {
        far = x;
        break;
      }
    }
    if (far < 0) throw InternalError("case-c-far", "no vertex at B-distance 3 from both ends" + describe(s));
    const VertexList k = maximal_far_set(b, s, {far, v});
    if (k.size() >= 3) {
      Proposal p{CaseTag::C3, {{v, 8}}, s};
      add_ones(p, k, v);
      return p;
    }
    return Proposal{CaseTag::C4, {{far, 4}, {v, 4}}, s};
  }

  std::optional<Proposal> case_d(const VertexList& s, const DistanceTable& b) const {
    const auto size = static_cast<long long>(s.size());
    if (over(size, 16)) return Proposal{CaseTag::D1, {{s.front(), 4}}, s};
    for (auto [x, y] : g_.edges()) {
      if (!std::binary_search(s.begin(), s.end(), x) || !std::binary_search(s.begin(), s.end(), y)) continue;
      if (over(closed_union_size(g_, x, y), 16)) return Proposal{CaseTag::D2a, {{y, 4}}, s};
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const Vertex u = s[i];
        const Vertex v = s[j];
        if (!over(closed_union_size(g_, u, v), 16)) continue;
        for (Vertex w : s) {
          if (g_.adjacent(u, w) && g_.adjacent(v, w)) return Proposal{CaseTag::D2b, {{w, 4}}, s};
        }
      }
    }
    if (under(size, 14)) {
      bool shared = true;
      for (std::size_t i = 0; i < s.size() && shared; ++i) {
        for (std::size_t j = i + 1; j < s.size() && shared; ++j) {
          shared = std::any_of(report_.h_set.begin(), report_.h_set.end(), [&](Vertex h) {
            return g_.adjacent(h, s[i]) && g_.adjacent(h, s[j]);
          });
        }
      }
      if (shared) return Proposal{CaseTag::D3a, {{s.front(), 2}}, s};
    }
    for (Vertex v : s) {
      bool hub = true;
      for (Vertex x : s) hub = hub && b(v, x) <= 1;
      if (hub) return Proposal{CaseTag::D4, {{v, 2}}, s};
    }
    return std::nullopt;
  }

  std::optional<Proposal> case_d5() const {
    const auto& comps = report_.u_components;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (std::size_t j = i + 1; j < comps.size(); ++j) {
        for (Vertex u : comps[i]) {
          for (Vertex v : comps[j]) {
            if (g_.distance(u, v) == 2) return Proposal{CaseTag::D5, {{u, 4}, {v, 3}}, comps[i]};
          }
        }
      }
    }
    return std::nullopt;
  }

  bool isolated(const VertexList& s) const {
    for (const auto& other : report_.u_components) {
      if (other == s) continue;
      for (Vertex x : s) {
        if (distance_to_set(g_, x, other) < 3) return false;
      }
    }
    return true;
  }

  std::optional<Proposal> case_d6_d7(const VertexList& s) const {
    if (!isolated(s)) return std::nullopt;
    const auto closed = k_neighborhood(g_, s, 1, true);
    if (over(static_cast<long long>(closed.size()), 16)) return Proposal{CaseTag::D6, {{s.front(), 4}}, s};
    for (Vertex h : report_.h_set) {
      bool near = true;
      for (Vertex x : s) near = near && g_.distance(h, x) <= 2;
      if (near) return Proposal{CaseTag::D7, {{h, 3}}, s};
    }
    return std::nullopt;
  }

  static std::string list(const VertexList& xs) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
    out << '}';
    return out.str();
  }

  std::string describe(const VertexList& s) const { return " S=" + list(s); }

  std::string subcase8_diagnostics() const {
    std::ostringstream out;
    out << "no expansion case applies (delta+1=" << dp1_ << ")";
    for (const auto& s : report_.u_components) {
      const auto closed = k_neighborhood(g_, s, 1, true);
      VertexList h_near;
      for (Vertex h : report_.h_set) {
        if (std::binary_search(closed.begin(), closed.end(), h)) h_near.push_back(h);
      }
      out << "; S=" << list(s) << " N[S]=" << list(closed) << " H∩N(S)=" << list(h_near);
    }
    return out.str();
  }

  const Graph& g_;
  const ReachabilityReport& report_;
  long long dp1_;
};

struct MeasuredStep {
  ExpansionStep step;
  ReachabilityReport after;
};

inline MeasuredStep measure_step(const Graph& g, const Distribution& d, const ReachabilityReport& before,
                                 const Proposal& proposal) {
  MeasuredStep out;
  auto& step = out.step;
  step.case_tag = proposal.tag;
  step.component = proposal.component;
  step.delta = Distribution(g);
  for (auto [v, c] : proposal.delta) step.delta.add(v, c);
  out.after = classify(g, d + step.delta);
  for (Vertex v : before.t_set) {
    if (!out.after.in_t(v)) throw InternalError("t-shrank", "strongly reachable set lost a vertex");
  }
  for (Vertex v : out.after.t_set) {
    if (!before.in_t(v)) step.new_t_vertices.push_back(v);
  }
  step.ratio = Ratio{static_cast<long long>(step.new_t_vertices.size()), step.delta.size()};
  const long long dp1 = g.min_degree() + 1;
  if (step.new_t_vertices.empty() || !step.ratio.at_least(4 * dp1, 15)) {
    throw InternalError("ratio-violated", "case " + std::string(to_string(step.case_tag)) + " gave ratio " +
                                              step.ratio.str() + " below 4(delta+1)/15");
  }
  return out;
}

}  // namespace detail

/// One expansion D -> D + Δ chosen by the first applicable case; the ratio
/// is measured from the actual T sets.
inline ExpansionStep expand_step(const Graph& g, const Distribution& d, const ReachabilityReport& report) {
  require_connected(g, "expand_step");
  if (report.u_set.empty()) throw PreconditionError("already-solvable", "distribution is already solvable");
  const auto proposal = detail::CaseSelector(g, report).select();
  return detail::measure_step(g, d, report, proposal).step;
}

struct Construction {
  Distribution d0;
  StarSets star_sets;
  Ratio d0_ratio;
  std::vector<ExpansionStep> steps;
  Distribution distribution;
  int n = 0;
  int min_degree = 0;

  /// 15n / (4(δ+1)) as an exact fraction.
  Ratio bound() const { return Ratio{15LL * n, 4LL * (min_degree + 1)}; }
  bool within_bound() const { return 4LL * (min_degree + 1) * distribution.size() <= 15LL * n; }
};

/// Solvable distribution of size at most 15n / (4(δ+1)) for a connected
/// graph of diameter >= 3: D0 followed by expansion steps until solvable.
inline Construction construct_solvable(const Graph& g) {
  require_connected(g, "construct_solvable");
  if (diameter(g) < 3) throw PreconditionError("diameter-too-small", "construct_solvable needs diameter >= 3");
  Construction out;
  out.n = g.order();
  out.min_degree = g.min_degree();
  const long long dp1 = out.min_degree + 1;
  auto start = build_d0(g);
  out.d0 = start.distribution;
  out.star_sets = std::move(start.sets);
  auto report = classify(g, out.d0);
  out.d0_ratio = Ratio{static_cast<long long>(report.t_set.size()), out.d0.size()};
  if (!out.d0_ratio.at_least(4 * dp1, 15)) {
    throw InternalError("d0-ratio", "start distribution ratio " + out.d0_ratio.str() + " below 4(delta+1)/15");
  }
  Distribution d = out.d0;
  while (!report.u_set.empty()) {
    if (static_cast<int>(out.steps.size()) > out.n) {
      throw InternalError("no-progress", "expansion loop exceeded n steps");
    }
    const auto proposal = detail::CaseSelector(g, report).select();
    auto measured = detail::measure_step(g, d, report, proposal);
    d += measured.step.delta;
    report = std::move(measured.after);
    out.steps.push_back(std::move(measured.step));
  }
  if (!is_k_solvable(g, d, 1).solvable) throw InternalError("not-solvable", "construction ended unsolvable");
  out.distribution = std::move(d);
  if (!out.within_bound()) {
    throw InternalError("bound-violated", "constructed distribution exceeds 15n/(4(delta+1))");
  }
  return out;
}

/// 4 pebbles at v_{3j-2} and u_{3j} (j = 1..k) for l = 3k + r; r = 1 adds 4
/// on u_{3k+1}, r = 2 adds 3 on v_{3k+1} and 3 on u_{3k+2}.
inline Distribution chain_upper_distribution(const ChainSpec& spec) {
  if (spec.variant != ChainVariant::kPlain) {
    throw PreconditionError("bad-variant", "chain_upper_distribution needs the plain variant");
  }
  const Graph g = build_chain(spec);
  const int l = spec.length();
  const int k = l / 3;
  const int r = l % 3;
  Distribution d(g);
  for (int j = 0; j < k; ++j) {
    d.add(spec.global_v(3 * j), 4);
    d.add(spec.global_u(3 * j + 2), 4);
  }
  if (r == 1) d.add(spec.global_u(3 * k), 4);
  if (r == 2) {
    d.add(spec.global_v(3 * k), 3);
    d.add(spec.global_u(3 * k + 1), 3);
  }
  return d;
}

/// (δ+1) π*(g) < 4n, with π* from the exact solver.
inline bool strict_bound_check(const Graph& g) {
  require_connected(g, "strict_bound_check");
  if (g.order() > 12) throw PreconditionError("too-large", "strict_bound_check needs n <= 12");
  const auto result = pi_star(g, 1);
  if (result.status != SolverStatus::kSolved) throw BudgetError("exceeded-budget", "solver did not finish");
  return static_cast<long long>(g.min_degree() + 1) * result.pi_star < 4LL * g.order();
}

}  // namespace pebbling
