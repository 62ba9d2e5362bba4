#pragma once

#include <algorithm>
#include <numeric>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pebbling/distribution.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

inline constexpr int kMaxTargetPebbles = 15;

enum class SearchStrategy {
  /// Forward and flow search alternately, with growing budgets.
  kPortfolio,
  /// Backward search over move counts per directed edge.
  kFlow,
  /// Forward depth-first search over distribution states.
  kStates,
};

struct EngineOptions {
  SearchStrategy strategy = SearchStrategy::kPortfolio;
  /// First-round state budget of each search in the portfolio strategy.
  std::size_t probe_states = 4096;
  /// Skip states pointwise dominated by an already failed state (state
  /// search only). Never changes answers.
  bool dominance_pruning = false;
  /// Hard cap on distinct states per query; exceeding it throws BudgetError.
  std::size_t state_limit = 20'000'000;
};

struct ReachResult {
  bool reachable = false;
  /// Valid move sequence ending with >= k pebbles on the target when reachable.
  MoveSequence witness;
  std::size_t states_explored = 0;
};

struct SolvableResult {
  bool solvable = false;
  std::optional<Vertex> failing_vertex;
};

/// T/H/U partition: strongly reachable, reachable only, unreachable.
struct ReachabilityReport {
  VertexList t_set;
  VertexList h_set;
  VertexList u_set;
  std::vector<VertexList> u_components;
  std::vector<char> reachable;  // indexed by vertex

  bool in_t(Vertex v) const { return std::binary_search(t_set.begin(), t_set.end(), v); }
  bool in_h(Vertex v) const { return std::binary_search(h_set.begin(), h_set.end(), v); }
  bool in_u(Vertex v) const { return std::binary_search(u_set.begin(), u_set.end(), v); }
};

namespace detail {

/// floor(Σ_u c(u) 2^{-dist(u,target)}) computed exactly by carrying layer
/// sums inward: floor(S_d + x/2) = S_d + floor(floor(x)/2).
inline long long floor_weight(const Graph& g, std::span<const int> counts, Vertex target) {
  const int ecc = g.eccentricity(target);
  std::vector<long long> layer(static_cast<std::size_t>(ecc) + 1, 0);
  for (Vertex u = 0; u < g.order(); ++u) {
    layer[static_cast<std::size_t>(g.distance(u, target))] += counts[static_cast<std::size_t>(u)];
  }
  long long carry = 0;
  for (int d = ecc; d >= 0; --d) carry = layer[static_cast<std::size_t>(d)] + carry / 2;
  return carry;
}

/// Moves pebbles layer by layer towards the target along the shortest-path
/// DAG, splitting units among parents to complete pairs. Any result is a
/// legal move sequence; on trees the reached count is exactly the maximum.
inline int greedy_inward(const Graph& g, std::vector<int> counts, Vertex target,
                         MoveSequence* moves) {
  const int n = g.order();
  VertexList order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.distance(a, target) > g.distance(b, target);
  });
  for (Vertex v : order) {
    const int dv = g.distance(v, target);
    if (dv == 0) break;
    auto& cv = counts[static_cast<std::size_t>(v)];
    int units = cv / 2;
    if (units == 0) continue;
    cv -= 2 * units;
    for (; units > 0; --units) {
      Vertex best = -1;
      bool best_odd = false;
      int best_count = -1;
      for (Vertex p : g.neighbors(v)) {
        if (g.distance(p, target) != dv - 1) continue;
        const int cp = counts[static_cast<std::size_t>(p)];
        const bool odd = (cp % 2) == 1;
        if (best < 0 || (odd && !best_odd) || (odd == best_odd && cp > best_count)) {
          best = p;
          best_odd = odd;
          best_count = cp;
        }
      }
      counts[static_cast<std::size_t>(best)] += 1;
      if (moves) moves->push_back({v, best});
    }
  }
  return counts[static_cast<std::size_t>(target)];
}

/// Drops moves whose removal keeps the sequence legal and the target at >= k.
inline MoveSequence trim_witness(const Graph& /*g*/, const std::vector<int>& start, Vertex target,
                                 int k, MoveSequence moves) {
  auto valid = [&](const MoveSequence& seq) {
    std::vector<int> c = start;
    for (const Move& m : seq) {
      auto& from = c[static_cast<std::size_t>(m.from)];
      if (from < 2) return false;
      from -= 2;
      c[static_cast<std::size_t>(m.to)] += 1;
    }
    return c[static_cast<std::size_t>(target)] >= k;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = moves.size(); i-- > 0;) {
      MoveSequence candidate = moves;
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
      if (valid(candidate)) {
        moves = std::move(candidate);
        changed = true;
      }
    }
  }
  return moves;
}

/// Memoised depth-first search over distribution states for one target.
class ReachSearch {
 public:
  ReachSearch(const Graph& g, Vertex target, int k, const EngineOptions& options)
      : g_(g), target_(target), k_(k), options_(options) {
    const int n = g.order();
    ordered_neighbors_.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      auto& list = ordered_neighbors_[static_cast<std::size_t>(v)];
      list = g.neighbors(v);
      std::stable_sort(list.begin(), list.end(), [&](Vertex a, Vertex b) {
        return g.distance(a, target) < g.distance(b, target);
      });
    }
    ecc_ = g.eccentricity(target);
    layer_.assign(static_cast<std::size_t>(ecc_) + 1, 0);
  }

  bool run(std::vector<int> counts, MoveSequence* witness) {
    std::fill(layer_.begin(), layer_.end(), 0);
    for (Vertex u = 0; u < g_.order(); ++u) {
      layer_[static_cast<std::size_t>(g_.distance(u, target_))] += counts[static_cast<std::size_t>(u)];
    }
    path_.clear();
    if (!dfs(counts)) return false;
    if (witness) *witness = path_;
    return true;
  }

  std::size_t states() const noexcept { return visited_.size(); }

 private:
  long long layered_weight() const {
    long long carry = 0;
    for (int d = ecc_; d >= 0; --d) carry = layer_[static_cast<std::size_t>(d)] + carry / 2;
    return carry;
  }

  static std::string key_of(const std::vector<int>& counts) {
    std::string key(counts.size() * 2, '\0');
    for (std::size_t i = 0; i < counts.size(); ++i) {
      key[2 * i] = static_cast<char>(counts[i] & 0xff);
      key[2 * i + 1] = static_cast<char>((counts[i] >> 8) & 0xff);
    }
    return key;
  }

  bool dominated_by_failure(const std::vector<int>& counts) const {
    for (const auto& failed : failed_) {
      bool below = true;
      for (std::size_t i = 0; i < counts.size() && below; ++i) below = counts[i] <= failed[i];
      if (below) return true;
    }
    return false;
  }

  void fail(const std::vector<int>& counts) {
    if (options_.dominance_pruning) failed_.push_back(counts);
  }

  bool dfs(std::vector<int>& counts) {
    if (counts[static_cast<std::size_t>(target_)] >= k_) return true;
    if (!visited_.insert(key_of(counts)).second) return false;
    if (visited_.size() > options_.state_limit) {
      throw BudgetError("state-limit", "reachability search exceeded " +
                                           std::to_string(options_.state_limit) + " states");
    }
    if (layered_weight() < k_) {
      fail(counts);
      return false;
    }
    if (options_.dominance_pruning && dominated_by_failure(counts)) return false;
    MoveSequence tail;
    if (greedy_inward(g_, counts, target_, &tail) >= k_) {
      path_.insert(path_.end(), tail.begin(), tail.end());
      return true;
    }
    for (Vertex v = 0; v < g_.order(); ++v) {
      const auto uv = static_cast<std::size_t>(v);
      if (counts[uv] < 2) continue;
      const auto dv = static_cast<std::size_t>(g_.distance(v, target_));
      for (Vertex w : ordered_neighbors_[uv]) {
        const auto uw = static_cast<std::size_t>(w);
        const auto dw = static_cast<std::size_t>(g_.distance(w, target_));
        counts[uv] -= 2;
        counts[uw] += 1;
        layer_[dv] -= 2;
        layer_[dw] += 1;
        path_.push_back({v, w});
        if (dfs(counts)) return true;
        path_.pop_back();
        counts[uv] += 2;
        counts[uw] -= 1;
        layer_[dv] += 2;
        layer_[dw] -= 1;
      }
    }
    fail(counts);
    return false;
  }

  const Graph& g_;
  Vertex target_;
  int k_;
  EngineOptions options_;
  std::vector<VertexList> ordered_neighbors_;
  int ecc_ = 0;
  std::vector<long long> layer_;
  std::unordered_set<std::string> visited_;
  std::vector<std::vector<int>> failed_;
  MoveSequence path_;
};

/// Backward search for a transfer flow f (moves per directed edge) with
/// c(x) + in(x) - 2 out(x) >= 0 everywhere and >= k at the target. Whether
/// a partial flow extends to a feasible one depends only on its excess
/// vector, which is the memo key. Any extension must feed every vertex in
/// deficit, so branching over the suppliers of one of them is complete.
/// A feasible flow is made acyclic by cancelling cycles (which only raises
/// excesses) and then executed in topological order.
class FlowSearch {
 public:
  FlowSearch(const Graph& g, Vertex target, int k, const EngineOptions& options)
      : g_(g), n_(g.order()), target_(target), k_(k), options_(options),
        flow_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0) {
    diam_ = 0;
    for (Vertex v = 0; v < n_; ++v) diam_ = std::max(diam_, g.eccentricity(v));
  }

  bool run(const std::vector<int>& counts, MoveSequence* witness) {
    excess_.assign(counts.begin(), counts.end());
    excess_[static_cast<std::size_t>(target_)] -= k_;
    if (!dfs(-1)) return false;
    if (witness) {
      cancel_cycles();
      *witness = schedule(counts);
    }
    return true;
  }

  std::size_t states() const noexcept { return failed_.size(); }

 private:
  int& flow(Vertex from, Vertex to) {
    return flow_[static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(to)];
  }

  /// Necessary conditions for extending the current excess vector.
  bool promising() const {
    // Σ e(x) 2^{-d(x,z)} never increases under a move and must end >= 0.
    for (Vertex z = 0; z < n_; ++z) {
      __int128 total = 0;
      for (Vertex x = 0; x < n_; ++x) {
        const int e = excess_[static_cast<std::size_t>(x)];
        if (e != 0) total += static_cast<__int128>(e) << (diam_ - g_.distance(x, z));
      }
      if (total < 0) return false;
    }
    // The surplus alone must be able to deliver each deficit.
    std::vector<int> surplus(static_cast<std::size_t>(n_));
    for (Vertex x = 0; x < n_; ++x) surplus[static_cast<std::size_t>(x)] = std::max(0, excess_[static_cast<std::size_t>(x)]);
    for (Vertex z = 0; z < n_; ++z) {
      const int e = excess_[static_cast<std::size_t>(z)];
      if (e < 0 && floor_weight(g_, surplus, z) < -e) return false;
    }
    return true;
  }

  std::string key() const {
    return std::string(reinterpret_cast<const char*>(excess_.data()), excess_.size() * sizeof(int));
  }

  /// Any choice of deficit is complete, so keep working on the supplier
  /// charged last while it is short, else take the least-id deficit.
  bool dfs(Vertex last) {
    Vertex deficit = -1;
    if (last >= 0 && excess_[static_cast<std::size_t>(last)] < 0) {
      deficit = last;
    } else {
      for (Vertex x = 0; x < n_; ++x) {
        if (excess_[static_cast<std::size_t>(x)] < 0) {
          deficit = x;
          break;
        }
      }
    }
    if (deficit < 0) return true;
    std::string state = key();
    if (failed_.count(state)) return false;
    if (!promising()) {
      remember(std::move(state));
      return false;
    }
    // Try first the suppliers with the most surplus weight around them.
    VertexList suppliers(g_.neighbors(deficit).begin(), g_.neighbors(deficit).end());
    std::vector<long long> mass(static_cast<std::size_t>(n_), 0);
    for (Vertex y : suppliers) {
      long long total = 0;
      for (Vertex x = 0; x < n_; ++x) {
        const int e = excess_[static_cast<std::size_t>(x)];
        if (e > 0 && x != deficit) total += static_cast<long long>(e) << std::max(0, 40 - 8 * g_.distance(x, y));
      }
      mass[static_cast<std::size_t>(y)] = total;
    }
    std::stable_sort(suppliers.begin(), suppliers.end(), [&](Vertex a, Vertex b) {
      return mass[static_cast<std::size_t>(a)] > mass[static_cast<std::size_t>(b)];
    });
    for (Vertex y : suppliers) {
      flow(y, deficit) += 1;
      excess_[static_cast<std::size_t>(deficit)] += 1;
      excess_[static_cast<std::size_t>(y)] -= 2;
      if (dfs(y)) return true;
      flow(y, deficit) -= 1;
      excess_[static_cast<std::size_t>(deficit)] -= 1;
      excess_[static_cast<std::size_t>(y)] += 2;
    }
    remember(std::move(state));
    return false;
  }

  void remember(std::string state) {
    failed_.insert(std::move(state));
    if (failed_.size() > options_.state_limit) {
      throw BudgetError("state-limit", "reachability search exceeded " +
                                           std::to_string(options_.state_limit) + " states");
    }
  }

  /// Finds a directed cycle in the support, or an empty list.
  VertexList find_cycle() {
    std::vector<int> color(static_cast<std::size_t>(n_), 0);
    std::vector<Vertex> parent(static_cast<std::size_t>(n_), -1);
    for (Vertex root = 0; root < n_; ++root) {
      if (color[static_cast<std::size_t>(root)] != 0) continue;
      std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
      color[static_cast<std::size_t>(root)] = 1;
      while (!stack.empty()) {
        auto& [x, next] = stack.back();
        const auto nbrs = g_.neighbors(x);
        if (next == nbrs.size()) {
          color[static_cast<std::size_t>(x)] = 2;
          stack.pop_back();
          continue;
        }
        const Vertex y = nbrs[next++];
        if (flow(x, y) == 0) continue;
        if (color[static_cast<std::size_t>(y)] == 1) {
          VertexList cycle{y};
          for (Vertex z = x; z != y; z = parent[static_cast<std::size_t>(z)]) cycle.push_back(z);
          std::reverse(cycle.begin() + 1, cycle.end());
          return cycle;  // y -> ... -> x -> y
        }
        if (color[static_cast<std::size_t>(y)] == 0) {
          color[static_cast<std::size_t>(y)] = 1;
          parent[static_cast<std::size_t>(y)] = x;
          stack.emplace_back(y, 0);
        }
      }
    }
    return {};
  }

  void cancel_cycles() {
    for (VertexList cycle = find_cycle(); !cycle.empty(); cycle = find_cycle()) {
      int least = std::numeric_limits<int>::max();
      for (std::size_t i = 0; i < cycle.size(); ++i) least = std::min(least, flow(cycle[i], cycle[(i + 1) % cycle.size()]));
      for (std::size_t i = 0; i < cycle.size(); ++i) flow(cycle[i], cycle[(i + 1) % cycle.size()]) -= least;
    }
  }

  /// Executes the acyclic flow: each vertex fires after all its suppliers.
  MoveSequence schedule(const std::vector<int>& counts) {
    std::vector<int> indegree(static_cast<std::size_t>(n_), 0);
    for (Vertex x = 0; x < n_; ++x) {
      for (Vertex y : g_.neighbors(x)) {
        if (flow(x, y) > 0) ++indegree[static_cast<std::size_t>(y)];
      }
    }
    std::vector<Vertex> ready;
    for (Vertex x = 0; x < n_; ++x) {
      if (indegree[static_cast<std::size_t>(x)] == 0) ready.push_back(x);
    }
    MoveSequence moves;
    std::vector<int> c = counts;
    while (!ready.empty()) {
      const Vertex x = ready.back();
      ready.pop_back();
      for (Vertex y : g_.neighbors(x)) {
        for (int i = 0; i < flow(x, y); ++i) {
          if (c[static_cast<std::size_t>(x)] < 2) throw InternalError("flow-schedule", "unexecutable flow");
          c[static_cast<std::size_t>(x)] -= 2;
          c[static_cast<std::size_t>(y)] += 1;
          moves.push_back({x, y});
        }
        if (flow(x, y) > 0 && --indegree[static_cast<std::size_t>(y)] == 0) ready.push_back(y);
      }
    }
    return moves;
  }

  const Graph& g_;
  int n_;
  Vertex target_;
  int k_;
  EngineOptions options_;
  int diam_ = 0;
  std::vector<int> excess_;
  std::vector<int> flow_;
  std::unordered_set<std::string> failed_;
};

inline void check_k(int k) {
  if (k < 1 || k > kMaxTargetPebbles) {
    throw InputError("bad-k", "k must lie in 1.." + std::to_string(kMaxTargetPebbles));
  }
}

}  // namespace detail

/// Decides whether some legal move sequence puts >= k pebbles on target.
inline ReachResult is_k_reachable(const Graph& g, const Distribution& d, Vertex target, int k,
                                  const EngineOptions& options = {}) {
  require_connected(g, "is_k_reachable");
  require_bound(g, d);
  detail::check_k(k);
  if (!g.valid_vertex(target)) {
    throw InputError("bad-vertex", "target out of range: " + std::to_string(target));
  }
  ReachResult result;
  const auto& counts = d.counts();
  if (counts[static_cast<std::size_t>(target)] >= k) {
    result.reachable = true;
    return result;
  }
  if (detail::floor_weight(g, counts, target) < k) return result;
  MoveSequence moves;
  if (detail::greedy_inward(g, counts, target, &moves) >= k) {
    result.reachable = true;
    result.witness = detail::trim_witness(g, counts, target, k, std::move(moves));
    return result;
  }
  if (g.is_tree()) return result;
  auto finish = [&](auto& search) {
    moves.clear();
    if (search.run(counts, &moves)) {
      result.reachable = true;
      result.witness = detail::trim_witness(g, counts, target, k, std::move(moves));
    }
    result.states_explored = search.states();
    return result;
  };
  if (options.strategy == SearchStrategy::kStates) {
    detail::ReachSearch search(g, target, k, options);
    return finish(search);
  }
  if (options.strategy == SearchStrategy::kFlow) {
    detail::FlowSearch search(g, target, k, options);
    return finish(search);
  }
  // Forward search finds witnesses fast and the flow search refutes fast;
  // alternate them with budgets growing fourfold until one finishes.
  std::size_t spent = 0;
  for (std::size_t budget = options.probe_states;; budget *= 4) {
    EngineOptions round = options;
    round.state_limit = std::min(budget, options.state_limit);
    const bool last = round.state_limit == options.state_limit;
    detail::ReachSearch forward(g, target, k, round);
    try {
      finish(forward);
      result.states_explored += spent;
      return result;
    } catch (const BudgetError&) {
      spent += forward.states();
    }
    detail::FlowSearch backward(g, target, k, round);
    try {
      finish(backward);
      result.states_explored += spent;
      return result;
    } catch (const BudgetError&) {
      spent += backward.states();
      if (last) throw;
    }
  }
}

/// Every vertex k-reachable? On failure reports the least unreachable id.
/// `check_order` optionally fixes the order in which targets are tried.
inline SolvableResult is_k_solvable(const Graph& g, const Distribution& d, int k,
                                    const EngineOptions& options = {},
                                    std::span<const Vertex> check_order = {}) {
  require_connected(g, "is_k_solvable");
  require_bound(g, d);
  detail::check_k(k);
  SolvableResult result;
  std::optional<Vertex> least;
  auto test = [&](Vertex v) {
    if (!is_k_reachable(g, d, v, k, options).reachable) {
      if (!least || v < *least) least = v;
      return false;
    }
    return true;
  };
  if (check_order.empty()) {
    for (Vertex v = 0; v < g.order(); ++v) {
      if (!test(v)) break;
    }
  } else {
    for (Vertex v : check_order) {
      if (!test(v)) {
        // Report the least failing id regardless of probe order.
        for (Vertex u = 0; u < v; ++u) {
          if (!is_k_reachable(g, d, u, k, options).reachable) {
            least = u;
            break;
          }
        }
        break;
      }
    }
  }
  result.solvable = !least.has_value();
  result.failing_vertex = least;
  return result;
}

/// Strongly reachable / reachable-only / unreachable partition plus the
/// connected components of the unreachable part.
inline ReachabilityReport classify(const Graph& g, const Distribution& d,
                                   const EngineOptions& options = {}) {
  require_connected(g, "classify");
  require_bound(g, d);
  ReachabilityReport report;
  const int n = g.order();
  report.reachable.assign(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    report.reachable[static_cast<std::size_t>(v)] =
        is_k_reachable(g, d, v, 1, options).reachable ? 1 : 0;
  }
  std::vector<char> unreachable(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    const auto uv = static_cast<std::size_t>(v);
    if (!report.reachable[uv]) {
      report.u_set.push_back(v);
      unreachable[uv] = 1;
      continue;
    }
    bool strong = true;
    for (Vertex w : g.neighbors(v)) strong = strong && report.reachable[static_cast<std::size_t>(w)];
    (strong ? report.t_set : report.h_set).push_back(v);
  }
  report.u_components = induced_components(g, unreachable);
  return report;
}

/// Pairwise distances measured inside the subgraph induced by N[s].
class DistanceTable {
 public:
  DistanceTable() = default;
  DistanceTable(const Graph& g, VertexList members)
      : members_(std::move(members)), local_(induced_subgraph(g, members_)),
        position_(static_cast<std::size_t>(g.order()), -1) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      position_[static_cast<std::size_t>(members_[i])] = static_cast<int>(i);
    }
  }

  const VertexList& members() const noexcept { return members_; }
  bool contains(Vertex v) const {
    return v >= 0 && static_cast<std::size_t>(v) < position_.size() &&
           position_[static_cast<std::size_t>(v)] >= 0;
  }

  /// Distance in the induced subgraph between two member vertices.
  int operator()(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) {
      throw InputError("bad-vertex", "vertex not in the distance table's vertex set");
    }
    return local_.distance(position_[static_cast<std::size_t>(u)],
                           position_[static_cast<std::size_t>(v)]);
  }

  /// Closed neighbourhood of v inside the table's subgraph, as global ids.
  VertexList closed_neighborhood(Vertex v) const {
    VertexList out;
    for (Vertex x : members_) {
      if ((*this)(v, x) <= 1) out.push_back(x);
    }
    return out;
  }

 private:
  VertexList members_;
  Graph local_;
  std::vector<int> position_;
};

/// Distance table of B = N[s], the subgraph of s's closed neighbourhood.
inline DistanceTable neighborhood_closure_distances(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) throw PreconditionError("empty-set", "neighborhood_closure_distances needs a set");
  const auto mask = to_mask(g, s);
  if (induced_components(g, mask).size() != 1) {
    throw PreconditionError("disconnected-set", "set must induce a connected subgraph");
  }
  return DistanceTable(g, k_neighborhood(g, s, 1, true));
}

}  // namespace pebbling
