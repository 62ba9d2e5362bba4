#include <gtest/gtest.h>

#include "pebbling/pebbling.hpp"

using namespace pebbling;

namespace {

Distribution dist(const Graph& g, std::initializer_list<std::pair<Vertex, int>> pairs) {
  Distribution d(g);
  for (auto [v, c] : pairs) d.add(v, c);
  return d;
}

Distribution random_distribution(SplitMix64& rng, const Graph& g, int pebbles) {
  Distribution d(g);
  for (int left = pebbles; left > 0;) {
    const int pile = std::min(left, rng.between(1, 4));
    d.add(rng.between(0, g.order() - 1), pile);
    left -= pile;
  }
  return d;
}

EngineOptions with_strategy(SearchStrategy s) {
  EngineOptions o;
  o.strategy = s;
  return o;
}

}  // namespace

TEST(Moves, Examples) {
  const Graph edge = path_graph(2);
  EXPECT_EQ(apply_move(edge, dist(edge, {{0, 2}}), 0, 1).counts(), (std::vector<int>{0, 1}));
  EXPECT_EQ(apply_move(edge, dist(edge, {{0, 4}}), 0, 1).counts(), (std::vector<int>{2, 1}));
  EXPECT_THROW(apply_move(edge, dist(edge, {{0, 1}}), 0, 1), PreconditionError);
  const Graph p3 = path_graph(3);
  EXPECT_THROW(apply_move(p3, dist(p3, {{0, 4}}), 0, 2), PreconditionError);
}

TEST(Distributions, BasicsAndBinding) {
  const Graph g = cycle_graph(6);
  const Distribution d = dist(g, {{0, 3}, {2, 1}, {5, 2}});
  EXPECT_EQ(d.size(), 6);
  const VertexList s{0, 5};
  EXPECT_EQ(d.subset_sum(s), 5);
  EXPECT_EQ(d.support(), (VertexList{0, 2, 5}));
  const std::vector<int> negative{1, -1, 0, 0, 0, 0};
  EXPECT_THROW(Distribution(g, negative), InputError);
  const Graph other = path_graph(6);
  EXPECT_THROW(is_k_reachable(other, d, 0, 1), InputError);
  EXPECT_EQ(parse_distribution(g, "0:3, 2:1 5:2").counts(), d.counts());
  EXPECT_EQ(parse_distribution(g, "# c\n0 3\n2 1\n5 2\n").counts(), d.counts());
  EXPECT_EQ(parse_distribution(g, format_distribution(d)).counts(), d.counts());
  EXPECT_THROW(parse_distribution(g, "9:1"), InputError);
  EXPECT_THROW(parse_distribution(g, "0:-1"), InputError);
}

TEST(Reachability, Examples) {
  const Graph kk = complement_km_km(4);
  for (Vertex source = 0; source < kk.order(); source += 5) {
    const Distribution d = dist(kk, {{source, 4}});
    for (Vertex v = 0; v < kk.order(); ++v) EXPECT_TRUE(is_k_reachable(kk, d, v, 1).reachable);
  }
  const Graph p5 = path_graph(5);
  EXPECT_FALSE(is_k_reachable(p5, dist(p5, {{0, 3}}), 2, 1).reachable);
  const Graph p3 = path_graph(3);
  const auto two_sided = is_k_reachable(p3, dist(p3, {{0, 2}, {2, 2}}), 1, 2);
  EXPECT_TRUE(two_sided.reachable);
  EXPECT_EQ(two_sided.witness.size(), 2u);
  const auto r = is_k_reachable(p3, dist(p3, {{0, 4}}), 2, 1);
  EXPECT_TRUE(r.reachable);
  EXPECT_EQ(r.witness.size(), 3u);  // 0->1, 0->1, 1->2
}

TEST(Reachability, KIsBounded) {
  const Graph g = path_graph(3);
  const Distribution d = dist(g, {{0, 4}});
  EXPECT_THROW(is_k_reachable(g, d, 0, 0), InputError);
  EXPECT_THROW(is_k_reachable(g, d, 0, 16), InputError);
  EXPECT_NO_THROW(is_k_reachable(g, d, 0, 15));
  EXPECT_THROW(is_k_reachable(g, d, 3, 1), InputError);
}

TEST(Solvability, Examples) {
  const Graph k5 = complete_graph(5);
  EXPECT_TRUE(is_k_solvable(k5, dist(k5, {{2, 2}}), 1).solvable);
  const Graph k1 = complete_graph(1);
  EXPECT_TRUE(is_k_solvable(k1, dist(k1, {{0, 1}}), 1).solvable);
  EXPECT_FALSE(is_k_solvable(k1, Distribution(k1), 1).solvable);
  const auto failing = is_k_solvable(path_graph(4), dist(path_graph(4), {{0, 2}}), 1);
  EXPECT_FALSE(failing.solvable);
  EXPECT_EQ(failing.failing_vertex, 2);
}

TEST(Solvability, SpecialBlockHasNoSolvableThreeSet) {
  // Every size-3 distribution on a special graph is unsolvable; the naive
  // oracle confirms each engine answer.
  const Graph g = circulant_graph(10, {1, 4, 5});
  std::vector<int> items(3, 0);
  int count = 0;
  do {
    const auto counts = multiset_counts(items, g.order());
    const bool engine = is_k_solvable(g, Distribution(g, counts), 1).solvable;
    EXPECT_FALSE(engine);
    EXPECT_FALSE(oracle::naive_solvable(g, counts, 1));
    ++count;
  } while (next_multiset(items, g.order()));
  EXPECT_EQ(count, 220);
}

TEST(Classify, Examples) {
  const Graph k5 = complete_graph(5);
  const auto solved = classify(k5, dist(k5, {{0, 2}}));
  EXPECT_EQ(solved.t_set.size(), 5u);
  EXPECT_TRUE(solved.h_set.empty());
  EXPECT_TRUE(solved.u_set.empty());

  const Graph c6 = cycle_graph(6);
  const auto empty = classify(c6, Distribution(c6));
  EXPECT_EQ(empty.u_set.size(), 6u);
  EXPECT_EQ(empty.u_components.size(), 1u);

  const Graph p5 = path_graph(5);
  const auto r = classify(p5, dist(p5, {{0, 2}}));
  EXPECT_TRUE(r.in_t(0));
  EXPECT_TRUE(r.in_h(1));
  EXPECT_TRUE(r.in_u(2));
  EXPECT_TRUE(r.in_u(3));
  EXPECT_TRUE(r.in_u(4));
}

TEST(Classify, ConsistentWithReachability) {
  SplitMix64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const Graph g = random_connected_graph(rng, rng.between(2, 12), 0.2);
    const Distribution d = random_distribution(rng, g, rng.between(0, 8));
    const auto r = classify(g, d);
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    for (Vertex v = 0; v < g.order(); ++v) {
      const bool reach = is_k_reachable(g, d, v, 1).reachable;
      bool closed = reach;
      for (Vertex x : g.neighbors(v)) closed = closed && is_k_reachable(g, d, x, 1).reachable;
      EXPECT_EQ(r.in_t(v), closed);
      EXPECT_EQ(r.in_h(v), reach && !closed);
      EXPECT_EQ(r.in_u(v), !reach);
    }
    // U components partition U and are connected.
    std::size_t total = 0;
    for (const auto& c : r.u_components) {
      total += c.size();
      EXPECT_EQ(induced_components(g, to_mask(g, c)).size(), 1u);
      for (Vertex v : c) {
        EXPECT_TRUE(r.in_u(v));
        EXPECT_FALSE(seen[static_cast<std::size_t>(v)]);
        seen[static_cast<std::size_t>(v)] = 1;
      }
    }
    EXPECT_EQ(total, r.u_set.size());
  }
}

TEST(ClosureDistances, Examples) {
  const Graph g = hypercube_graph(3);
  const VertexList single{0};
  const DistanceTable table = neighborhood_closure_distances(g, single);
  for (Vertex a : table.members()) {
    for (Vertex b : table.members()) EXPECT_LE(table(a, b), 2);
  }
  // Wheel: opposite rim vertices meet through the hub.
  const Graph wheel = wheel_graph(8);
  VertexList rim;
  for (Vertex v = 0; v < wheel.order(); ++v) {
    if (wheel.degree(v) == 3) rim.push_back(v);
  }
  ASSERT_EQ(rim.size(), 8u);
  const DistanceTable wheel_table = neighborhood_closure_distances(wheel, rim);
  for (Vertex a : rim) {
    for (Vertex b : rim) EXPECT_LE(wheel_table(a, b), 2);
  }
  VertexList everything;
  for (Vertex v = 0; v < g.order(); ++v) everything.push_back(v);
  const DistanceTable whole = neighborhood_closure_distances(g, everything);
  for (Vertex a = 0; a < g.order(); ++a) {
    for (Vertex b = 0; b < g.order(); ++b) EXPECT_EQ(whole(a, b), g.distance(a, b));
  }
}

// All three search strategies against the naive oracle, with every witness replayed.
TEST(Strategies, AgreeWithOracle) {
  SplitMix64 rng(2024);
  const SearchStrategy strategies[] = {SearchStrategy::kPortfolio, SearchStrategy::kFlow, SearchStrategy::kStates};
  for (int i = 0; i < 400; ++i) {
    const Graph g = i % 2 ? random_connected_graph(rng, rng.between(2, 9), 0.25) : clustered_graph(rng, rng.between(3, 9));
    const Distribution d = random_distribution(rng, g, rng.between(0, 10));
    const Vertex target = rng.between(0, g.order() - 1);
    const int k = rng.between(1, 3);
    const bool expected = oracle::naive_reachable(g, d.counts(), target, k);
    for (auto s : strategies) {
      EngineOptions options = with_strategy(s);
      options.probe_states = 3;  // force the portfolio through several rounds
      const auto r = is_k_reachable(g, d, target, k, options);
      ASSERT_EQ(r.reachable, expected) << "strategy " << static_cast<int>(s) << " case " << i;
      if (r.reachable) {
        const Distribution end = replay(g, d, r.witness);
        EXPECT_GE(end[target], k);
        EXPECT_LE(static_cast<int>(r.witness.size()), d.size() - k);
      }
    }
  }
}

TEST(Strategies, DominancePruningChangesNothing) {
  SplitMix64 rng(77);
  for (int i = 0; i < 150; ++i) {
    const Graph g = random_connected_graph(rng, rng.between(2, 9), 0.2);
    const Distribution d = random_distribution(rng, g, rng.between(0, 9));
    const Vertex target = rng.between(0, g.order() - 1);
    EngineOptions plain = with_strategy(SearchStrategy::kStates);
    EngineOptions pruned = plain;
    pruned.dominance_pruning = true;
    EXPECT_EQ(is_k_reachable(g, d, target, 2, plain).reachable, is_k_reachable(g, d, target, 2, pruned).reachable);
  }
}

TEST(Strategies, StateLimitIsReported) {
  const Graph g = circulant_graph(10, {1, 4, 5});
  EngineOptions tiny = with_strategy(SearchStrategy::kStates);
  tiny.state_limit = 1;
  const Distribution d = dist(g, {{0, 3}, {1, 3}, {3, 3}, {6, 3}, {8, 3}});
  EXPECT_THROW(is_k_reachable(g, d, 5, 5, tiny), BudgetError);
}

TEST(Properties, MovesLoseOnePebbleAndWeightNeverRises) {
  SplitMix64 rng(99);
  int moves = 0;
  while (moves < 3000) {
    const Graph g = random_connected_graph(rng, rng.between(2, 10), 0.3);
    const int diam = diameter(g);
    Distribution d = random_distribution(rng, g, rng.between(2, 16));
    for (int step = 0; step < 30; ++step) {
      VertexList sources;
      for (Vertex v = 0; v < g.order(); ++v) {
        if (d[v] >= 2) sources.push_back(v);
      }
      if (sources.empty()) break;
      const Vertex from = sources[rng.below(sources.size())];
      const Vertex to = g.neighbors(from)[rng.below(g.neighbors(from).size())];
      const Distribution next = apply_move(g, d, from, to);
      EXPECT_EQ(next.size(), d.size() - 1);
      for (Vertex v = 0; v < g.order(); ++v) {
        // Σ d(u) 2^{-dist(u,v)}, scaled by 2^diam to stay in integers.
        long long before = 0, after = 0;
        for (Vertex u = 0; u < g.order(); ++u) {
          before += static_cast<long long>(d[u]) << (diam - g.distance(u, v));
          after += static_cast<long long>(next[u]) << (diam - g.distance(u, v));
        }
        EXPECT_LE(after, before);
      }
      d = next;
      ++moves;
    }
  }
}

TEST(Properties, AddingAPebbleKeepsReachability) {
  SplitMix64 rng(5150);
  for (int i = 0; i < 200; ++i) {
    const Graph g = random_connected_graph(rng, rng.between(2, 9), 0.25);
    const Distribution d = random_distribution(rng, g, rng.between(0, 8));
    Distribution more = d;
    more.add(rng.between(0, g.order() - 1), 1);
    const int k = rng.between(1, 2);
    for (Vertex v = 0; v < g.order(); ++v) {
      if (is_k_reachable(g, d, v, k).reachable) {
        EXPECT_TRUE(is_k_reachable(g, more, v, k).reachable);
      }
    }
  }
}

// If an inner path vertex is not 2-reachable then a neighbour is not either.
TEST(Properties, PathCutExhaustive) {
  int checked = 0;
  for (int n = 3; n <= 7; ++n) {
    const Graph path = path_graph(n);
    for (int size = 0; size <= 6; ++size) {
      std::vector<int> items(static_cast<std::size_t>(size), 0);
      do {
        const Distribution d(path, multiset_counts(items, n));
        std::vector<char> two(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) two[static_cast<std::size_t>(v)] = is_k_reachable(path, d, v, 2).reachable;
        for (Vertex v = 1; v + 1 < n; ++v) {
          if (!two[static_cast<std::size_t>(v)]) {
            EXPECT_FALSE(two[static_cast<std::size_t>(v - 1)] && two[static_cast<std::size_t>(v + 1)]);
          }
        }
        ++checked;
      } while (size > 0 && next_multiset(items, n));
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Properties, CollapsingPreservesReachability) {
  SplitMix64 rng(31337);
  const Graph block = circulant_graph(10, {1, 4, 5});
  int reachable = 0;
  for (int i = 0; i < 300; ++i) {
    const int l = rng.between(1, 3);
    const QuotientMap map = collapse_chain(ChainSpec::homogeneous(block, l));
    const Distribution d = random_distribution(rng, map.source, rng.between(1, 8));
    const Vertex target = rng.between(0, map.source.order() - 1);
    const int k = rng.between(1, 2);
    if (!is_k_reachable(map.source, d, target, k).reachable) continue;
    ++reachable;
    EXPECT_TRUE(is_k_reachable(map.target, map.collapse(d), map.phi[static_cast<std::size_t>(target)], k).reachable);
  }
  EXPECT_GT(reachable, 50);
}
