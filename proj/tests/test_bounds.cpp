#include <gtest/gtest.h>

#include "pebbling/pebbling.hpp"

using namespace pebbling;

namespace {

// Graphs of diameter >= 3 from several families.
std::vector<Graph> corpus(std::uint64_t seed, int count) {
  std::vector<Graph> out{path_graph(4), cycle_graph(7), cycle_graph(12), hypercube_graph(3), hypercube_graph(4),
                         cartesian_product(cycle_graph(4), cycle_graph(5)), generate_graph("grid:3,5")};
  SplitMix64 rng(seed);
  while (static_cast<int>(out.size()) < count) {
    const int n = rng.between(4, 30);
    Graph g;
    switch (out.size() % 3) {
      case 0: g = random_connected_graph(rng, n, 0.3 * rng.uniform()); break;
      case 1: g = clustered_graph(rng, n); break;
      default: {
        auto r = random_regular_graph(rng, n - n % 2, rng.between(3, 6));
        if (!r) continue;
        g = *r;
      }
    }
    if (g.connected() && diameter(g) >= 3) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST(StarProperty, Examples) {
  const Graph k5 = complete_graph(5);
  EXPECT_FALSE(star_property(k5, 0, 1));  // 15 * 5 < 29 * 5
  const Graph star = star_graph(20);
  EXPECT_TRUE(star_property(star, 0, 1));  // 15 * 21 >= 29 * 2
  // N[u] ∪ N[v] = V with n >= 2(δ+1).
  std::vector<Edge> e{{0, 1}};
  for (Vertex x = 2; x < 8; ++x) e.emplace_back(x % 2, x);
  const Graph g(8, e);
  EXPECT_EQ(closed_union_size(g, 0, 1), 8);
  EXPECT_TRUE(star_property(g, 0, 1));
}

TEST(StartDistribution, Examples) {
  // No star edge in C7: |N[u] ∪ N[v]| = 4 and 15 * 4 < 29 * 3.
  const auto empty = build_d0(cycle_graph(7));
  EXPECT_EQ(empty.distribution.size(), 0);

  const auto single = build_d0(star_graph(20));
  EXPECT_EQ(single.distribution.size(), 6);
  EXPECT_EQ(single.distribution[0] + single.distribution[single.distribution.support().back()], 6);
}

TEST(StartDistribution, StarEdgeEndpointsReachable) {
  for (const auto& g : corpus(41, 60)) {
    const auto start = build_d0(g);
    for (auto [u, v] : g.edges()) {
      if (!star_property(g, u, v)) continue;
      EXPECT_TRUE(is_k_reachable(g, start.distribution, u, 1).reachable);
      EXPECT_TRUE(is_k_reachable(g, start.distribution, v, 1).reachable);
    }
    const long long dp1 = g.min_degree() + 1;
    const long long t = static_cast<long long>(classify(g, start.distribution).t_set.size());
    EXPECT_GE(15 * t, 4 * dp1 * start.distribution.size());
  }
}

TEST(StartDistribution, StarSetsAreSeparated) {
  for (const auto& g : corpus(43, 60)) {
    const auto sets = build_d0(g).sets;
    // Closed neighbourhoods of A ∪ B vertices and of P ∪ R pairs are pairwise disjoint.
    std::vector<VertexList> hoods;
    for (Vertex v : sets.a_set) hoods.push_back(closed_neighborhood(g, v));
    for (Vertex v : sets.b_set) hoods.push_back(closed_neighborhood(g, v));
    for (const auto& pairs : {sets.p_pairs, sets.r_pairs}) {
      for (auto [u, v] : pairs) {
        const VertexList both{u, v};
        hoods.push_back(k_neighborhood(g, both, 1, true));
      }
    }
    std::vector<int> owner(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < hoods.size(); ++i) {
      for (Vertex x : hoods[i]) {
        EXPECT_EQ(owner[static_cast<std::size_t>(x)], -1) << "vertex " << x << " shared";
        owner[static_cast<std::size_t>(x)] = static_cast<int>(i);
      }
    }
  }
}

TEST(Construction, Examples) {
  const auto p4 = construct_solvable(path_graph(4));
  EXPECT_LE(p4.distribution.size(), 7);
  EXPECT_TRUE(is_k_solvable(path_graph(4), p4.distribution, 1).solvable);
  EXPECT_EQ(pi_star(path_graph(4), 1).pi_star, 3);

  const auto c7 = construct_solvable(cycle_graph(7));
  EXPECT_LE(c7.distribution.size(), 8);
  EXPECT_TRUE(is_k_solvable(cycle_graph(7), c7.distribution, 1).solvable);

  const ChainSpec spec = ChainSpec::homogeneous(circulant_graph(10, {1, 4, 5}), 3);
  const Graph chain = build_chain(spec);
  const auto c = construct_solvable(chain);
  EXPECT_EQ(chain.min_degree(), 5);
  EXPECT_LE(4LL * 6 * c.distribution.size(), 15LL * 30);
  EXPECT_TRUE(is_k_solvable(chain, c.distribution, 1).solvable);

  EXPECT_THROW(construct_solvable(complement_km_km(4)), PreconditionError);
}

// Every step recomputed from scratch: exact ratio, T grows, U shrinks.
TEST(Construction, StepInvariants) {
  std::map<std::string, int> seen;
  for (const auto& g : corpus(47, 150)) {
    const Construction c = construct_solvable(g);
    const long long dp1 = g.min_degree() + 1;
    EXPECT_TRUE(c.within_bound());
    EXPECT_LE(4 * dp1 * c.distribution.size(), 15LL * g.order());
    EXPECT_TRUE(is_k_solvable(g, c.distribution, 1).solvable);
    Distribution d = c.d0;
    auto before = classify(g, d);
    for (const auto& step : c.steps) {
      ++seen[std::string(to_string(step.case_tag))];
      d += step.delta;
      const auto after = classify(g, d);
      const long long dt = static_cast<long long>(after.t_set.size()) - static_cast<long long>(before.t_set.size());
      EXPECT_GT(dt, 0);
      EXPECT_GE(15 * dt, 4 * dp1 * step.delta.size()) << to_string(step.case_tag);
      EXPECT_EQ(step.ratio, (Ratio{dt, step.delta.size()}));
      if (step.case_tag == CaseTag::A) {
        EXPECT_TRUE(step.ratio.at_least(2 * dp1, 7));
      }
      for (Vertex v : before.t_set) EXPECT_TRUE(after.in_t(v));
      for (Vertex v : after.u_set) EXPECT_TRUE(before.in_u(v));
      for (Vertex v : step.new_t_vertices) {
        EXPECT_TRUE(after.in_t(v));
        EXPECT_FALSE(before.in_t(v));
      }
      // A vertex of the component that the new pebbles alone make 2-reachable,
      // once the whole component is reachable, has its closed neighbourhood in T.
      const bool covered = std::all_of(step.component.begin(), step.component.end(),
                                       [&](Vertex s) { return !after.in_u(s); });
      if (covered) {
        for (Vertex s : step.component) {
          if (!is_k_reachable(g, step.delta, s, 2).reachable) continue;
          for (Vertex x : closed_neighborhood(g, s)) EXPECT_TRUE(after.in_t(x));
        }
      }
      before = after;
    }
    EXPECT_EQ(d.counts(), c.distribution.counts());
  }
  EXPECT_GE(seen.size(), 4u);
}

TEST(Construction, Deterministic) {
  for (const auto& g : corpus(53, 20)) {
    EXPECT_EQ(construct_solvable(g).distribution.counts(), construct_solvable(g).distribution.counts());
  }
}

TEST(ChainUpper, Sizes) {
  const Graph block = circulant_graph(10, {1, 4, 5});
  for (int l = 1; l <= 6; ++l) {
    const ChainSpec spec = ChainSpec::homogeneous(block, l);
    const Distribution d = chain_upper_distribution(spec);
    const int expected = 8 * (l / 3) + (l % 3 == 1 ? 4 : l % 3 == 2 ? 6 : 0);
    EXPECT_EQ(d.size(), expected);
    EXPECT_TRUE(is_k_solvable(build_chain(spec), d, 1).solvable) << l;
  }
  const ChainSpec two = ChainSpec::homogeneous(block, 2);
  const Distribution d = chain_upper_distribution(two);
  EXPECT_EQ(d[two.global_v(0)], 3);
  EXPECT_EQ(d[two.global_u(1)], 3);
}

TEST(Ratios, Composition) {
  EXPECT_EQ(ratio_compose_check({3, 4}, {3, 4}), (Ratio{6, 8}));
  EXPECT_EQ(ratio_compose_check({1, 2}, {3, 4}), (Ratio{4, 6}));
  EXPECT_EQ(ratio_compose_check({0, 5}, {5, 5}), (Ratio{5, 10}));
  EXPECT_TRUE((Ratio{4, 6}).at_least(1, 2));
  EXPECT_FALSE((Ratio{1, 3}).at_least(1, 2));
  EXPECT_TRUE((Ratio{5, 0}).infinite());
  EXPECT_GT((Ratio{1, 0}), (Ratio{100, 1}));
  SplitMix64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const Ratio a{rng.between(0, 50), rng.between(1, 50)};
    const Ratio b{rng.between(0, 50), rng.between(1, 50)};
    const Ratio c = ratio_compose_check(a, b);
    EXPECT_GE(c, std::min(a, b));
    EXPECT_LE(c, std::max(a, b));
  }
}

TEST(StrictBound, Examples) {
  EXPECT_EQ(pi_star(complete_graph(5), 1).pi_star, 2);
  EXPECT_TRUE(strict_bound_check(complete_graph(5)));
  const int c5 = oracle::oracle_pi_star(cycle_graph(5), 1);
  EXPECT_EQ(pi_star(cycle_graph(5), 1).pi_star, c5);
  EXPECT_EQ(strict_bound_check(cycle_graph(5)), 3 * c5 < 20);
  EXPECT_TRUE(strict_bound_check(path_graph(4)));
  for (int n = 1; n <= 5; ++n) {
    for (const auto& g : connected_graphs_up_to_iso(n)) EXPECT_TRUE(strict_bound_check(g));
  }
  EXPECT_THROW(strict_bound_check(path_graph(13)), PreconditionError);
}
