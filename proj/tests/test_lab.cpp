#include <gtest/gtest.h>

#include <cmath>

#include "pebbling/pebbling.hpp"

using namespace pebbling;

namespace {

Graph fixture(const std::string& name) { return load_graph(std::string(PEBBLING_FIXTURE_DIR) + "/" + name); }

}  // namespace

TEST(Fractions, Parsing) {
  EXPECT_EQ(parse_fraction("3").str(), "3");
  EXPECT_EQ(parse_fraction("8/3").str(), "8/3");
  EXPECT_EQ(parse_fraction("6/4").str(), "3/2");
  EXPECT_EQ(parse_fraction("0.25").str(), "1/4");
  EXPECT_EQ(parse_fraction("3.9").str(), "39/10");
  EXPECT_THROW(parse_fraction("x"), InputError);
  EXPECT_THROW(parse_fraction("1/0"), InputError);
  EXPECT_THROW(parse_fraction("1."), InputError);
}

TEST(DiameterTwoWitness, EpsilonOne) {
  const auto w = diameter2_witness(parse_fraction("1"));
  // a = sqrt(4/3), a / (a - 1) ≈ 7.46, so m = 8: 4((8-1)^2 + 1) = 200 > 3 * 64 = 192.
  const double a = std::sqrt(4.0 / 3.0);
  EXPECT_NEAR(w.record.a, a, 1e-12);
  EXPECT_NEAR(a / (a - 1), 7.4641, 1e-4);
  EXPECT_EQ(w.record.m, 8);
  EXPECT_EQ(w.record.n, 64);
  EXPECT_EQ(w.record.delta, 49);
  ASSERT_EQ(w.record.inequalities.size(), 2u);
  EXPECT_EQ(w.record.inequalities[1].lhs, "200");
  EXPECT_EQ(w.record.inequalities[1].rhs, "192");
  EXPECT_TRUE(w.record.verified());
  EXPECT_EQ(w.record.pi_star_computed, 4);
  EXPECT_EQ(w.record.diameter, 2);
}

TEST(DiameterTwoWitness, LargeEpsilonClampsToFour) {
  for (const char* e : {"3", "3.9", "399/100"}) {
    const auto w = diameter2_witness(parse_fraction(e));
    EXPECT_EQ(w.record.m, 4) << e;
    EXPECT_TRUE(w.record.verified()) << e;
  }
  EXPECT_THROW(diameter2_witness(parse_fraction("4")), PreconditionError);
  EXPECT_THROW(diameter2_witness(parse_fraction("0")), PreconditionError);
}

TEST(DiameterTwoWitness, InequalitiesHoldForManyEpsilons) {
  // Below 0.4 the block grows past a thousand vertices.
  for (int p = 4; p < 40; ++p) {
    const Fraction eps{p, 10};
    const auto w = diameter2_witness(eps, 0);
    EXPECT_TRUE(w.record.verified()) << p;
    // Exact recheck: 4 > (4 - ε) n / (δ + 1).
    EXPECT_GT(40LL * (w.record.delta + 1), (40LL - p) * w.record.n);
  }
}

TEST(ChainWitness, EpsilonOne) {
  for (int d : {1, 2}) {
    const auto w = chain_witness(parse_fraction("1"), d);
    EXPECT_TRUE(w.record.verified());
    EXPECT_EQ(w.record.diameter, 9 * d - 1);
    EXPECT_EQ(w.record.pi_star, 8 * d);
    EXPECT_EQ(w.record.upper_distribution_solvable, true);
    const long long m = w.record.m;
    EXPECT_GT(8LL * d * (w.record.delta + 1), 5LL * d * m * m);
  }
  EXPECT_THROW(chain_witness(parse_fraction("8/3"), 1), PreconditionError);
}

TEST(ChainWitness, SmallestBlockDiameter) {
  const Graph g = build_chain(ChainSpec::homogeneous(complement_km_km(4), 3));
  EXPECT_EQ(g.order(), 48);
  EXPECT_EQ(diameter(g), 8);
}

TEST(GirthParams, Values) {
  const auto p = make_girth_params(4, 1);
  EXPECT_EQ(p.L, 5);
  EXPECT_NEAR(p.p, std::log(2.5) / 5.0, 1e-15);
  EXPECT_NEAR(p.p, 0.18326, 1e-5);
  for (int k = 4; k <= 8; ++k) {
    for (int t = 1; t <= 10; ++t) {
      const auto q = make_girth_params(k, t);
      long long base = 1;
      for (int i = 0; i < t; ++i) base *= k - 1;
      EXPECT_LT(base, q.L) << k << " " << t;
      EXPECT_LT(q.L, 3 * base) << k << " " << t;
      EXPECT_TRUE(q.valid());
    }
  }
}

TEST(GirthParams, FinalFactorVanishes) {
  for (int k = 4; k <= 8; ++k) {
    EXPECT_NEAR(girth_final_factor(k, 1), (2 + std::log(k - 1.0)) * 2.0 / (k - 1), 1e-12);
    for (int t = 3; t < 40; ++t) EXPECT_LT(girth_final_factor(k, t + 1), girth_final_factor(k, t)) << k << " " << t;
    EXPECT_LT(girth_final_factor(k, 60), 1e-3);
  }
}

TEST(GirthExperiment, NoPilesMeansOnePebbleEverywhere) {
  const Graph g = fixture("pg23_incidence.txt");
  GirthParams params = make_girth_params(4, 1, 5, 9);
  params.p = 0;
  const auto trial = detail::girth_trial(g, params, 0, true);
  EXPECT_EQ(trial.first_step, 0);
  EXPECT_EQ(trial.second_step, g.order());
  EXPECT_TRUE(trial.verified);
}

TEST(GirthExperiment, MeanWithinAnalyticBound) {
  const Graph g = fixture("pg23_incidence.txt");
  const auto params = make_girth_params(4, 1, 200, 42);
  const auto r = girth_experiment(g, params);
  EXPECT_EQ(r.trials.size(), 200u);
  EXPECT_TRUE(r.all_verified());
  EXPECT_LE(r.mean, r.analytic_bound + 3 * r.stderr_mean);
  EXPECT_NEAR(r.analytic_bound, (2 * params.p + std::pow(1 - params.p, 5)) * 26, 1e-9);
  EXPECT_LE(r.best_total, r.mean);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(GirthExperiment, ReproducibleAndThreadIndependent) {
  const Graph g = fixture("hoffman_singleton.txt");
  const auto params = make_girth_params(4, 1, 40, 7);
  const auto one = girth_experiment(g, params, true, 1, 1);
  const auto many = girth_experiment(g, params, true, 1, 4);
  ASSERT_EQ(one.trials.size(), many.trials.size());
  for (std::size_t i = 0; i < one.trials.size(); ++i) {
    EXPECT_EQ(one.trials[i].first_step, many.trials[i].first_step);
    EXPECT_EQ(one.trials[i].second_step, many.trials[i].second_step);
  }
  EXPECT_EQ(one.mean, many.mean);
  const auto other = girth_experiment(g, make_girth_params(4, 1, 40, 8));
  EXPECT_NE(one.mean, other.mean);
}

TEST(GirthExperiment, PreconditionsStrictOrWarned) {
  const Graph c4 = cycle_graph(4);
  const auto params = make_girth_params(4, 1, 20, 1);
  EXPECT_THROW(girth_experiment(c4, params), PreconditionError);
  const auto lenient = girth_experiment(hypercube_graph(3), params, false);
  EXPECT_EQ(lenient.warnings.size(), 1u);  // girth 4 suffices for t = 1, degree 3 is below k = 4
  EXPECT_TRUE(lenient.all_verified());
}

TEST(DegreeCorollary, Examples) {
  const auto p4 = degree_corollary_report(path_graph(4));
  EXPECT_TRUE(p4.quadruple_exists);
  EXPECT_TRUE(p4.holds);
  EXPECT_THROW(degree_corollary_check(cycle_graph(4)), PreconditionError);
}

TEST(DegreeCorollary, SweepFindsNoCounterexample) {
  SplitMix64 rng(123);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 60; ++i) {
    const int n = rng.between(4, 12);
    const Graph g = i % 2 ? random_connected_graph(rng, n, 0.2 + 0.4 * rng.uniform()) : clustered_graph(rng, n);
    if (diameter(g) != 3) continue;
    ++tested;
    const auto r = degree_corollary_report(g);
    EXPECT_TRUE(r.holds) << format_graph(g);
  }
  EXPECT_GE(tested, 30);
}
