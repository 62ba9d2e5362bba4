#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pebbling/bound_constructor.hpp"
#include "pebbling/chain.hpp"
#include "pebbling/engine.hpp"
#include "pebbling/generators.hpp"
#include "pebbling/rng.hpp"
#include "pebbling/solver.hpp"
#include "pebbling/special.hpp"

namespace pebbling {

/// Positive rational num/den in lowest terms.
struct Fraction {
  long long num = 0;
  long long den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

/// Accepts "3", "8/3" or a decimal such as "0.25".
inline Fraction parse_fraction(const std::string& text) {
  auto fail = [&] { return InputError("bad-rational", "cannot parse '" + text + "' as a rational"); };
  Fraction f;
  try {
    const auto slash = text.find('/');
    const auto dot = text.find('.');
    if (slash != std::string::npos) {
      f.num = std::stoll(text.substr(0, slash));
      f.den = std::stoll(text.substr(slash + 1));
    } else if (dot != std::string::npos) {
      const std::string frac = text.substr(dot + 1);
      if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos) throw fail();
      f.den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) f.den *= 10;
      const long long whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
      if (whole < 0) throw fail();
      f.num = whole * f.den + std::stoll(frac);
    } else {
      f.num = std::stoll(text);
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw fail();
  }
  if (f.den <= 0) throw fail();
  const long long g = std::gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

/// One exactly checked integer inequality lhs > rhs.
struct CheckedInequality {
  std::string statement;
  std::string lhs;
  std::string rhs;
  bool holds = false;
};

namespace detail {

inline std::string to_string_i128(__int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string out;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  while (u > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

inline CheckedInequality strict_greater(std::string statement, __int128 lhs, __int128 rhs) {
  return {std::move(statement), to_string_i128(lhs), to_string_i128(rhs), lhs > rhs};
}

/// Smallest m above max(a / (a - 1), floor) chosen in floating point.
inline int float_choice_of_m(double a, int floor_value) {
  const double bound = std::max(a / (a - 1.0), static_cast<double>(floor_value));
  return static_cast<int>(std::floor(bound)) + 1;
}

}  // namespace detail

/// Numbers behind a lower-bound witness.
struct WitnessRecord {
  Fraction epsilon;
  double a = 0;
  int m_float = 0;  // choice from the floating-point bound, before clamping
  int m = 0;
  int d = 0;        // chain family only
  long long n = 0;
  long long delta = 0;
  long long pi_star = 0;
  /// Exact value from the solver when small enough, else empty.
  std::optional<int> pi_star_computed;
  std::optional<int> diameter;
  int expected_diameter = 0;
  std::optional<bool> upper_distribution_solvable;
  std::vector<CheckedInequality> inequalities;

  bool verified() const {
    for (const auto& q : inequalities) {
      if (!q.holds) return false;
    }
    if (pi_star_computed && *pi_star_computed != pi_star) return false;
    if (diameter && *diameter != expected_diameter) return false;
    if (upper_distribution_solvable && !*upper_distribution_solvable) return false;
    return true;
  }
};

struct Diameter2Witness {
  Graph graph;
  WitnessRecord record;
};

/// complement(K_m □ K_m) with π* = 4 > (4 - ε) n / (δ + 1). m is taken from
/// the floating-point bound (at least 4, so the graph is special) and then
/// raised until the exact inequality holds. The solver confirms π* = 4 when
/// n <= max_solver_order.
inline Diameter2Witness diameter2_witness(const Fraction& epsilon, int max_solver_order = 64) {
  const long long p = epsilon.num;
  const long long q = epsilon.den;
  if (p <= 0 || q <= 0 || p >= 4 * q) throw PreconditionError("epsilon-range", "need 0 < epsilon < 4");
  WitnessRecord r;
  r.epsilon = epsilon;
  r.a = std::sqrt(4.0 / (4.0 - epsilon.value()));
  r.m_float = detail::float_choice_of_m(r.a, 2);
  r.m = std::max(r.m_float, 4);
  // a > m / (m - 1)  <=>  4q (m - 1)^2 > (4q - p) m^2.
  auto middle = [&](long long m) {
    return static_cast<__int128>(4 * q) * (m - 1) * (m - 1) > static_cast<__int128>(4 * q - p) * m * m;
  };
  while (!middle(r.m)) ++r.m;
  const long long m = r.m;
  r.n = m * m;
  r.delta = (m - 1) * (m - 1);
  r.pi_star = 4;
  r.inequalities.push_back(detail::strict_greater(
      "4q(m-1)^2 > (4q-p)m^2", static_cast<__int128>(4 * q) * (m - 1) * (m - 1),
      static_cast<__int128>(4 * q - p) * m * m));
  r.inequalities.push_back(detail::strict_greater("4q(delta+1) > (4q-p)n",
                                                  static_cast<__int128>(4 * q) * (r.delta + 1),
                                                  static_cast<__int128>(4 * q - p) * r.n));
  Graph g = complement_km_km(r.m);
  if (!is_special(g).is_special) throw InternalError("witness-not-special", "witness block is not special");
  r.diameter = diameter(g);
  r.expected_diameter = 2;
  if (g.order() <= max_solver_order) {
    SolverOptions options;
    options.start_size = 4;
    const auto result = pi_star(g, 1, options);
    if (result.status == SolverStatus::kSolved) r.pi_star_computed = result.pi_star;
  }
  if (!r.verified()) throw InternalError("witness-unverified", "diameter-two witness failed its checks");
  return {std::move(g), std::move(r)};
}

struct ChainWitness {
  ChainSpec spec;
  WitnessRecord record;
};

/// G_{3d} over complement(K_m □ K_m) blocks with π* = 8d above
/// (8/3 - ε) n / (δ + 1). The diameter is measured by BFS and the upper
/// distribution checked by the engine when n <= max_checked_order.
inline ChainWitness chain_witness(const Fraction& epsilon, int d, int max_checked_order = 400) {
  const long long p = epsilon.num;
  const long long q = epsilon.den;
  if (p <= 0 || q <= 0 || 3 * p >= 8 * q) throw PreconditionError("epsilon-range", "need 0 < epsilon < 8/3");
  if (d < 1) throw PreconditionError("bad-parameter", "chain_witness needs d >= 1");
  WitnessRecord r;
  r.epsilon = epsilon;
  r.d = d;
  const double e = epsilon.value();
  r.a = std::sqrt((8.0 / 3.0) / (8.0 / 3.0 - e));
  r.m_float = detail::float_choice_of_m(r.a, 3);
  r.m = std::max(r.m_float, 4);
  // a > m / (m - 1)  <=>  8q (m - 1)^2 > (8q - 3p) m^2.
  auto middle = [&](long long m) {
    return static_cast<__int128>(8 * q) * (m - 1) * (m - 1) > static_cast<__int128>(8 * q - 3 * p) * m * m;
  };
  while (!middle(r.m)) ++r.m;
  const long long m = r.m;
  r.n = 3LL * d * m * m;
  r.delta = (m - 1) * (m - 1);
  r.pi_star = 8LL * d;
  r.expected_diameter = 9 * d - 1;
  r.inequalities.push_back(detail::strict_greater(
      "8q(m-1)^2 > (8q-3p)m^2", static_cast<__int128>(8 * q) * (m - 1) * (m - 1),
      static_cast<__int128>(8 * q - 3 * p) * m * m));
  // 8d > (8/3 - ε) n / (δ + 1)  <=>  8dq(δ+1) > (8q - 3p) d m^2.
  r.inequalities.push_back(detail::strict_greater("8dq(delta+1) > (8q-3p)dm^2",
                                                  static_cast<__int128>(8 * d * q) * (r.delta + 1),
                                                  static_cast<__int128>(8 * q - 3 * p) * d * m * m));
  ChainSpec spec = ChainSpec::homogeneous(complement_km_km(r.m), 3 * d, ChainVariant::kPlain,
                                          "complement-km-km:" + std::to_string(r.m));
  if (r.n <= max_checked_order) {
    const Graph g = build_chain(spec);
    r.diameter = diameter(g);
    r.upper_distribution_solvable = is_k_solvable(g, chain_upper_distribution(spec), 1).solvable;
  }
  if (!r.verified()) throw InternalError("witness-unverified", "chain witness failed its checks");
  return {std::move(spec), std::move(r)};
}

/// Parameters of the two-step random distribution on high-girth graphs.
struct GirthParams {
  int k = 4;
  int t = 1;
  int trials = 200;
  std::uint64_t seed = 1;
  long long L = 0;
  double p = 0;

  /// (k-1)^t < L < 3 (k-1)^t and 0 < p < 1.
  bool valid() const {
    const long long base = power(k - 1, t);
    return base < L && L < 3 * base && p > 0 && p < 1;
  }

  static long long power(long long b, int e) {
    long long out = 1;
    for (int i = 0; i < e; ++i) out *= b;
    return out;
  }
};

/// L = 1 + k((k-1)^t - 1)/(k-2), the size of a radius-t ball when the girth
/// is at least 2t + 1, and p = ln(L / 2^t) / L.
inline GirthParams make_girth_params(int k, int t, int trials = 200, std::uint64_t seed = 1) {
  if (k < 3) throw PreconditionError("bad-parameter", "girth parameters need k >= 3");
  if (t < 1 || t > 20) throw PreconditionError("bad-parameter", "girth parameters need 1 <= t <= 20");
  if (trials < 1) throw PreconditionError("bad-parameter", "girth experiment needs trials >= 1");
  GirthParams params;
  params.k = k;
  params.t = t;
  params.trials = trials;
  params.seed = seed;
  params.L = 1 + k * (GirthParams::power(k - 1, t) - 1) / (k - 2);
  params.p = std::log(static_cast<double>(params.L) / std::ldexp(1.0, t)) / static_cast<double>(params.L);
  return params;
}

/// (2 + t ln(k-1)) (2/(k-1))^t, the per-vertex bound at the end of the argument.
inline double girth_final_factor(int k, int t) {
  return (2.0 + t * std::log(static_cast<double>(k - 1))) * std::pow(2.0 / (k - 1), t);
}

struct GirthTrial {
  int first_step = 0;   // pebbles placed in piles of 2^t
  int second_step = 0;  // single pebbles on vertices the piles cannot reach
  bool verified = false;
  int total() const { return first_step + second_step; }
};

struct GirthReport {
  GirthParams params;
  int n = 0;
  int min_degree = 0;
  int girth = 0;
  std::vector<std::string> warnings;
  std::vector<GirthTrial> trials;
  double mean = 0;
  double stderr_mean = 0;
  double analytic_bound = 0;  // (2^t p + (1 - p)^L) n
  double log_bound = 0;       // (ln(L / 2^t) + 1) 2^t n / L
  double final_bound = 0;     // (2 + t ln(k-1)) (2/(k-1))^t n
  int best_total = 0;
  std::size_t verified_trials = 0;

  bool all_verified() const { return verified_trials == trials.size(); }
  bool mean_within_bound() const { return mean <= analytic_bound + 3 * stderr_mean; }
};

namespace detail {

inline GirthTrial girth_trial(const Graph& g, const GirthParams& params, std::uint64_t index, bool verify) {
  SplitMix64 rng(params.seed, index);
  const int n = g.order();
  const int pile = 1 << params.t;
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  GirthTrial trial;
  for (Vertex v = 0; v < n; ++v) {
    if (rng.chance(params.p)) {
      counts[static_cast<std::size_t>(v)] = pile;
      trial.first_step += pile;
    }
  }
  const Distribution piles(g, counts);
  std::vector<int> final_counts = counts;
  for (Vertex v = 0; v < n; ++v) {
    bool near_pile = false;
    for (Vertex x = 0; x < n && !near_pile; ++x) {
      near_pile = counts[static_cast<std::size_t>(x)] > 0 && g.distance(x, v) <= params.t;
    }
    if (near_pile || is_k_reachable(g, piles, v, 1).reachable) continue;
    final_counts[static_cast<std::size_t>(v)] += 1;
    trial.second_step += 1;
  }
  if (verify) trial.verified = is_k_solvable(g, Distribution(g, final_counts), 1).solvable;
  return trial;
}

}  // namespace detail

/// Runs the two-step experiment `trials` times. Trial i draws from stream i
/// of the seed, so the report does not depend on `threads`. Every output is
/// checked for solvability when verify_stride is 1, every verify_stride-th
/// trial otherwise. With strict off, violated girth or degree hypotheses
/// become warnings.
inline GirthReport girth_experiment(const Graph& g, const GirthParams& params, bool strict = true,
                                    int verify_stride = 1, int threads = 1) {
  require_connected(g, "girth_experiment");
  if (!params.valid()) throw PreconditionError("bad-parameter", "girth parameters out of range");
  GirthReport report;
  report.params = params;
  report.n = g.order();
  report.min_degree = g.min_degree();
  report.girth = girth(g);
  if (report.girth < 2 * params.t + 1) {
    const std::string msg = "girth " + std::to_string(report.girth) + " below 2t+1 = " + std::to_string(2 * params.t + 1);
    if (strict) throw PreconditionError("girth-too-small", msg);
    report.warnings.push_back(msg);
  }
  if (report.min_degree < params.k) {
    const std::string msg = "minimum degree " + std::to_string(report.min_degree) + " below k = " + std::to_string(params.k);
    if (strict) throw PreconditionError("degree-too-small", msg);
    report.warnings.push_back(msg);
  }
  report.trials.resize(static_cast<std::size_t>(params.trials));
  const int workers = std::max(1, std::min(threads, params.trials));
  auto work = [&](int w) {
    for (int i = w; i < params.trials; i += workers) {
      const bool verify = verify_stride <= 1 || i % verify_stride == 0;
      report.trials[static_cast<std::size_t>(i)] = detail::girth_trial(g, params, static_cast<std::uint64_t>(i), verify);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  double sum = 0;
  report.best_total = report.n;
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& trial = report.trials[i];
    sum += trial.total();
    report.best_total = std::min(report.best_total, trial.total());
    const bool checked = verify_stride <= 1 || i % static_cast<std::size_t>(verify_stride) == 0;
    if (checked && !trial.verified) throw InternalError("girth-unsolvable", "experiment produced an unsolvable distribution");
  }
  report.verified_trials = static_cast<std::size_t>(
      std::count_if(report.trials.begin(), report.trials.end(), [](const GirthTrial& t) { return t.verified; }));
  const double count = static_cast<double>(report.trials.size());
  report.mean = sum / count;
  double sq = 0;
  for (const auto& trial : report.trials) sq += (trial.total() - report.mean) * (trial.total() - report.mean);
  report.stderr_mean = report.trials.size() > 1 ? std::sqrt(sq / (count - 1)) / std::sqrt(count) : 0;
  const double n = report.n;
  const double pile = std::ldexp(1.0, params.t);
  const double L = static_cast<double>(params.L);
  report.analytic_bound = (pile * params.p + std::pow(1 - params.p, L)) * n;
  report.log_bound = (std::log(L / pile) + 1) * pile * n / L;
  report.final_bound = girth_final_factor(params.k, params.t) * n;
  return report;
}

struct DegreeCorollaryReport {
  bool quadruple_exists = false;
  int pi_star = 0;
  int min_degree = 0;
  int n = 0;
  /// Vacuous when the quadruple exists; otherwise 32(δ+1) <= 15n.
  bool holds = true;
};

/// Diameter-3 graphs: looks for x, u, v, w with N²[x] ∪ N[u] ∪ N[v] ∪ N[w] = V.
/// Without one, π* = 8 and the degree bound must hold. The exact π* is
/// reported alongside so the characterisation can be compared.
inline DegreeCorollaryReport degree_corollary_report(const Graph& g) {
  require_connected(g, "degree_corollary_check");
  if (diameter(g) != 3) throw PreconditionError("diameter-not-3", "degree_corollary_check needs diameter 3");
  if (g.order() > 12) throw PreconditionError("too-large", "degree_corollary_check needs n <= 12");
  const int n = g.order();
  using Mask = std::uint32_t;
  std::vector<Mask> ball1(static_cast<std::size_t>(n), 0), ball2(static_cast<std::size_t>(n), 0);
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      const int dist = g.distance(x, y);
      if (dist <= 1) ball1[static_cast<std::size_t>(x)] |= Mask{1} << y;
      if (dist <= 2) ball2[static_cast<std::size_t>(x)] |= Mask{1} << y;
    }
  }
  const Mask all = (Mask{1} << n) - 1;
  DegreeCorollaryReport report;
  report.n = n;
  report.min_degree = g.min_degree();
  for (Vertex x = 0; x < n && !report.quadruple_exists; ++x) {
    for (Vertex u = 0; u < n && !report.quadruple_exists; ++u) {
      for (Vertex v = u; v < n && !report.quadruple_exists; ++v) {
        for (Vertex w = v; w < n && !report.quadruple_exists; ++w) {
          const Mask cover = ball2[static_cast<std::size_t>(x)] | ball1[static_cast<std::size_t>(u)] |
                             ball1[static_cast<std::size_t>(v)] | ball1[static_cast<std::size_t>(w)];
          report.quadruple_exists = cover == all;
        }
      }
    }
  }
  const auto solved = pi_star(g, 1);
  if (solved.status != SolverStatus::kSolved) throw BudgetError("exceeded-budget", "solver did not finish");
  report.pi_star = solved.pi_star;
  if (!report.quadruple_exists) report.holds = 32LL * (report.min_degree + 1) <= 15LL * n;
  return report;
}

inline bool degree_corollary_check(const Graph& g) { return degree_corollary_report(g).holds; }

}  // namespace pebbling
