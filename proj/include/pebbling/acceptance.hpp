#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/bound_constructor.hpp"
#include "pebbling/bounds_lab.hpp"
#include "pebbling/chain_solver.hpp"
#include "pebbling/generators.hpp"
#include "pebbling/graph_io.hpp"
#include "pebbling/multiset.hpp"
#include "pebbling/oracle.hpp"
#include "pebbling/random_graphs.hpp"
#include "pebbling/special.hpp"

namespace pebbling::acceptance {

enum class Scale { kQuick, kFull };

inline Scale parse_scale(const std::string& text) {
  if (text == "quick") return Scale::kQuick;
  if (text == "full") return Scale::kFull;
  throw InputError("bad-scale", "scale must be quick or full, got '" + text + "'");
}

struct Options {
  Scale scale = Scale::kQuick;
  std::string fixture_dir;
  std::uint64_t seed = 20240229;
  int threads = 1;
};

struct Result {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Set when the failure is the documented defect of the circulant example
  /// and the same check passes on a valid special block.
  std::string known_deviation;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0 for no limit

  std::string line() const {
    std::ostringstream out;
    out << "criterion " << id << " [" << (passed ? "PASS" : "FAIL") << "] " << title;
    if (!passed && !known_deviation.empty()) out << " (known deviation: " << known_deviation << ")";
    out << " | " << detail << " | " << std::fixed;
    out.precision(2);
    out << seconds << "s";
    if (limit_seconds > 0) out << " (limit " << limit_seconds << "s)";
    return out.str();
  }
};

/// A special circulant on 10 vertices standing in for the circulant example,
/// whose graphs all have a dominating edge.
inline Graph substitute_block() { return circulant_graph(10, {1, 4, 5}); }

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Runs a body that fills passed/detail; any library error is a failure.
inline Result run(int id, std::string title, double limit, const std::function<void(Result&)>& body) {
  Result r;
  r.id = id;
  r.title = std::move(title);
  r.limit_seconds = limit;
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    r.passed = false;
    r.known_deviation.clear();
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("error ") + e.code() + ": " + e.what();
  } catch (const std::exception& e) {
    r.passed = false;
    r.known_deviation.clear();
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("error: ") + e.what();
  }
  r.seconds = since(start);
  if (limit > 0 && r.seconds > limit) {
    r.passed = false;
    r.known_deviation.clear();
    r.detail += "; over time limit";
  }
  return r;
}

inline std::string str(long long v) { return std::to_string(v); }

/// Σ d(u) 2^{D - dist(u, v)} for every v, exactly.
inline std::vector<__int128> scaled_weights(const Graph& g, const std::vector<int>& counts, int diam) {
  std::vector<__int128> out(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Vertex u = 0; u < g.order(); ++u) {
      out[static_cast<std::size_t>(v)] += static_cast<__int128>(counts[static_cast<std::size_t>(u)]) << (diam - g.distance(u, v));
    }
  }
  return out;
}

}  // namespace detail

inline Result criterion1(const Options&) {
  return detail::run(1, "special-graph values pi* = 4", 240, [](Result& r) {
    const auto timed = [](const Graph& g) {
      const auto start = detail::Clock::now();
      auto res = pi_star(g, 1);
      return std::pair{res, detail::since(start)};
    };
    const Graph circ = circulant_special(5);
    const auto [circ_res, circ_time] = timed(circ);
    const Graph kk = complement_km_km(4);
    const auto [kk_res, kk_time] = timed(kk);
    const SizeCertificate* kk_size3 = nullptr;
    for (const auto& c : kk_res.sizes) {
      if (c.size == 3) kk_size3 = &c;
    }
    const bool kk_ok = kk_res.status == SolverStatus::kSolved && kk_res.pi_star == 4 && kk_size3 &&
                       kk_size3->exhausted && kk_size3->enumerated == multiset_count(16, 3) && kk_time < 120;
    const bool circ_ok = circ_res.status == SolverStatus::kSolved && circ_res.pi_star == 4 && circ_time < 120;
    r.detail = "complement(K4xK4): pi*=" + detail::str(kk_res.pi_star) + " (size 3: " +
               detail::str(kk_size3 ? static_cast<long long>(kk_size3->enumerated) : -1) + " of C(18,3)=816 multisets, " +
               detail::str(kk_size3 ? static_cast<long long>(kk_size3->checked) : -1) + " past prefilter, all unsolvable)" +
               "; circulant-special:5: pi*=" + detail::str(circ_res.pi_star);
    r.passed = kk_ok && circ_ok;
    if (!circ_ok && kk_ok && circ_res.pi_star == 3) {
      const auto edge = has_dominating_edge(circ);
      const int oracle = oracle::oracle_pi_star(circ, 1);
      const Graph sub = substitute_block();
      const auto sub_res = pi_star(sub, 1);
      r.detail += " (oracle " + detail::str(oracle) + ", dominating edge " +
                  (edge ? circ.label(edge->first) + "-" + circ.label(edge->second) : std::string("none")) +
                  "); circulant:10,1,4,5 special=" + (is_special(sub).is_special ? "yes" : "no") +
                  " pi*=" + detail::str(sub_res.pi_star);
      if (oracle == 3 && edge && sub_res.pi_star == 4 && is_special(sub).is_special) {
        r.known_deviation = "the circulant example has a dominating edge, so it is not special and pi* = 3";
      }
    }
  });
}

inline Result criterion2(const Options& opt) {
  return detail::run(2, "chain values G1=4, G2=6, G3=8", 3600 + 900, [&](Result& r) {
    std::string literal;
    try {
      (void)ChainSpec::homogeneous(circulant_special(5), 1);
      literal = "circulant-special:5 accepted as block";
    } catch (const PreconditionError& e) {
      literal = "circulant-special:5 rejected as block (" + std::string(e.what()) + ")";
    }
    const Graph block = substitute_block();
    const int expected[] = {4, 6, 8};
    bool all = true;
    std::string values;
    for (int l = 1; l <= 3; ++l) {
      const ChainSpec spec = ChainSpec::homogeneous(block, l, ChainVariant::kPlain, "circulant:10,1,4,5");
      SolverOptions options;
      options.threads = opt.threads;
      const auto start = detail::Clock::now();
      std::string extra;
      if (l == 3) {
        const Distribution upper = chain_upper_distribution(spec);
        const bool upper_ok = upper.size() == 8 && is_k_solvable(build_chain(spec), upper, 1).solvable;
        extra = " upper=" + std::string(upper_ok ? "8 solvable" : "FAILED");
        all = all && upper_ok;
      }
      const auto res = pi_star_chain(spec, 1, options);
      const double secs = detail::since(start);
      bool below_exhausted = false;
      for (const auto& c : res.sizes) {
        if (c.size == expected[l - 1] - 1) below_exhausted = c.exhausted;
      }
      const double limit = l == 3 ? 3600 : 900;
      const bool ok = res.status == SolverStatus::kSolved && res.pi_star == expected[l - 1] && below_exhausted &&
                      secs < limit;
      all = all && ok;
      std::ostringstream v;
      v.precision(1);
      v << std::fixed << " G" << l << "=" << res.pi_star << (below_exhausted ? " (size " + detail::str(expected[l - 1] - 1) + " exhausted)" : "")
        << extra << " " << secs << "s;";
      values += v.str();
    }
    r.detail = literal + "; on circulant:10,1,4,5 blocks:" + values;
    // Literal blocks cannot form a chain, so the criterion as stated fails.
    r.passed = false;
    if (all) r.known_deviation = "the circulant example is not special; values hold on a special circulant block";
  });
}

inline Result criterion3(const Options&) {
  return detail::run(3, "2-optimal path value n+1 for n=1..7", 60, [](Result& r) {
    bool ok = true;
    for (int n = 1; n <= 7; ++n) {
      const int v = two_optimal_path_value(n);
      r.detail += (n > 1 ? " " : "") + std::string("P") + detail::str(n) + "=" + detail::str(v);
      ok = ok && v == n + 1;
    }
    r.passed = ok;
  });
}

inline Result criterion4(const Options& opt) {
  const int target = opt.scale == Scale::kFull ? 1000 : 200;
  return detail::run(4, "constructive upper bound 15n/(4(delta+1))", 600, [&](Result& r) {
    SplitMix64 rng(opt.seed, 4);
    int built = 0;
    int violations = 0;
    std::map<std::string, int> tags;
    long long worst_num = 0, worst_den = 1;  // largest 4(δ+1)|D| / 15n seen
    // Cycles, paths, tori and hypercubes first, then random families in turn.
    std::vector<Graph> fixed;
    for (int n = 7; n <= 40; n += 3) fixed.push_back(cycle_graph(n));
    for (int n = 4; n <= 40; n += 4) fixed.push_back(path_graph(n));
    for (int a = 3; a <= 6; ++a) fixed.push_back(cartesian_product(cycle_graph(a), cycle_graph(a + 1)));
    for (int dim = 3; dim <= 5; ++dim) fixed.push_back(hypercube_graph(dim));
    std::size_t next_fixed = 0;
    int family = 0;
    while (built < target) {
      Graph g;
      if (next_fixed < fixed.size()) {
        g = fixed[next_fixed++];
      } else {
        const int n = rng.between(4, 40);
        switch (family++ % 3) {
          case 0: g = random_connected_graph(rng, n, 0.3 * rng.uniform()); break;
          case 1: g = clustered_graph(rng, n); break;
          default: {
            const auto regular = random_regular_graph(rng, n - n % 2, rng.between(3, 7));
            if (!regular) continue;
            g = *regular;
          }
        }
      }
      if (!g.connected() || diameter(g) < 3) continue;
      ++built;
      const Construction c = construct_solvable(g);
      const long long dp1 = g.min_degree() + 1;
      bool ok = is_k_solvable(g, c.distribution, 1).solvable;
      ok = ok && 4 * dp1 * c.distribution.size() <= 15LL * g.order();
      // Re-derive every Δt from fresh classifications.
      Distribution d = c.d0;
      long long t_before = static_cast<long long>(classify(g, d).t_set.size());
      ok = ok && 15 * t_before >= 4 * dp1 * d.size();
      for (const auto& step : c.steps) {
        d += step.delta;
        const long long t_after = static_cast<long long>(classify(g, d).t_set.size());
        ok = ok && 15 * (t_after - t_before) >= 4 * dp1 * step.delta.size() && t_after > t_before;
        t_before = t_after;
        ++tags[std::string(to_string(step.case_tag))];
      }
      ok = ok && d.counts() == c.distribution.counts();
      if (!ok) ++violations;
      const long long num = 4 * dp1 * c.distribution.size();
      const long long den = 15LL * g.order();
      if (num * worst_den > worst_num * den) {
        worst_num = num;
        worst_den = den;
      }
    }
    r.detail = detail::str(built) + " graphs, " + detail::str(violations) + " violations, max 4(d+1)|D|/15n = " +
               detail::str(worst_num) + "/" + detail::str(worst_den) + ", cases:";
    for (const auto& [tag, count] : tags) r.detail += " " + tag + "x" + detail::str(count);
    r.passed = violations == 0;
  });
}

inline Result criterion5(const Options& opt) {
  const int randoms = opt.scale == Scale::kFull ? 200 : 50;
  return detail::run(5, "solver agrees with naive oracle", 600, [&](Result& r) {
    int graphs = 0;
    int mismatches = 0;
    std::string classes;
    for (int n = 1; n <= 5; ++n) {
      const auto list = connected_graphs_up_to_iso(n);
      classes += (n > 1 ? "," : "") + detail::str(static_cast<long long>(list.size()));
      for (const auto& g : list) {
        ++graphs;
        if (pi_star(g, 1).pi_star != oracle::oracle_pi_star(g, 1)) ++mismatches;
      }
    }
    SplitMix64 rng(opt.seed, 5);
    for (int i = 0; i < randoms; ++i) {
      const int n = rng.between(6, 7);
      const Graph g = random_connected_graph(rng, n, 0.1 + 0.5 * rng.uniform());
      ++graphs;
      if (pi_star(g, 1).pi_star != oracle::oracle_pi_star(g, 1)) ++mismatches;
    }
    r.detail = detail::str(graphs) + " graphs (iso classes n=1..5: " + classes + "; " + detail::str(randoms) +
               " random n in {6,7}), " + detail::str(mismatches) + " mismatches";
    r.passed = mismatches == 0;
  });
}

namespace detail {

/// Random tuples on chains over `block`; counts implications checked and
/// violations of "source reachable implies collapsed reachable".
inline std::pair<int, int> collapsing_trials(const std::function<ChainSpec(int)>& make, int tuples,
                                             SplitMix64& rng, int* reachable_count) {
  int violations = 0;
  for (int i = 0; i < tuples; ++i) {
    const int l = rng.between(1, 3);
    const ChainSpec spec = make(l);
    const QuotientMap map = collapse_chain(spec);
    const Graph& g = map.source;
    Distribution d(g);
    const int pebbles = rng.between(1, 8);
    // Piles make reachable targets common.
    for (int left = pebbles; left > 0;) {
      const int pile = std::min(left, rng.between(1, 4));
      d.add(rng.between(0, g.order() - 1), pile);
      left -= pile;
    }
    const Vertex target = rng.between(0, g.order() - 1);
    const int k = rng.between(1, 2);
    if (!is_k_reachable(g, d, target, k).reachable) continue;
    ++*reachable_count;
    const Distribution collapsed = map.collapse(d);
    if (!is_k_reachable(map.target, collapsed, map.phi[static_cast<std::size_t>(target)], k).reachable) ++violations;
  }
  return {tuples, violations};
}

}  // namespace detail

inline Result criterion6(const Options& opt) {
  const int tuples = opt.scale == Scale::kFull ? 5000 : 600;
  return detail::run(6, "collapsing preserves reachability", 0, [&](Result& r) {
    SplitMix64 rng(opt.seed, 6);
    int literal_reachable = 0;
    const Graph circ = circulant_special(5);
    const auto literal = detail::collapsing_trials(
        [&](int l) { return ChainSpec::unchecked(circ, 0, 5, l, "circulant-special:5"); }, tuples, rng,
        &literal_reachable);
    int sub_reachable = 0;
    const Graph sub = substitute_block();
    const auto substitute = detail::collapsing_trials(
        [&](int l) { return ChainSpec::homogeneous(sub, l, ChainVariant::kPlain, "circulant:10,1,4,5"); }, tuples,
        rng, &sub_reachable);
    r.detail = "circulant-special:5 chains (pair 0/5): " + detail::str(literal.first) + " tuples, " +
               detail::str(literal_reachable) + " reachable, " + detail::str(literal.second) +
               " violations; circulant:10,1,4,5 chains: " + detail::str(substitute.first) + " tuples, " +
               detail::str(sub_reachable) + " reachable, " + detail::str(substitute.second) + " violations";
    r.passed = literal.second == 0 && substitute.second == 0 && literal.first >= 500 && literal_reachable > 0;
  });
}

inline Result criterion7(const Options&) {
  return detail::run(7, "witness inequalities verified exactly", 60, [](Result& r) {
    bool ok = true;
    for (const char* e : {"1", "2", "3"}) {
      const auto w = diameter2_witness(parse_fraction(e));
      ok = ok && w.record.verified();
      r.detail += std::string(r.detail.empty() ? "" : "; ") + "diam2 eps=" + e + ": m=" + detail::str(w.record.m) +
                  " " + w.record.inequalities.back().lhs + ">" + w.record.inequalities.back().rhs;
    }
    ok = ok && diameter2_witness(parse_fraction("1")).record.m == 8;
    for (int d : {1, 2}) {
      const auto w = chain_witness(parse_fraction("1"), d);
      ok = ok && w.record.verified() && w.record.diameter.value_or(-1) == 9 * d - 1;
      r.detail += "; chain eps=1 d=" + detail::str(d) + ": m=" + detail::str(w.record.m) + " n=" +
                  detail::str(w.record.n) + " diam=" + detail::str(w.record.diameter.value_or(-1)) + " " +
                  w.record.inequalities.back().lhs + ">" + w.record.inequalities.back().rhs;
    }
    r.passed = ok;
  });
}

inline Result criterion8(const Options& opt) {
  return detail::run(8, "girth experiment mean within analytic bound", 300, [&](Result& r) {
    const char* names[] = {"pg23_incidence.txt", "pg24_incidence.txt", "hoffman_singleton.txt"};
    bool ok = true;
    for (const char* name : names) {
      const auto path = std::filesystem::path(opt.fixture_dir) / name;
      if (!std::filesystem::exists(path)) {
        throw InputError("fixture-missing", "fixture not found: " + path.string());
      }
      const Graph g = load_graph(path.string());
      const auto params = make_girth_params(4, 1, 200, opt.seed);
      const auto rep = girth_experiment(g, params, true, 1, opt.threads);
      const bool here = rep.mean_within_bound() && rep.all_verified() && rep.trials.size() == 200;
      ok = ok && here;
      std::ostringstream s;
      s.precision(2);
      s << std::fixed << name << ": girth " << rep.girth << " delta " << rep.min_degree << " mean " << rep.mean
        << " +- " << rep.stderr_mean << " <= " << rep.analytic_bound << ", " << rep.verified_trials << "/200 verified";
      r.detail += (r.detail.empty() ? "" : "; ") + s.str();
    }
    r.passed = ok;
  });
}

inline Result criterion9(const Options&) {
  return detail::run(9, "strict bound (delta+1) pi* < 4n", 300, [](Result& r) {
    int graphs = 0;
    int failures = 0;
    for (int n = 1; n <= 5; ++n) {
      for (const auto& g : connected_graphs_up_to_iso(n)) {
        ++graphs;
        if (!strict_bound_check(g)) ++failures;
      }
    }
    for (int n = 1; n <= 8; ++n) {
      ++graphs;
      if (!strict_bound_check(complete_graph(n))) ++failures;
    }
    r.detail = detail::str(graphs) + " graphs, " + detail::str(failures) + " failures";
    r.passed = failures == 0;
  });
}

inline Result criterion10(const Options& opt) {
  return detail::run(10, "engine properties", 300, [&](Result& r) {
    SplitMix64 rng(opt.seed, 10);
    int moves = 0;
    int weight_violations = 0;
    int count_violations = 0;
    while (moves < 10000) {
      const int n = rng.between(2, 12);
      const Graph g = random_connected_graph(rng, n, 0.4 * rng.uniform());
      const int diam = diameter(g);
      std::vector<int> counts(static_cast<std::size_t>(n), 0);
      for (int i = rng.between(2, 20); i > 0; --i) ++counts[static_cast<std::size_t>(rng.between(0, n - 1))];
      Distribution d(g, counts);
      for (int step = 0; step < 50 && moves < 10000; ++step) {
        VertexList sources;
        for (Vertex v = 0; v < n; ++v) {
          if (d[v] >= 2) sources.push_back(v);
        }
        if (sources.empty()) break;
        const Vertex from = sources[rng.below(sources.size())];
        const auto nbrs = g.neighbors(from);
        const Vertex to = nbrs[rng.below(nbrs.size())];
        const auto before = detail::scaled_weights(g, d.counts(), diam);
        const Distribution next = apply_move(g, d, from, to);
        const auto after = detail::scaled_weights(g, next.counts(), diam);
        __int128 total_before = 0, total_after = 0;
        for (std::size_t v = 0; v < before.size(); ++v) {
          if (after[v] > before[v]) ++weight_violations;
          total_before += before[v];
          total_after += after[v];
        }
        if (total_after >= total_before) ++weight_violations;
        if (next.size() != d.size() - 1) ++count_violations;
        d = next;
        ++moves;
      }
    }
    // Path cut property: exhaustive over P_3..P_6 and every distribution of size <= 5.
    int instances = 0;
    int cut_violations = 0;
    for (int n = 3; n <= 6; ++n) {
      const Graph path = path_graph(n);
      for (int size = 0; size <= 5; ++size) {
        std::vector<int> items(static_cast<std::size_t>(size), 0);
        do {
          const Distribution d(path, multiset_counts(items, n));
          ++instances;
          std::vector<char> two(static_cast<std::size_t>(n));
          for (Vertex v = 0; v < n; ++v) two[static_cast<std::size_t>(v)] = is_k_reachable(path, d, v, 2).reachable;
          for (Vertex v = 1; v + 1 < n; ++v) {
            if (!two[static_cast<std::size_t>(v)] && two[static_cast<std::size_t>(v - 1)] && two[static_cast<std::size_t>(v + 1)]) {
              ++cut_violations;
            }
          }
        } while (size > 0 && next_multiset(items, n));
      }
    }
    r.detail = detail::str(moves) + " random moves: " + detail::str(weight_violations) + " weight violations, " +
               detail::str(count_violations) + " count errors; path cut: " + detail::str(instances) +
               " distributions, " + detail::str(cut_violations) + " violations";
    r.passed = weight_violations == 0 && count_violations == 0 && cut_violations == 0;
  });
}

/// Runs the criteria in order; an empty `only` runs all ten.
inline std::vector<Result> run_all(const Options& opt, const std::function<void(const Result&)>& on_result = {},
                                   const std::vector<int>& only = {}) {
  const std::function<Result(const Options&)> all[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<Result> out;
  for (int id = 1; id <= 10; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    out.push_back(all[id - 1](opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

/// 1 on any failure that is not a known deviation, or on any failure at
/// all when strict; 0 otherwise.
inline int exit_status(const std::vector<Result>& results, bool strict) {
  for (const auto& r : results) {
    if (r.passed) continue;
    if (strict || r.known_deviation.empty()) return 1;
  }
  return 0;
}

}  // namespace pebbling::acceptance
