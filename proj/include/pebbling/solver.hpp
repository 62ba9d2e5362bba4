#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pebbling/automorphism.hpp"
#include "pebbling/chain.hpp"
#include "pebbling/distribution.hpp"
#include "pebbling/engine.hpp"
#include "pebbling/generators.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/multiset.hpp"

namespace pebbling {

enum class SolverStatus { kSolved, kBudgetExceeded, kTimeExceeded };

inline std::string_view to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::kSolved: return "solved";
    case SolverStatus::kBudgetExceeded: return "exceeded-budget";
    case SolverStatus::kTimeExceeded: return "exceeded-time";
  }
  return "unknown";
}

/// Bookkeeping for one candidate size. Every size-s multiset lands in
/// exactly one of the four buckets, so
/// enumerated == prefilter_rejects + symmetry_skips + filter_rejects + checked.
struct SizeCertificate {
  int size = 0;
  std::uint64_t enumerated = 0;
  std::uint64_t prefilter_rejects = 0;
  std::uint64_t symmetry_skips = 0;
  std::uint64_t filter_rejects = 0;
  std::uint64_t checked = 0;
  std::uint64_t audits = 0;
  bool exhausted = false;  // every candidate of this size decided unsolvable
  bool solvable_found = false;
};

struct SolverOptions {
  /// Largest size tried; defaults to n * k (one pile of k per vertex solves).
  std::optional<int> budget;
  /// When > 1, first certify that no size (start_size - 1) distribution is
  /// solvable, then search upward from start_size. Falls back to a search
  /// from size 1 if that certification fails.
  int start_size = 1;
  EngineOptions engine;
  /// Automorphisms of the graph; only orbit-minimal candidates get checked.
  std::optional<std::vector<Permutation>> symmetry;
  /// Extra sound necessary condition on count vectors (false = reject).
  std::function<bool(const std::vector<int>&)> necessary_filter;
  std::optional<std::chrono::milliseconds> time_limit;
  /// Every audit_stride-th prefiltered subtree has its first candidate
  /// re-checked by the engine (0 disables).
  std::uint64_t audit_stride = 0;
  int threads = 1;
};

struct SolverResult {
  SolverStatus status = SolverStatus::kBudgetExceeded;
  int k = 1;
  int pi_star = 0;
  std::optional<Distribution> witness;
  std::vector<SizeCertificate> sizes;
  double wall_seconds = 0;

  std::uint64_t candidates_checked() const { return sum(&SizeCertificate::checked); }
  std::uint64_t prefilter_rejects() const { return sum(&SizeCertificate::prefilter_rejects); }
  std::uint64_t symmetry_skips() const { return sum(&SizeCertificate::symmetry_skips); }
  std::uint64_t filter_rejects() const { return sum(&SizeCertificate::filter_rejects); }

  /// Certificate for the size just below pi_star, if it was scanned.
  const SizeCertificate* below_optimum() const {
    for (const auto& c : sizes) {
      if (c.size == pi_star - 1) return &c;
    }
    return nullptr;
  }

 private:
  std::uint64_t sum(std::uint64_t SizeCertificate::*field) const {
    std::uint64_t total = 0;
    for (const auto& c : sizes) total += c.*field;
    return total;
  }
};

namespace detail {

using Wide = unsigned __int128;

inline constexpr std::uint64_t kNoLeaf = UINT64_MAX;

/// Shared, read-only data for scanning candidates of one graph.
struct ScanContext {
  const Graph* g = nullptr;
  int k = 1;
  int n = 0;
  std::vector<Wide> contrib;     // contrib[x*n+v] = 2^{D - dist(x,v)}
  std::vector<Wide> suffix_max;  // max_{y >= x} contrib[y*n+v]
  Wide threshold = 0;            // k * 2^D
  const SolverOptions* options = nullptr;
  std::chrono::steady_clock::time_point deadline{};
  bool has_deadline = false;

  Wide at(const std::vector<Wide>& table, Vertex x, Vertex v) const {
    return table[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)];
  }
};

inline ScanContext make_context(const Graph& g, int k, const SolverOptions& options) {
  ScanContext ctx;
  ctx.g = &g;
  ctx.k = k;
  ctx.n = g.order();
  ctx.options = &options;
  const int diam = diameter(g);
  if (diam > 100) {
    throw PreconditionError("diameter-too-large", "exact solver supports diameter <= 100");
  }
  const auto un = static_cast<std::size_t>(ctx.n);
  ctx.contrib.resize(un * un);
  ctx.suffix_max.resize(un * un);
  for (Vertex x = 0; x < ctx.n; ++x) {
    for (Vertex v = 0; v < ctx.n; ++v) {
      ctx.contrib[static_cast<std::size_t>(x) * un + static_cast<std::size_t>(v)] =
          static_cast<Wide>(1) << (diam - g.distance(x, v));
    }
  }
  for (Vertex x = ctx.n - 1; x >= 0; --x) {
    for (Vertex v = 0; v < ctx.n; ++v) {
      Wide best = ctx.at(ctx.contrib, x, v);
      if (x + 1 < ctx.n) best = std::max(best, ctx.at(ctx.suffix_max, x + 1, v));
      ctx.suffix_max[static_cast<std::size_t>(x) * un + static_cast<std::size_t>(v)] = best;
    }
  }
  ctx.threshold = static_cast<Wide>(k) << diam;
  if (options.time_limit) {
    ctx.has_deadline = true;
    ctx.deadline = std::chrono::steady_clock::now() + *options.time_limit;
  }
  return ctx;
}

/// Depth-first lexicographic scan of all size-s multisets for one worker.
class SizeScan {
 public:
  SizeScan(const ScanContext& ctx, int size, unsigned worker, unsigned workers,
           std::atomic<std::uint64_t>* best, bool run_engine, std::uint64_t stop_before)
      : ctx_(ctx), size_(size), worker_(worker), workers_(workers), best_(best),
        run_engine_(run_engine), stop_before_(stop_before),
        weight_(static_cast<std::size_t>(ctx.n), 0), items_(static_cast<std::size_t>(size), 0) {
    cert_.size = size;
  }

  /// Returns false if the deadline passed mid-scan.
  bool run() {
    std::uint64_t base = 0;
    visit(0, 0, base);
    return !timed_out_;
  }

  const SizeCertificate& certificate() const noexcept { return cert_; }
  std::uint64_t found() const noexcept { return found_; }

 private:
  bool stop(std::uint64_t index) const {
    if (timed_out_) return true;
    if (index >= stop_before_) return true;
    return best_ && index > best_->load(std::memory_order_relaxed);
  }

  void visit(int pos, Vertex min_vertex, std::uint64_t& base) {
    const int n = ctx_.n;
    const int remaining = size_ - pos;
    for (Vertex x = min_vertex; x < n; ++x) {
      if (stop(base)) return;
      const std::uint64_t subtree = multiset_count(n - x, remaining - 1);
      bool feasible = true;
      for (Vertex v = 0; v < n && feasible; ++v) {
        const Wide bound = weight_[static_cast<std::size_t>(v)] + ctx_.at(ctx_.contrib, x, v) +
                           static_cast<Wide>(remaining - 1) * ctx_.at(ctx_.suffix_max, x, v);
        feasible = bound >= ctx_.threshold;
      }
      if (!feasible) {
        if (worker_ == 0) {
          const std::uint64_t counted = std::min(subtree, stop_before_ - base);
          cert_.prefilter_rejects += counted;
          cert_.enumerated += counted;
          maybe_audit(pos, x);
        }
        base += subtree;
        continue;
      }
      items_[static_cast<std::size_t>(pos)] = x;
      add(x, +1);
      if (remaining == 1) {
        leaf(base);
        base += 1;
      } else {
        visit(pos + 1, x, base);
      }
      add(x, -1);
    }
  }

  void add(Vertex x, int sign) {
    for (Vertex v = 0; v < ctx_.n; ++v) {
      auto& w = weight_[static_cast<std::size_t>(v)];
      if (sign > 0) {
        w += ctx_.at(ctx_.contrib, x, v);
      } else {
        w -= ctx_.at(ctx_.contrib, x, v);
      }
    }
  }

  void maybe_audit(int pos, Vertex x) {
    const auto stride = ctx_.options->audit_stride;
    if (stride == 0 || !run_engine_) return;
    if (++pruned_subtrees_ % stride != 0) return;
    std::vector<int> probe(items_.begin(), items_.begin() + pos);
    probe.resize(static_cast<std::size_t>(size_), x);
    if (solvable(multiset_counts(probe, ctx_.n))) {
      throw InternalError("prefilter-unsound", "weight prefilter rejected a solvable candidate");
    }
    ++cert_.audits;
  }

  bool canonical() const {
    const auto& group = *ctx_.options->symmetry;
    std::vector<int> image(items_.size());
    for (const auto& perm : group) {
      for (std::size_t i = 0; i < items_.size(); ++i) {
        image[i] = perm[static_cast<std::size_t>(items_[i])];
      }
      std::sort(image.begin(), image.end());
      if (image < items_) return false;
    }
    return true;
  }

  bool solvable(const std::vector<int>& counts) const {
    const Graph& g = *ctx_.g;
    const Distribution d(g, counts);
    // Weakest targets first: they are the likeliest to fail.
    VertexList order(static_cast<std::size_t>(ctx_.n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<Wide> w(static_cast<std::size_t>(ctx_.n), 0);
    for (Vertex x = 0; x < ctx_.n; ++x) {
      if (counts[static_cast<std::size_t>(x)] == 0) continue;
      for (Vertex v = 0; v < ctx_.n; ++v) {
        w[static_cast<std::size_t>(v)] +=
            static_cast<Wide>(counts[static_cast<std::size_t>(x)]) * ctx_.at(ctx_.contrib, x, v);
      }
    }
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return w[static_cast<std::size_t>(a)] < w[static_cast<std::size_t>(b)];
    });
    for (Vertex v : order) {
      if (!is_k_reachable(g, d, v, ctx_.k, ctx_.options->engine).reachable) return false;
    }
    return true;
  }

  void leaf(std::uint64_t index) {
    if (ctx_.has_deadline && (++ticks_ & 0x3ff) == 0 &&
        std::chrono::steady_clock::now() > ctx_.deadline) {
      timed_out_ = true;
      return;
    }
    if (index % workers_ != worker_) return;
    ++cert_.enumerated;
    if (ctx_.options->symmetry && !canonical()) {
      ++cert_.symmetry_skips;
      return;
    }
    const auto counts = multiset_counts(items_, ctx_.n);
    if (ctx_.options->necessary_filter && !ctx_.options->necessary_filter(counts)) {
      ++cert_.filter_rejects;
      return;
    }
    ++cert_.checked;
    if (!run_engine_) return;
    if (solvable(counts)) {
      cert_.solvable_found = true;
      found_ = std::min(found_, index);
      if (best_) {
        std::uint64_t current = best_->load();
        while (index < current && !best_->compare_exchange_weak(current, index)) {
        }
      }
      witness_items_ = items_;
    }
  }

 public:
  const std::vector<int>& witness_items() const noexcept { return witness_items_; }

 private:
  const ScanContext& ctx_;
  int size_;
  unsigned worker_;
  unsigned workers_;
  std::atomic<std::uint64_t>* best_;
  bool run_engine_;
  std::uint64_t stop_before_;
  std::vector<Wide> weight_;
  std::vector<int> items_;
  std::vector<int> witness_items_;
  SizeCertificate cert_;
  std::uint64_t found_ = kNoLeaf;
  std::uint64_t pruned_subtrees_ = 0;
  std::uint64_t ticks_ = 0;
  bool timed_out_ = false;
};

struct SizeOutcome {
  SizeCertificate certificate;
  std::optional<std::vector<int>> witness_counts;
  bool timed_out = false;
};

inline SizeOutcome scan_size(const ScanContext& ctx, int size) {
  const unsigned workers = static_cast<unsigned>(std::max(1, ctx.options->threads));
  std::atomic<std::uint64_t> best{kNoLeaf};
  std::vector<SizeScan> scans;
  scans.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) scans.emplace_back(ctx, size, w, workers, &best, true, kNoLeaf);
  if (workers == 1) {
    scans[0].run();
  } else {
    std::vector<std::thread> pool;
    for (auto& scan : scans) pool.emplace_back([&scan] { scan.run(); });
    for (auto& t : pool) t.join();
  }
  SizeOutcome outcome;
  outcome.certificate.size = size;
  const std::uint64_t winner = best.load();
  const SizeScan* owner = nullptr;
  for (const auto& scan : scans) {
    if (scan.found() == winner && winner != kNoLeaf) owner = &scan;
  }
  if (winner == kNoLeaf) {
    for (const auto& scan : scans) {
      const auto& c = scan.certificate();
      outcome.certificate.enumerated += c.enumerated;
      outcome.certificate.prefilter_rejects += c.prefilter_rejects;
      outcome.certificate.symmetry_skips += c.symmetry_skips;
      outcome.certificate.filter_rejects += c.filter_rejects;
      outcome.certificate.checked += c.checked;
      outcome.certificate.audits += c.audits;
    }
  } else {
    // Recount deterministically over candidates up to the winner.
    SizeScan recount(ctx, size, 0, 1, nullptr, false, winner + 1);
    recount.run();
    outcome.certificate = recount.certificate();
    outcome.certificate.audits = 0;
    for (const auto& scan : scans) outcome.certificate.audits += scan.certificate().audits;
    outcome.certificate.solvable_found = true;
    outcome.witness_counts = multiset_counts(owner->witness_items(), ctx.n);
  }
  return outcome;
}

}  // namespace detail

/// Exact π*_k by increasing candidate size with lexicographic multiset
/// enumeration, a weight-function prefilter and engine verification. The
/// witness is the lexicographically least solvable multiset of minimal size.
inline SolverResult pi_star(const Graph& g, int k, const SolverOptions& options = {}) {
  require_connected(g, "pi_star");
  detail::check_k(k);
  const auto started = std::chrono::steady_clock::now();
  const int budget = options.budget.value_or(g.order() * k);
  SolverResult result;
  result.k = k;
  const auto ctx = detail::make_context(g, k, options);

  auto timed_out = [&] {
    return ctx.has_deadline && std::chrono::steady_clock::now() > ctx.deadline;
  };
  auto finish = [&](SolverStatus status) {
    result.status = status;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
  };

  int size = 1;
  if (options.start_size > 1 && options.start_size - 1 <= budget) {
    auto below = detail::scan_size(ctx, options.start_size - 1);
    if (timed_out()) {
      result.sizes.push_back(below.certificate);
      return finish(SolverStatus::kTimeExceeded);
    }
    below.certificate.exhausted = !below.witness_counts.has_value();
    result.sizes.push_back(below.certificate);
    size = below.witness_counts ? 1 : options.start_size;
  }
  for (; size <= budget; ++size) {
    auto outcome = detail::scan_size(ctx, size);
    if (timed_out() && !outcome.witness_counts) {
      result.sizes.push_back(outcome.certificate);
      return finish(SolverStatus::kTimeExceeded);
    }
    outcome.certificate.exhausted = !outcome.witness_counts.has_value();
    result.sizes.push_back(outcome.certificate);
    if (outcome.witness_counts) {
      result.pi_star = size;
      result.witness = Distribution(g, *outcome.witness_counts);
      if (!is_k_solvable(g, *result.witness, k, options.engine).solvable) {
        throw InternalError("witness-unsolvable", "solver witness failed re-verification");
      }
      return finish(SolverStatus::kSolved);
    }
  }
  return finish(SolverStatus::kBudgetExceeded);
}

/// π*_2 of the n-vertex path.
inline int two_optimal_path_value(int n) {
  if (n < 1 || n > 8) throw PreconditionError("bad-parameter", "two_optimal_path_value needs 1 <= n <= 8");
  const auto result = pi_star(path_graph(n), 2);
  if (result.status != SolverStatus::kSolved) {
    throw BudgetError("exceeded-budget", "path solver did not finish");
  }
  return result.pi_star;
}

/// Whether D_phi is k-solvable on the collapsed path (exact: the path is a tree).
inline bool collapsed_path_solvable(const QuotientMap& map, const std::vector<int>& counts, int k) {
  std::vector<int> collapsed(static_cast<std::size_t>(map.target.order()), 0);
  for (std::size_t x = 0; x < counts.size(); ++x) {
    collapsed[static_cast<std::size_t>(map.phi[x])] += counts[x];
  }
  const Distribution d(map.target, collapsed);
  for (Vertex p = 0; p < map.target.order(); ++p) {
    if (!is_k_reachable(map.target, d, p, k).reachable) return false;
  }
  return true;
}

}  // namespace pebbling
