#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pebbling/bound_constructor.hpp"
#include "pebbling/bounds_lab.hpp"
#include "pebbling/chain_solver.hpp"
#include "pebbling/engine.hpp"
#include "pebbling/solver.hpp"
#include "pebbling/special.hpp"

namespace pebbling::report {

// Insertion-ordered, so identical runs give byte-identical documents.
using Json = nlohmann::ordered_json;

inline Json vertices(const VertexList& list) { return Json(list); }

inline Json edges(const std::vector<Edge>& list) {
  Json out = Json::array();
  for (auto [a, b] : list) out.push_back({a, b});
  return out;
}

/// Sparse {"vertex": count} object plus the size.
inline Json distribution(const Distribution& d) {
  Json counts = Json::object();
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    if (d[v] > 0) counts[std::to_string(v)] = d[v];
  }
  return {{"size", d.size()}, {"counts", counts}};
}

inline Json moves(const MoveSequence& seq) {
  Json out = Json::array();
  for (const auto& m : seq) out.push_back(std::to_string(m.from) + "->" + std::to_string(m.to));
  return out;
}

inline Json graph_summary(const Graph& g) {
  Json out{{"n", g.order()}, {"m", g.size()}, {"connected", g.connected()}};
  if (g.order() > 0) out["min_degree"] = g.min_degree();
  if (g.order() > 0 && g.connected()) out["diameter"] = diameter(g);
  const int gi = girth(g);
  out["girth"] = gi == kInfinity ? Json("infinity") : Json(gi);
  return out;
}

inline Json reach(const ReachResult& r) {
  return {{"reachable", r.reachable}, {"moves", moves(r.witness)}, {"states_explored", r.states_explored}};
}

inline Json classification(const ReachabilityReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.u_components) comps.push_back(c);
  return {{"t_set", r.t_set}, {"h_set", r.h_set}, {"u_set", r.u_set}, {"u_components", comps}};
}

inline Json certificate(const SizeCertificate& c) {
  return {{"size", c.size},
          {"enumerated", c.enumerated},
          {"prefilter_rejects", c.prefilter_rejects},
          {"symmetry_skips", c.symmetry_skips},
          {"filter_rejects", c.filter_rejects},
          {"checked", c.checked},
          {"audits", c.audits},
          {"exhausted", c.exhausted},
          {"solvable_found", c.solvable_found}};
}

/// Wall time is left out unless asked for, to keep reports reproducible.
inline Json solver(const SolverResult& r, bool with_time) {
  Json out{{"status", std::string(to_string(r.status))}, {"k", r.k}};
  if (r.status == SolverStatus::kSolved) out["pi_star"] = r.pi_star;
  out["witness"] = r.witness ? distribution(*r.witness) : Json(nullptr);
  out["candidates_checked"] = r.candidates_checked();
  out["prefilter_rejects"] = r.prefilter_rejects();
  out["symmetry_skips"] = r.symmetry_skips();
  out["filter_rejects"] = r.filter_rejects();
  Json sizes = Json::array();
  for (const auto& c : r.sizes) sizes.push_back(certificate(c));
  out["sizes"] = sizes;
  if (with_time) out["wall_seconds"] = r.wall_seconds;
  return out;
}

inline Json ratio(const Ratio& r) {
  return {{"delta_t", r.delta_t}, {"delta_p", r.delta_p}, {"text", r.str()}};
}

inline Json star_sets(const StarSets& s) {
  Json l_map = Json::array();
  for (const auto& [pair, list] : s.l_map) l_map.push_back({{"pair", {pair.first, pair.second}}, {"l", list}});
  return {{"h_set", s.h_set},     {"a_set", s.a_set},     {"b_set", s.b_set},
          {"p_pairs", edges(s.p_pairs)}, {"r_pairs", edges(s.r_pairs)}, {"l_map", l_map}};
}

inline Json construction(const Construction& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    steps.push_back({{"case", std::string(to_string(s.case_tag))},
                     {"delta", distribution(s.delta)},
                     {"ratio", ratio(s.ratio)},
                     {"new_t_vertices", s.new_t_vertices},
                     {"component", s.component}});
  }
  return {{"n", c.n},
          {"min_degree", c.min_degree},
          {"d0", distribution(c.d0)},
          {"star_sets", star_sets(c.star_sets)},
          {"d0_ratio", ratio(c.d0_ratio)},
          {"steps", steps},
          {"distribution", distribution(c.distribution)},
          {"bound", ratio(c.bound())},
          {"within_bound", c.within_bound()}};
}

inline Json special(const SpecialReport& r) {
  Json out{{"is_special", r.is_special}, {"failure_reason", std::string(to_string(r.failure_reason))}};
  out["witness_pair"] = r.witness_pair ? Json{r.witness_pair->first, r.witness_pair->second} : Json(nullptr);
  return out;
}

inline Json inequality(const CheckedInequality& q) {
  return {{"statement", q.statement}, {"lhs", q.lhs}, {"rhs", q.rhs}, {"holds", q.holds}};
}

inline Json witness(const WitnessRecord& r) {
  Json ineqs = Json::array();
  for (const auto& q : r.inequalities) ineqs.push_back(inequality(q));
  Json out{{"epsilon", r.epsilon.str()}, {"a", r.a}, {"m_float", r.m_float}, {"m", r.m}};
  if (r.d > 0) out["d"] = r.d;
  out["n"] = r.n;
  out["delta"] = r.delta;
  out["pi_star"] = r.pi_star;
  out["pi_star_computed"] = r.pi_star_computed ? Json(*r.pi_star_computed) : Json(nullptr);
  out["diameter"] = r.diameter ? Json(*r.diameter) : Json(nullptr);
  out["expected_diameter"] = r.expected_diameter;
  out["upper_distribution_solvable"] =
      r.upper_distribution_solvable ? Json(*r.upper_distribution_solvable) : Json(nullptr);
  out["inequalities"] = ineqs;
  out["verified"] = r.verified();
  return out;
}

inline Json girth_params(const GirthParams& p) {
  return {{"k", p.k}, {"t", p.t}, {"trials", p.trials}, {"seed", p.seed}, {"L", p.L}, {"p", p.p}};
}

inline Json girth_report(const GirthReport& r) {
  Json totals = Json::array();
  for (const auto& t : r.trials) totals.push_back(t.total());
  return {{"params", girth_params(r.params)},
          {"n", r.n},
          {"min_degree", r.min_degree},
          {"girth", r.girth == kInfinity ? Json("infinity") : Json(r.girth)},
          {"warnings", r.warnings},
          {"mean", r.mean},
          {"stderr", r.stderr_mean},
          {"best_total", r.best_total},
          {"analytic_bound", r.analytic_bound},
          {"log_bound", r.log_bound},
          {"final_bound", r.final_bound},
          {"mean_within_bound", r.mean_within_bound()},
          {"verified_trials", r.verified_trials},
          {"totals", totals}};
}

inline Json cut(const std::optional<ChainCut>& c) {
  if (!c) return Json(nullptr);
  return {{"a", c->a},
          {"kind", c->kind},
          {"left_blocks", c->left_blocks},
          {"right_blocks", c->right_blocks},
          {"left", c->left},
          {"right", c->right},
          {"cut_edges", edges(c->cut_edges)}};
}

inline Json quotient(const QuotientMap& q) {
  return {{"source", graph_summary(q.source)},
          {"target_order", q.target.order()},
          {"phi", q.phi},
          {"quotient_condition", q.satisfies_quotient_condition()}};
}

}  // namespace pebbling::report
