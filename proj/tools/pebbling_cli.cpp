// pebbling: command-line front end. One JSON report on stdout, a short
// human summary on stderr.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pebbling/acceptance.hpp"
#include "pebbling/pebbling.hpp"
#include "pebbling/report.hpp"

using namespace pebbling;
using report::Json;

namespace {

/// Bad flag combinations; exit code 2 like InputError.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error("usage", message) {}
};

struct Flags {
  std::string graph;
  std::string gen;
  std::string dist;
  std::string blocks;
  int l = 0;
  std::string variant = "plain";
  std::string pair;
  int k = 1;
  std::optional<int> target;
  std::optional<int> budget;
  std::uint64_t seed = 1;
  int trials = 200;
  int t = 1;
  int degree = 4;
  std::string scale = "quick";
  int threads = 1;
  bool timing = false;
  bool symmetry = false;
  bool lenient = false;
  bool strict = false;
  bool cut = false;
  std::string family = "diameter2";
  std::string epsilon = "1";
  int d = 1;
  std::string write;
  std::string fixtures = PEBBLING_FIXTURE_DIR;
  std::vector<int> only;
  std::vector<std::string> invocation;
};

struct Outcome {
  Json result;
  std::string summary;
  int exit_code = 0;
};

Graph load_source_graph(const Flags& f) {
  if (!f.graph.empty() && !f.gen.empty()) throw UsageError("give only one of --graph and --gen");
  if (!f.gen.empty()) return generate_graph(f.gen);
  if (f.graph.empty()) throw UsageError("a graph is required (--graph FILE or --gen SPEC)");
  // A name that is not a file but looks like a generator string is generated.
  if (!std::filesystem::exists(f.graph) && f.graph.find(':') != std::string::npos) return generate_graph(f.graph);
  return load_graph(f.graph);
}

Distribution load_distribution(const Graph& g, const Flags& f) {
  if (f.dist.empty()) throw UsageError("a distribution is required (--dist FILE or --dist \"v:c,...\")");
  if (std::filesystem::is_regular_file(f.dist)) return parse_distribution(g, read_text_file(f.dist));
  return parse_distribution(g, f.dist);
}

ChainRequest chain_request(const Flags& f) {
  if (!f.blocks.empty()) {
    if (f.l < 1) throw UsageError("--blocks needs --l >= 1");
    std::string body = f.blocks + ",l=" + std::to_string(f.l) + ",variant=" + f.variant;
    if (!f.pair.empty()) body += ",pair=" + f.pair;
    return parse_chain_request(body);
  }
  const std::string& spec = !f.gen.empty() ? f.gen : f.graph;
  if (spec.rfind("chain:", 0) != 0) throw UsageError("a chain is required (--blocks SPEC --l N or --gen chain:...)");
  return parse_chain_request(spec.substr(6));
}

Json chain_json(const ChainRequest& c) {
  return {{"block", c.block_descriptor},
          {"l", c.spec.length()},
          {"variant", std::string(to_string(c.spec.variant))},
          {"pair", {c.spec.blocks[0].u, c.spec.blocks[0].v}},
          {"special_blocks", c.spec.require_special}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("unwritable-file", "cannot write file '" + path + "'");
  out << text;
}

SolverOptions solver_options(const Flags& f) {
  SolverOptions options;
  options.budget = f.budget;
  options.threads = f.threads;
  return options;
}

Outcome cmd_generate(const Flags& f) {
  const Graph g = load_source_graph(f);
  if (!f.write.empty()) write_text(f.write, format_graph(g));
  Json labels = Json::array();
  for (Vertex v = 0; v < g.order(); ++v) labels.push_back(g.label(v));
  return {{{"graph", report::graph_summary(g)}, {"labels", labels}, {"edges", report::edges(g.edges())}},
          std::to_string(g.order()) + " vertices, " + std::to_string(g.size()) + " edges"};
}

Outcome cmd_reach(const Flags& f) {
  const Graph g = load_source_graph(f);
  const Distribution d = load_distribution(g, f);
  if (!f.target) throw UsageError("reach needs --target");
  const ReachResult r = is_k_reachable(g, d, *f.target, f.k);
  return {{{"graph", report::graph_summary(g)},
           {"distribution", report::distribution(d)},
           {"target", *f.target},
           {"k", f.k},
           {"reach", report::reach(r)}},
          std::string(r.reachable ? "reachable" : "not reachable") +
              (r.reachable ? " in " + std::to_string(r.witness.size()) + " moves" : "")};
}

Outcome cmd_solvable(const Flags& f) {
  const Graph g = load_source_graph(f);
  const Distribution d = load_distribution(g, f);
  const SolvableResult r = is_k_solvable(g, d, f.k);
  return {{{"graph", report::graph_summary(g)},
           {"distribution", report::distribution(d)},
           {"k", f.k},
           {"solvable", r.solvable},
           {"failing_vertex", r.failing_vertex ? Json(*r.failing_vertex) : Json(nullptr)}},
          std::string(r.solvable ? "solvable" : "not solvable") + ", size " + std::to_string(d.size())};
}

Outcome cmd_classify(const Flags& f) {
  const Graph g = load_source_graph(f);
  const Distribution d = load_distribution(g, f);
  const ReachabilityReport r = classify(g, d);
  return {{{"graph", report::graph_summary(g)},
           {"distribution", report::distribution(d)},
           {"classification", report::classification(r)}},
          "|T|=" + std::to_string(r.t_set.size()) + " |H|=" + std::to_string(r.h_set.size()) +
              " |U|=" + std::to_string(r.u_set.size())};
}

Outcome solver_outcome(Json head, const SolverResult& r, bool timing) {
  head["solver"] = report::solver(r, timing);
  std::string summary = r.status == SolverStatus::kSolved ? "pi*_" + std::to_string(r.k) + " = " + std::to_string(r.pi_star)
                                                           : std::string(to_string(r.status));
  return {head, summary, r.status == SolverStatus::kSolved ? 0 : 1};
}

Outcome cmd_pistar(const Flags& f) {
  const Graph g = load_source_graph(f);
  SolverOptions options = solver_options(f);
  if (f.symmetry) options.symmetry = automorphisms(g);
  return solver_outcome({{"graph", report::graph_summary(g)}}, pi_star(g, f.k, options), f.timing);
}

Outcome cmd_chain_pistar(const Flags& f) {
  const ChainRequest c = chain_request(f);
  const Graph g = build_chain(c.spec);
  return solver_outcome({{"chain", chain_json(c)}, {"graph", report::graph_summary(g)}},
                        pi_star_chain(c.spec, f.k, solver_options(f)), f.timing);
}

Outcome cmd_construct(const Flags& f) {
  const Graph g = load_source_graph(f);
  const Construction c = construct_solvable(g);
  if (!f.write.empty()) write_text(f.write, format_distribution(c.distribution));
  return {{{"graph", report::graph_summary(g)}, {"construction", report::construction(c)}},
          "solvable distribution of size " + std::to_string(c.distribution.size()) + " (bound " + c.bound().str() +
              ", " + std::to_string(c.steps.size()) + " steps)"};
}

Outcome cmd_chain_dist(const Flags& f) {
  const ChainRequest c = chain_request(f);
  const Graph g = build_chain(c.spec);
  const Distribution d = chain_upper_distribution(c.spec);
  if (!f.write.empty()) write_text(f.write, format_distribution(d));
  const bool solvable = is_k_solvable(g, d, 1).solvable;
  return {{{"chain", chain_json(c)},
           {"graph", report::graph_summary(g)},
           {"distribution", report::distribution(d)},
           {"solvable", solvable}},
          "size " + std::to_string(d.size()) + ", " + (solvable ? "solvable" : "not solvable")};
}

Outcome cmd_collapse(const Flags& f) {
  const ChainRequest c = chain_request(f);
  const QuotientMap map = collapse_chain(c.spec);
  const Distribution d = load_distribution(map.source, f);
  const Distribution collapsed = map.collapse(d);
  Json out{{"chain", chain_json(c)},
           {"quotient", report::quotient(map)},
           {"distribution", report::distribution(d)},
           {"collapsed", report::distribution(collapsed)}};
  std::string summary = "collapsed onto P" + std::to_string(map.target.order());
  if (f.target) {
    const Vertex image = map.phi.at(static_cast<std::size_t>(*f.target));
    const bool source = is_k_reachable(map.source, d, *f.target, f.k).reachable;
    const bool path = is_k_reachable(map.target, collapsed, image, f.k).reachable;
    out["target"] = {{"vertex", *f.target}, {"image", image}, {"k", f.k}, {"source_reachable", source},
                     {"collapsed_reachable", path}};
    summary += std::string("; target ") + (source ? "reachable" : "not reachable") + ", image " +
               (path ? "reachable" : "not reachable");
  }
  if (f.cut) {
    const auto cut = decomposition_check(c.spec, d);
    out["cut"] = report::cut(cut);
    summary += cut ? "; cut " + cut->kind + " at a=" + std::to_string(cut->a) : "; no cut (|D| >= 3l-1)";
  }
  return {out, summary};
}

Outcome cmd_special_check(const Flags& f) {
  const Graph g = load_source_graph(f);
  const SpecialReport r = is_special(g);
  const auto edge = has_dominating_edge(g);
  Json out{{"graph", report::graph_summary(g)}, {"special", report::special(r)}};
  out["dominating_edge"] = edge ? Json{edge->first, edge->second} : Json(nullptr);
  return {out, r.is_special ? "special" : "not special: " + std::string(to_string(r.failure_reason))};
}

Outcome cmd_witness(const Flags& f) {
  const Fraction eps = parse_fraction(f.epsilon);
  WitnessRecord record;
  if (f.family == "diameter2") {
    record = diameter2_witness(eps).record;
  } else if (f.family == "chain") {
    record = chain_witness(eps, f.d).record;
  } else {
    throw UsageError("--family must be diameter2 or chain");
  }
  return {{{"family", f.family}, {"witness", report::witness(record)}},
          "m=" + std::to_string(record.m) + " n=" + std::to_string(record.n) + " pi*=" +
              std::to_string(record.pi_star) + (record.verified() ? ", verified" : ", NOT verified"),
          record.verified() ? 0 : 1};
}

Outcome cmd_girth_exp(const Flags& f) {
  const Graph g = load_source_graph(f);
  const GirthParams params = make_girth_params(f.degree, f.t, f.trials, f.seed);
  const GirthReport r = girth_experiment(g, params, !f.lenient, 1, f.threads);
  std::ostringstream s;
  s.precision(3);
  s << "mean " << r.mean << " +- " << r.stderr_mean << ", analytic bound " << r.analytic_bound << ", "
    << r.verified_trials << "/" << r.trials.size() << " verified";
  return {{{"graph", report::graph_summary(g)}, {"girth_experiment", report::girth_report(r)}}, s.str(),
          r.all_verified() ? 0 : 1};
}

Outcome cmd_verify_all(const Flags& f) {
  acceptance::Options options;
  options.scale = acceptance::parse_scale(f.scale);
  options.fixture_dir = f.fixtures;
  options.seed = f.seed;
  options.threads = f.threads;
  const auto results =
      acceptance::run_all(options, [](const acceptance::Result& r) { std::cerr << r.line() << "\n"; }, f.only);
  Json list = Json::array();
  int passed = 0;
  for (const auto& r : results) {
    passed += r.passed;
    list.push_back({{"id", r.id},
                    {"title", r.title},
                    {"passed", r.passed},
                    {"known_deviation", r.known_deviation.empty() ? Json(nullptr) : Json(r.known_deviation)},
                    {"detail", r.detail},
                    {"seconds", r.seconds},
                    {"limit_seconds", r.limit_seconds}});
  }
  return {{{"scale", f.scale}, {"criteria", list}},
          std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed",
          acceptance::exit_status(results, f.strict)};
}

int emit(const std::string& command, const Flags& f, const Outcome& o) {
  Json doc{{"command", command}, {"invocation", f.invocation}, {"result", o.result}};
  std::cout << doc.dump(2) << std::endl;
  std::cerr << command << ": " << o.summary << std::endl;
  return o.exit_code;
}

int emit_error(const std::string& command, const Flags& f, const char* kind, const Error& e, int code) {
  Json doc{{"command", command},
           {"invocation", f.invocation},
           {"error", {{"kind", kind}, {"code", e.code()}, {"message", e.what()}}}};
  std::cout << doc.dump(2) << std::endl;
  std::cerr << "error[" << e.code() << "] " << e.what() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  for (int i = 1; i < argc; ++i) f.invocation.emplace_back(argv[i]);

  CLI::App app{"Graph pebbling toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--graph", f.graph, "graph file (\"n m\" then edges), or a generator string");
  app.add_option("--gen", f.gen, "generator string, e.g. complement-km-km:4 or chain:circulant:10,1,4,5,l=2");
  app.add_option("--dist", f.dist, "distribution file or inline \"v:c,...\"");
  app.add_option("--blocks", f.blocks, "chain block generator");
  app.add_option("--l", f.l, "chain length");
  app.add_option("--variant", f.variant, "chain variant")->check(CLI::IsMember({"plain", "minus", "plus"}));
  app.add_option("--pair", f.pair, "join blocks through u/v without requiring a special block");
  app.add_option("--k", f.k, "pebbles required on the target")->check(CLI::Range(1, kMaxTargetPebbles));
  app.add_option("--target", f.target, "target vertex");
  app.add_option("--budget", f.budget, "largest distribution size the solver tries")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--trials", f.trials, "girth experiment trials")->check(CLI::Range(1, 1000000));
  app.add_option("--t", f.t, "girth experiment radius")->check(CLI::Range(1, 30));
  app.add_option("--degree", f.degree, "girth experiment degree parameter")->check(CLI::Range(3, 1000));
  app.add_option("--scale", f.scale, "verify-all scale")->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--family", f.family, "witness family: diameter2 or chain");
  app.add_option("--epsilon", f.epsilon, "witness epsilon, e.g. 1, 8/3 or 0.25");
  app.add_option("--d", f.d, "chain witness parameter")->check(CLI::Range(1, 1000));
  app.add_option("--write", f.write, "also write the graph or distribution as text to FILE");
  app.add_option("--fixtures", f.fixtures, "directory of girth fixtures for verify-all");
  app.add_option("--only", f.only, "verify-all: criterion ids to run")->check(CLI::Range(1, 10));
  app.add_flag("--timing", f.timing, "include wall-clock times in solver reports");
  app.add_flag("--symmetry", f.symmetry, "prune candidates by graph automorphisms");
  app.add_flag("--lenient", f.lenient, "girth-exp: warn instead of failing on girth or degree preconditions");
  app.add_flag("--strict", f.strict, "verify-all: known deviations count as failures");
  app.add_flag("--cut", f.cut, "collapse: also locate the decomposition cut");

  const std::vector<std::pair<std::string, std::function<Outcome(const Flags&)>>> commands = {
      {"generate", cmd_generate},       {"reach", cmd_reach},
      {"solvable", cmd_solvable},       {"classify", cmd_classify},
      {"pistar", cmd_pistar},           {"chain-pistar", cmd_chain_pistar},
      {"construct", cmd_construct},     {"chain-dist", cmd_chain_dist},
      {"collapse", cmd_collapse},       {"special-check", cmd_special_check},
      {"witness", cmd_witness},         {"girth-exp", cmd_girth_exp},
      {"verify-all", cmd_verify_all}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage] " << e.what() << std::endl;
    return 2;
  }

  std::string command;
  for (const auto& [name, fn] : commands) {
    if (app.got_subcommand(name)) command = name;
  }
  try {
    for (const auto& [name, fn] : commands) {
      if (name == command) return emit(command, f, fn(f));
    }
  } catch (const UsageError& e) {
    return emit_error(command, f, "usage", e, 2);
  } catch (const InputError& e) {
    return emit_error(command, f, "input", e, 2);
  } catch (const PreconditionError& e) {
    return emit_error(command, f, "precondition", e, 1);
  } catch (const BudgetError& e) {
    return emit_error(command, f, "budget", e, 1);
  } catch (const InternalError& e) {
    return emit_error(command, f, "internal", e, 1);
  }
  return 2;
}
