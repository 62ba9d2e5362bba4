#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
  Json doc;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("pebbling_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliRun run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("'") + PEBBLING_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" +
                          err.string() + "'";
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  if (!r.out.empty()) r.doc = Json::parse(r.out, nullptr, false);
  return r;
}

// Every report: one JSON object with the command, its invocation and a result or an error.
void expect_envelope(const CliRun& r, const std::string& command) {
  ASSERT_FALSE(r.doc.is_discarded()) << r.out;
  ASSERT_TRUE(r.doc.is_object());
  EXPECT_EQ(r.doc.at("command"), command);
  EXPECT_TRUE(r.doc.at("invocation").is_array());
  EXPECT_NE(r.doc.contains("result"), r.doc.contains("error"));
  if (r.doc.contains("error")) {
    const auto& e = r.doc["error"];
    EXPECT_TRUE(e.at("code").is_string());
    EXPECT_TRUE(e.at("kind").is_string());
    EXPECT_TRUE(e.at("message").is_string());
    // The stderr line carries the same machine-parsable code.
    EXPECT_EQ(r.err.rfind("error[" + e["code"].get<std::string>() + "]", 0), 0u) << r.err;
  }
}

void expect_graph_summary(const Json& g) {
  EXPECT_TRUE(g.at("n").is_number_integer());
  EXPECT_TRUE(g.at("m").is_number_integer());
  EXPECT_TRUE(g.at("connected").is_boolean());
}

void expect_distribution(const Json& d) {
  EXPECT_TRUE(d.at("size").is_number_integer());
  int total = 0;
  for (const auto& [v, c] : d.at("counts").items()) {
    EXPECT_FALSE(v.empty());
    total += c.get<int>();
  }
  EXPECT_EQ(total, d["size"].get<int>());
}

}  // namespace

TEST(Cli, ReachOnPath) {
  const CliRun r = run("reach --graph path:3 --dist 0:4 --target 2");
  ASSERT_EQ(r.status, 0) << r.err;
  expect_envelope(r, "reach");
  const auto& res = r.doc["result"];
  expect_graph_summary(res["graph"]);
  expect_distribution(res["distribution"]);
  EXPECT_TRUE(res["reach"]["reachable"].get<bool>());
  EXPECT_EQ(res["reach"]["moves"], Json({"0->1", "0->1", "1->2"}));
}

TEST(Cli, PiStar) {
  const CliRun special = run("pistar --gen circulant:10,1,4,5");
  ASSERT_EQ(special.status, 0) << special.err;
  expect_envelope(special, "pistar");
  const auto& s = special.doc["result"]["solver"];
  EXPECT_EQ(s["status"], "solved");
  EXPECT_EQ(s["pi_star"], 4);
  expect_distribution(s["witness"]);
  ASSERT_TRUE(s["sizes"].is_array());
  for (const auto& c : s["sizes"]) {
    EXPECT_EQ(c["enumerated"].get<std::uint64_t>(),
              c["prefilter_rejects"].get<std::uint64_t>() + c["symmetry_skips"].get<std::uint64_t>() +
                  c["filter_rejects"].get<std::uint64_t>() + c["checked"].get<std::uint64_t>());
  }
  EXPECT_FALSE(s.contains("wall_seconds"));
  EXPECT_TRUE(run("pistar --gen complete:4 --timing").doc["result"]["solver"].contains("wall_seconds"));

  const CliRun literal = run("pistar --gen circulant-special:5");
  ASSERT_EQ(literal.status, 0);
  EXPECT_EQ(literal.doc["result"]["solver"]["pi_star"], 3);
}

TEST(Cli, ChainDistThenSolvable) {
  const std::string file = (scratch() / "chain3.txt").string();
  const CliRun dist = run("chain-dist --blocks circulant:10,1,4,5 --l 3 --write '" + file + "'");
  ASSERT_EQ(dist.status, 0) << dist.err;
  expect_envelope(dist, "chain-dist");
  EXPECT_EQ(dist.doc["result"]["distribution"]["size"], 8);
  EXPECT_TRUE(dist.doc["result"]["solvable"].get<bool>());
  const CliRun solvable = run("solvable --gen chain:circulant:10,1,4,5,l=3 --dist '" + file + "'");
  ASSERT_EQ(solvable.status, 0) << solvable.err;
  expect_envelope(solvable, "solvable");
  EXPECT_TRUE(solvable.doc["result"]["solvable"].get<bool>());
  EXPECT_EQ(solvable.doc["result"]["distribution"]["size"], 8);
}

TEST(Cli, LiteralCirculantChainIsRejected) {
  const CliRun r = run("chain-dist --blocks circulant-special:5 --l 3");
  EXPECT_EQ(r.status, 1);
  expect_envelope(r, "chain-dist");
  EXPECT_EQ(r.doc["error"]["code"], "block-not-special");
  EXPECT_EQ(r.doc["error"]["kind"], "precondition");
}

TEST(Cli, EverySubcommandEmitsOneDocument) {
  const std::string graph = (scratch() / "c12.txt").string();
  const CliRun gen = run("generate --gen cycle:12 --write '" + graph + "'");
  ASSERT_EQ(gen.status, 0) << gen.err;
  expect_envelope(gen, "generate");
  EXPECT_EQ(gen.doc["result"]["edges"].size(), 12u);
  EXPECT_EQ(gen.doc["result"]["labels"].size(), 12u);
  ASSERT_TRUE(fs::exists(graph));

  const CliRun classify = run("classify --graph '" + graph + "' --dist 0:4,6:2");
  ASSERT_EQ(classify.status, 0) << classify.err;
  expect_envelope(classify, "classify");
  for (const char* key : {"t_set", "h_set", "u_set", "u_components"}) {
    EXPECT_TRUE(classify.doc["result"]["classification"][key].is_array());
  }

  const CliRun construct = run("construct --graph '" + graph + "'");
  ASSERT_EQ(construct.status, 0) << construct.err;
  expect_envelope(construct, "construct");
  const auto& c = construct.doc["result"]["construction"];
  expect_distribution(c["distribution"]);
  EXPECT_TRUE(c["within_bound"].get<bool>());
  EXPECT_TRUE(c["steps"].is_array());
  for (const auto& step : c["steps"]) {
    EXPECT_TRUE(step["case"].is_string());
    EXPECT_TRUE(step["ratio"]["delta_t"].is_number_integer());
  }

  const CliRun chain = run("chain-pistar --blocks circulant:10,1,4,5 --l 2");
  ASSERT_EQ(chain.status, 0) << chain.err;
  expect_envelope(chain, "chain-pistar");
  EXPECT_EQ(chain.doc["result"]["solver"]["pi_star"], 6);
  EXPECT_EQ(chain.doc["result"]["chain"]["l"], 2);

  const CliRun collapse = run("collapse --blocks circulant:10,1,4,5 --l 2 --dist 2:3,17:3 --target 9 --cut");
  ASSERT_EQ(collapse.status, 0) << collapse.err;
  expect_envelope(collapse, "collapse");
  const auto& q = collapse.doc["result"];
  EXPECT_TRUE(q["quotient"]["quotient_condition"].get<bool>());
  EXPECT_EQ(q["quotient"]["target_order"], 6);
  expect_distribution(q["collapsed"]);
  EXPECT_TRUE(q["target"]["source_reachable"].is_boolean());
  EXPECT_TRUE(q["cut"].is_null());  // |D| = 6 >= 3l - 1

  const CliRun special = run("special-check --gen circulant-special:5");
  ASSERT_EQ(special.status, 0);
  expect_envelope(special, "special-check");
  EXPECT_FALSE(special.doc["result"]["special"]["is_special"].get<bool>());
  EXPECT_EQ(special.doc["result"]["dominating_edge"], Json({0, 3}));

  const CliRun witness = run("witness --family diameter2 --epsilon 1");
  ASSERT_EQ(witness.status, 0) << witness.err;
  expect_envelope(witness, "witness");
  EXPECT_EQ(witness.doc["result"]["witness"]["m"], 8);
  EXPECT_TRUE(witness.doc["result"]["witness"]["verified"].get<bool>());
  const CliRun chain_witness = run("witness --family chain --epsilon 1 --d 1");
  ASSERT_EQ(chain_witness.status, 0) << chain_witness.err;
  EXPECT_EQ(chain_witness.doc["result"]["witness"]["diameter"], 8);

  const CliRun girth = run(std::string("girth-exp --graph '") + PEBBLING_FIXTURE_DIR +
                        "/pg23_incidence.txt' --trials 30 --seed 5");
  ASSERT_EQ(girth.status, 0) << girth.err;
  expect_envelope(girth, "girth-exp");
  const auto& ge = girth.doc["result"]["girth_experiment"];
  EXPECT_EQ(ge["params"]["seed"], 5);
  EXPECT_EQ(ge["totals"].size(), 30u);
  EXPECT_EQ(ge["verified_trials"], 30);
}

TEST(Cli, IdenticalInvocationsAreByteIdentical) {
  for (const char* args : {"girth-exp --gen hypercube:4 --degree 4 --trials 25 --seed 77",
                           "construct --gen grid:4,5", "pistar --gen wheel:6 --threads 2",
                           "reach --gen chain:circulant:10,1,4,5,l=2 --dist 0:5,13:2 --target 19"}) {
    const CliRun a = run(args);
    const CliRun b = run(args);
    EXPECT_EQ(a.status, b.status) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, ErrorsAndExitCodes) {
  const CliRun unknown = run("pistar --gen bogus:1");
  EXPECT_EQ(unknown.status, 2);
  expect_envelope(unknown, "pistar");
  EXPECT_EQ(unknown.doc["error"]["code"], "unknown-generator");

  const CliRun missing = run("pistar --graph /nonexistent/file.txt");
  EXPECT_EQ(missing.status, 2);
  EXPECT_EQ(missing.doc["error"]["code"], "unreadable-file");

  const CliRun diameter = run("construct --gen complete:5");
  EXPECT_EQ(diameter.status, 1);
  EXPECT_EQ(diameter.doc["error"]["code"], "diameter-too-small");

  const CliRun no_dist = run("reach --gen path:3 --target 1");
  EXPECT_EQ(no_dist.status, 2);
  EXPECT_EQ(no_dist.doc["error"]["code"], "usage");

  const CliRun bad_flag = run("pistar --gen path:3 --no-such-flag");
  EXPECT_EQ(bad_flag.status, 2);
  EXPECT_EQ(bad_flag.err.rfind("error[usage]", 0), 0u);

  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("reach --gen path:3 --dist 0:4 --target 1 --k 16").status, 2);

  const CliRun budget = run("pistar --gen circulant:10,1,4,5 --budget 2");
  EXPECT_EQ(budget.status, 1);
  EXPECT_EQ(budget.doc["result"]["solver"]["status"], "exceeded-budget");
}

TEST(Cli, VerifyAllFailsLoudlyWithoutFixtures) {
  const CliRun r = run("verify-all --only 8 --fixtures /nonexistent/fixtures");
  EXPECT_EQ(r.status, 1);
  expect_envelope(r, "verify-all");
  const auto& c = r.doc["result"]["criteria"];
  ASSERT_EQ(c.size(), 1u);
  EXPECT_FALSE(c[0]["passed"].get<bool>());
  EXPECT_NE(c[0]["detail"].get<std::string>().find("fixture-missing"), std::string::npos);
}

TEST(Cli, VerifyAllSubset) {
  const CliRun r = run("verify-all --only 3 9 10");
  EXPECT_EQ(r.status, 0) << r.err;
  expect_envelope(r, "verify-all");
  for (const auto& c : r.doc["result"]["criteria"]) EXPECT_TRUE(c["passed"].get<bool>());
  EXPECT_NE(r.err.find("criterion 3 [PASS]"), std::string::npos);
}
