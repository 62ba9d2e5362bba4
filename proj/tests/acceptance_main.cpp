// Runs every acceptance criterion and prints one line per criterion.
#include <iostream>

#include "CLI11.hpp"
#include "pebbling/acceptance.hpp"

int main(int argc, char** argv) {
  namespace acc = pebbling::acceptance;
  CLI::App app{"acceptance checks"};
  std::string scale = "quick";
  acc::Options options;
  options.fixture_dir = PEBBLING_FIXTURE_DIR;
  bool strict = false;
  std::vector<int> only;
  app.add_option("--scale", scale, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--fixtures", options.fixture_dir, "directory holding the girth fixtures");
  app.add_option("--seed", options.seed);
  app.add_option("--threads", options.threads)->check(CLI::Range(1, 256));
  app.add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, 10));
  app.add_flag("--strict", strict, "count known deviations as failures");
  CLI11_PARSE(app, argc, argv);
  options.scale = acc::parse_scale(scale);

  const auto results = acc::run_all(options, [](const acc::Result& r) { std::cout << r.line() << std::endl; }, only);
  int passed = 0, deviations = 0;
  for (const auto& r : results) {
    if (r.passed) ++passed;
    else if (!r.known_deviation.empty()) ++deviations;
  }
  std::cout << "summary: " << passed << "/" << results.size() << " passed, " << deviations
            << " known deviations, " << results.size() - passed - deviations << " other failures" << std::endl;
  return acc::exit_status(results, strict);
}
