// Acceptance suite: one PASS/FAIL line per criterion on stdout, timings on
// stderr. Exit status is nonzero when any selected criterion fails.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mlcr/acceptance.hpp"

int main(int argc, char** argv) {
  mlcr::acceptance::Options o;
  CLI::App app{"acceptance criteria"};
  app.add_option("--only", o.only, "criterion ids or names")->delimiter(',');
  app.add_option("--seed", o.seed, "corpus seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const auto results = mlcr::acceptance::run(o, &std::cerr);
  if (results.empty()) {
    std::cerr << "no criterion matches --only\n";
    return 2;
  }
  std::cout << mlcr::acceptance::format_report(results, o.seed);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}
