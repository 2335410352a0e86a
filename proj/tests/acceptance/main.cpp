// Prints one PASS/FAIL line per acceptance criterion.
//   acceptance [--suite basic|full] [--criterion N] [--jobs J]

#include <iostream>

#include "CLI11.hpp"
#include "acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string suite_name = "full";
  int criterion = 0;
  unsigned jobs = 1;
  app.add_option("--suite", suite_name)->check(CLI::IsMember({"basic", "full"}));
  app.add_option("--criterion", criterion)->check(CLI::Range(1, rsq::verify::kCriteria));
  app.add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const auto suite = *rsq::verify::parse_suite(suite_name);
  int failed = 0;
  for (int id = 1; id <= rsq::verify::kCriteria; ++id) {
    if (criterion != 0 && id != criterion) continue;
    rsq::verify::CriterionResult r;
    try {
      r = rsq::verify::run_criterion(id, suite, jobs);
    } catch (const std::exception& e) {
      r = {id, "criterion-" + std::to_string(id), false, std::string("error: ") + e.what()};
    }
    std::cout << rsq::verify::format_result(r) << '\n';
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
