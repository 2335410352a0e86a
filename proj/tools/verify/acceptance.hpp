#pragma once

// The acceptance criteria, shared by the `verify` command and the
// acceptance test binary.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsq::verify {

enum class Suite { Basic, Full };

std::optional<Suite> parse_suite(std::string_view name);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  ///< measured values
};

inline constexpr int kCriteria = 9;

/// id in [1, kCriteria]. The basic suite runs every check at reduced scale.
CriterionResult run_criterion(int id, Suite suite, unsigned jobs = 1);

std::vector<CriterionResult> run_suite(Suite suite, unsigned jobs = 1);

/// "PASS  3  cauchy-feasibility  <detail>"
std::string format_result(const CriterionResult& r);

}  // namespace rsq::verify
