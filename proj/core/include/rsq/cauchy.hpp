#pragma once

// Four squares with a prescribed linear sum:
//   x1^2 + x2^2 + x3^2 + x4^2 = a,   x1 + x2 + x3 + x4 = b.
// Solvable iff a = b (mod 2), 4a - b^2 >= 0 and 4a - b^2 is not 4^k(8j+7).

#include <array>
#include <optional>
#include <string_view>

#include "rsq/arith.hpp"
#include "rsq/error.hpp"

namespace rsq {

struct CauchyInstance {
  i64 a = 0;
  i64 b = 0;
};

struct CauchyWitness {
  std::array<i64, 4> x{};

  bool solves(const CauchyInstance& inst) const;
};

/// Which solvability condition fails, checked in this order.
enum class CauchyCondition {
  Parity,                ///< a and b differ mod 2
  NegativeDiscriminant,  ///< 4a - b^2 < 0
  LegendreForm,          ///< 4a - b^2 = 4^k(8j+7)
};

std::string_view to_string(CauchyCondition c) noexcept;

class CauchyInfeasible : public Error {
 public:
  CauchyInfeasible(CauchyInstance inst, CauchyCondition reason);

  CauchyInstance instance() const noexcept { return inst_; }
  CauchyCondition reason() const noexcept { return reason_; }

 private:
  CauchyInstance inst_;
  CauchyCondition reason_;
};

/// nullopt when (a, b) is solvable.
std::optional<CauchyCondition> cauchy_violation(i64 a, i64 b);

bool cauchy_feasible(i64 a, i64 b);

/// Throws CauchyInfeasible when the instance has no solution.
CauchyWitness cauchy_solve(i64 a, i64 b);

}  // namespace rsq
