#include "rsq/cauchy.hpp"

#include <limits>
#include <string>

namespace rsq {
namespace {

i128 discriminant(i64 a, i64 b) { return 4 * static_cast<i128>(a) - static_cast<i128>(b) * b; }

std::string describe(CauchyInstance inst, CauchyCondition reason) {
  return "cauchy(" + std::to_string(inst.a) + ", " + std::to_string(inst.b) +
         ") infeasible: " + std::string(to_string(reason));
}

}  // namespace

std::string_view to_string(CauchyCondition c) noexcept {
  switch (c) {
    case CauchyCondition::Parity: return "parity";
    case CauchyCondition::NegativeDiscriminant: return "negative-discriminant";
    case CauchyCondition::LegendreForm: return "legendre-form";
  }
  return "unknown";
}

CauchyInfeasible::CauchyInfeasible(CauchyInstance inst, CauchyCondition reason)
    : Error(Errc::Infeasible, describe(inst, reason)), inst_(inst), reason_(reason) {}

bool CauchyWitness::solves(const CauchyInstance& inst) const {
  i128 sq = 0;
  i128 sum = 0;
  for (i64 v : x) {
    sq += static_cast<i128>(v) * v;
    sum += v;
  }
  return sq == inst.a && sum == inst.b;
}

std::optional<CauchyCondition> cauchy_violation(i64 a, i64 b) {
  if (floor_mod(a, 2) != floor_mod(b, 2)) return CauchyCondition::Parity;
  const i128 disc = discriminant(a, b);
  if (disc < 0) return CauchyCondition::NegativeDiscriminant;
  if (disc > std::numeric_limits<i64>::max()) {
    throw Error(Errc::OutOfRange, "4a - b^2 exceeds the 64-bit range");
  }
  if (!is_three_square_representable(static_cast<i64>(disc))) return CauchyCondition::LegendreForm;
  return std::nullopt;
}

bool cauchy_feasible(i64 a, i64 b) { return !cauchy_violation(a, b).has_value(); }

CauchyWitness cauchy_solve(i64 a, i64 b) {
  const CauchyInstance inst{a, b};
  if (auto bad = cauchy_violation(a, b)) throw CauchyInfeasible(inst, *bad);

  const auto disc = static_cast<i64>(discriminant(a, b));
  if (disc == 0) {
    // 4a = b^2 forces b = 4c and a = 4c^2; x_i = c.
    const i64 c = b / 4;
    CauchyWitness w{{c, c, c, c}};
    if (!w.solves(inst)) throw Error(Errc::ConstructionFailed, "degenerate branch produced a non-solution");
    return w;
  }

  // Write 4a - b^2 = s1^2 + s2^2 + s3^2 with s_i = b (mod 2); then
  // x = (b + e.s, b + e1 s1 - e2 s2 - e3 s3, ...) / 4 for a sign vector e
  // making every numerator divisible by 4.
  const i64 bpar = floor_mod(b, 2);
  ThreeSquareEnumerator triples(disc);
  while (auto t = triples.next()) {
    const std::array<i64, 3> s{t->x, t->y, t->z};
    if (floor_mod(s[0], 2) != bpar || floor_mod(s[1], 2) != bpar || floor_mod(s[2], 2) != bpar) continue;
    for (int mask = 0; mask < 8; ++mask) {
      const i64 e1 = (mask & 1) ? -s[0] : s[0];
      const i64 e2 = (mask & 2) ? -s[1] : s[1];
      const i64 e3 = (mask & 4) ? -s[2] : s[2];
      const std::array<i128, 4> num{
          static_cast<i128>(b) + e1 + e2 + e3,
          static_cast<i128>(b) + e1 - e2 - e3,
          static_cast<i128>(b) - e1 + e2 - e3,
          static_cast<i128>(b) - e1 - e2 + e3,
      };
      bool ok = true;
      for (i128 v : num) ok = ok && (v % 4 == 0);
      if (!ok) continue;
      CauchyWitness w;
      for (std::size_t i = 0; i < 4; ++i) w.x[i] = static_cast<i64>(num[i] / 4);
      if (w.solves(inst)) return w;
    }
  }
  throw Error(Errc::ConstructionFailed, "no compatible three-square decomposition of 4a - b^2");
}

}  // namespace rsq
