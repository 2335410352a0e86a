#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rsq/arith.hpp"

namespace rsq {

/// The residue class A_{d,m} = { y : y = d (mod m) } with gcd(m, d) = 1.
/// d is stored reduced into [1, m]. M governs the congruence on term counts:
/// 1 for odd m, 4 for m = 2 (mod 4), 2 for m = 0 (mod 4).
struct ResidueClass {
  i64 m = 1;
  i64 d = 1;
  i64 M = 1;

  bool contains(i64 y) const { return floor_mod(y - d, m) == 0; }

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// Throws Error(NotCoprime) when gcd(m, d) != 1 and Error(InvalidArgument)
/// for m < 1 or m >= 2^31.
ResidueClass make_class(i64 m, i64 d);

/// Exact non-negative rational num/den in lowest terms.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  /// Smallest integer >= this value.
  i64 ceil() const { return floor_div(num + den - 1, den); }
  std::string to_string() const;
  /// Terminating decimal expansion; den must divide a power of 10.
  std::string to_decimal() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// n >= q, compared without floating point.
bool at_least(i64 n, const Rational& q);

/// n = sum of terms[i]^2 with every term in the owning class. Canonical
/// order is by descending absolute value, ties broken by descending value.
struct SquareRepresentation {
  i64 n = 0;
  std::vector<i64> terms;

  std::size_t count() const { return terms.size(); }
};

void canonicalize(SquareRepresentation& rep);

struct ThresholdProfile {
  ResidueClass cls;
  i64 asu = 0;
  std::optional<i64> su;
  Rational effective_bound;
};

i64 asu_value(const ResidueClass& cls);
bool su_exists(const ResidueClass& cls);
/// Throws Error(NoSU) unless d = +-1 (mod m).
i64 su_value(const ResidueClass& cls);
Rational effective_bound(const ResidueClass& cls);
ThresholdProfile threshold_profile(const ResidueClass& cls);

/// Decomposition n = m*t + r0*d^2 with 0 <= r0 < m. A representation with r
/// terms exists only if r = r0 (mod m) and (r - r0)/m = t (mod M); together
/// that is r = residue (mod modulus) with modulus = m*M.
struct ResidueConstraints {
  i64 r0 = 0;
  i64 t = 0;
  i64 modulus = 1;
  i64 residue = 0;

  bool admits(i64 r) const { return floor_mod(r - residue, modulus) == 0; }
  /// Smallest admissible r >= lo.
  i64 smallest_at_least(i64 lo) const { return lo + floor_mod(residue - lo, modulus); }
};

ResidueConstraints residue_constraints(i64 n, const ResidueClass& cls);

/// True iff rep is non-empty, canonical, every term lies in cls and the
/// squares sum to rep.n exactly.
bool verify_representation(const SquareRepresentation& rep, const ResidueClass& cls);

}  // namespace rsq
