#include "rsq/residue_class.hpp"

#include <algorithm>
#include <limits>

#include "rsq/error.hpp"

namespace rsq {
namespace {

i64 checked(i128 v, const char* what) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min()) {
    throw Error(Errc::OutOfRange, std::string(what) + " exceeds the 64-bit range");
  }
  return static_cast<i64>(v);
}

Rational reduced(i128 num, i128 den) {
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return {checked(num, "effective bound"), checked(den, "effective bound")};
}

}  // namespace

ResidueClass make_class(i64 m, i64 d) {
  if (m < 1 || m > std::numeric_limits<std::int32_t>::max()) {
    throw Error(Errc::InvalidArgument, "modulus must lie in [1, 2^31)");
  }
  if (gcd(m, d) != 1) {
    throw Error(Errc::NotCoprime,
                "gcd(" + std::to_string(m) + ", " + std::to_string(d) + ") != 1");
  }
  ResidueClass cls;
  cls.m = m;
  cls.d = floor_mod(d, m);
  if (cls.d == 0) cls.d = m;
  cls.M = (m % 2 == 1) ? 1 : (m % 4 == 2 ? 4 : 2);
  return cls;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string Rational::to_decimal() const {
  std::string out = std::to_string(floor_div(num, den));
  i64 frac = floor_mod(num, den);
  if (frac == 0) return out;
  out += '.';
  for (int i = 0; frac != 0 && i < 32; ++i) {
    frac *= 10;
    out += static_cast<char>('0' + frac / den);
    frac %= den;
  }
  return out;
}

bool at_least(i64 n, const Rational& q) {
  return static_cast<i128>(n) * q.den >= static_cast<i128>(q.num);
}

void canonicalize(SquareRepresentation& rep) {
  std::sort(rep.terms.begin(), rep.terms.end(), [](i64 a, i64 b) {
    const i64 aa = a < 0 ? -a : a;
    const i64 bb = b < 0 ? -b : b;
    if (aa != bb) return aa > bb;
    return a > b;
  });
}

i64 asu_value(const ResidueClass& cls) {
  const i64 m = cls.m;
  if (m % 2 == 1) return m + 3;
  if (m % 4 == 2) return 4 * m + 2;
  if (m % 3 != 0) return 2 * m + 2;
  return 2 * m + 3;
}

bool su_exists(const ResidueClass& cls) {
  return floor_mod(cls.d - 1, cls.m) == 0 || floor_mod(cls.d + 1, cls.m) == 0;
}

i64 su_value(const ResidueClass& cls) {
  if (!su_exists(cls)) {
    throw Error(Errc::NoSU, "A_{" + std::to_string(cls.d) + "," + std::to_string(cls.m) +
                                "} is not square universal (d is not +-1 mod m)");
  }
  switch (cls.m) {
    case 1: return 4;  // Lagrange
    case 2:
    case 4: return 10;
    case 3: return 6;
    case 5: return 16;
    case 6: return 26;
    default: return cls.m * cls.m - 2 * cls.m;
  }
}

Rational effective_bound(const ResidueClass& cls) {
  const i128 m4 = static_cast<i128>(cls.m) * cls.m * cls.m * cls.m;
  const i128 md2 = static_cast<i128>(cls.M) * cls.d * cls.d;
  if (cls.m % 2 == 1) return reduced(25 * m4 + 4 * md2, 4);
  if (cls.m % 4 == 2) return reduced(m4 + 16 * md2, 16);
  return reduced(m4 + 4 * md2, 4);
}

ThresholdProfile threshold_profile(const ResidueClass& cls) {
  ThresholdProfile p;
  p.cls = cls;
  p.asu = asu_value(cls);
  if (su_exists(cls)) p.su = su_value(cls);
  p.effective_bound = effective_bound(cls);
  return p;
}

ResidueConstraints residue_constraints(i64 n, const ResidueClass& cls) {
  if (n < 1) throw Error(Errc::InvalidArgument, "residue_constraints requires n >= 1");
  const i64 m = cls.m;
  const i64 d2 = static_cast<i64>(static_cast<i128>(cls.d) * cls.d % m);
  ResidueConstraints rc;
  rc.r0 = static_cast<i64>(static_cast<i128>(floor_mod(n, m)) * mod_inverse(d2, m) % m);
  rc.t = checked((static_cast<i128>(n) - static_cast<i128>(rc.r0) * cls.d * cls.d) / m, "t");
  rc.modulus = m * cls.M;
  rc.residue = floor_mod(rc.r0 + m * floor_mod(rc.t, cls.M), rc.modulus);
  return rc;
}

bool verify_representation(const SquareRepresentation& rep, const ResidueClass& cls) {
  if (rep.terms.empty() || rep.n < 1) return false;
  i128 sum = 0;
  i64 prev_abs = std::numeric_limits<i64>::max();
  for (i64 y : rep.terms) {
    if (!cls.contains(y)) return false;
    const i64 a = y < 0 ? -y : y;
    if (a > prev_abs) return false;
    prev_abs = a;
    sum += static_cast<i128>(y) * y;
    if (sum > rep.n) return false;
  }
  return sum == rep.n;
}

}  // namespace rsq
