#include "rsq/constructions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "rsq/cauchy.hpp"
#include "rsq/error.hpp"

namespace rsq {
namespace {

constexpr i64 kPaddedWalk = 24;

i64 to_i64(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min()) {
    throw Error(Errc::OutOfRange, "intermediate value exceeds the 64-bit range");
  }
  return static_cast<i64>(v);
}

// Integer solutions (a, b) of m*a + 2d*b = target with 4a - b^2 >= 0,
// indexed by k in ascending order of b starting from the first b inside the
// interval. Consecutive solutions differ by m/g in b, g = gcd(m, 2d).
class SolutionWalk {
 public:
  SolutionWalk(i128 target, i64 m, i64 d) : target_(target), m_(m), d_(d) {
    const i64 g = gcd(m, 2 * d);
    if (target % g != 0) return;
    step_ = m / g;
    const i64 c = (2 * d) / g;
    const i64 tp = static_cast<i64>(((target / g) % step_ + step_) % step_);
    const i64 residue =
        step_ == 1 ? 0 : static_cast<i64>(static_cast<i128>(tp) * mod_inverse(c, step_) % step_);

    const i128 disc = 4 * static_cast<i128>(d) * d + static_cast<i128>(m) * target;
    if (disc < 0) return;
    const long double root = std::sqrt(static_cast<long double>(disc));
    const long double lower = (-4.0L * d - 2.0L * root) / m;
    const auto approx = static_cast<i64>(std::floor(lower));
    i64 b = residue + step_ * floor_div(approx - residue, step_) - 2 * step_;
    for (int guard = 0; inside(b); ++guard) {
      if (guard > 1000) throw Error(Errc::ConstructionFailed, "solution walk failed to bracket");
      b -= step_;
    }
    // The interval is centred at -4d/m; give up once b passes it.
    const long double centre = -4.0L * d / m;
    while (!inside(b)) {
      if (static_cast<long double>(b) > centre + step_) return;
      b += step_;
    }
    first_b_ = b;
    valid_ = true;
  }

  /// (a_k, b_k), or nullopt once b_k leaves the interval.
  std::optional<std::pair<i64, i64>> at(i64 k) const {
    if (!valid_) return std::nullopt;
    const i64 b = first_b_ + k * step_;
    if (!inside(b)) return std::nullopt;
    return std::make_pair(to_i64((target_ - 2 * static_cast<i128>(d_) * b) / m_), b);
  }

 private:
  // m * (4a - b^2) = 4 target - 8 d b - m b^2.
  bool inside(i64 b) const {
    const i128 bb = b;
    return 4 * target_ - 8 * static_cast<i128>(d_) * bb - static_cast<i128>(m_) * bb * bb >= 0;
  }

  i128 target_;
  i64 m_;
  i64 d_;
  i64 step_ = 1;
  i64 first_b_ = 0;
  bool valid_ = false;
};

i128 tilde_t(const ResidueConstraints& rc, const ResidueClass& cls, i64 r) {
  return static_cast<i128>(rc.t) - static_cast<i128>((r - rc.r0) / cls.m) * cls.d * cls.d;
}

// Terms m*x + d for x = (x1..x4, +1 * plus, -1 * minus, 0 ...), r in total.
SquareRepresentation build(i64 n, const ResidueClass& cls, i64 r, const CauchyWitness& w,
                           i64 plus, i64 minus) {
  SquareRepresentation rep{n, {}};
  rep.terms.reserve(static_cast<std::size_t>(r));
  for (i64 x : w.x) rep.terms.push_back(to_i64(static_cast<i128>(cls.m) * x + cls.d));
  for (i64 i = 0; i < plus; ++i) rep.terms.push_back(cls.m + cls.d);
  for (i64 i = 0; i < minus; ++i) rep.terms.push_back(cls.d - cls.m);
  while (static_cast<i64>(rep.terms.size()) < r) rep.terms.push_back(cls.d);
  canonicalize(rep);
  if (!verify_representation(rep, cls)) {
    throw Error(Errc::ConstructionFailed, "assembled representation of " + std::to_string(n) +
                                              " does not verify");
  }
  return rep;
}

std::optional<Construction> padded_at(i64 n, const ResidueClass& cls, const ResidueConstraints& rc,
                                      i64 r, i64 walk_limit = kPaddedWalk) {
  const i128 t = tilde_t(rc, cls, r);
  for (i64 total = 0; total <= r - 4; ++total) {
    for (i64 plus = 0; plus <= total; ++plus) {
      const i64 minus = total - plus;
      const i128 target = t - static_cast<i128>(plus) * (cls.m + 2 * cls.d) -
                          static_cast<i128>(minus) * (cls.m - 2 * cls.d);
      SolutionWalk walk(target, cls.m, cls.d);
      for (i64 k = 0; k < walk_limit; ++k) {
        const auto ab = walk.at(k);
        if (!ab) break;
        if (!cauchy_feasible(ab->first, ab->second)) continue;
        const CauchyWitness w = cauchy_solve(ab->first, ab->second);
        return Construction{build(n, cls, r, w, plus, minus), ConstructionRoute::PaddedCauchy, r, 0};
      }
    }
  }
  return std::nullopt;
}

SquareRepresentation negated(SquareRepresentation rep) {
  for (i64& y : rep.terms) y = -y;
  canonicalize(rep);
  return rep;
}

i64 small_range_end(i64 m) { return 2 * m * (m - 1) * (m - 1); }

Construction lagrange(i64 n) {
  SquareRepresentation rep{n, {}};
  i64 rest = n;
  if (!is_three_square_representable(n)) {
    const Pow4Normalization p = pow4_normalize(n);
    const i64 lead = i64{1} << p.alpha;
    rep.terms.push_back(lead);
    rest = n - lead * lead;
  }
  const ThreeSquareDecomposition t = decompose_three_squares(rest);
  for (i64 v : {t.x, t.y, t.z}) {
    if (v != 0) rep.terms.push_back(v);
  }
  canonicalize(rep);
  return {rep, ConstructionRoute::Lagrange, static_cast<i64>(rep.count()), 0};
}

}  // namespace

std::string_view to_string(ConstructionRoute route) noexcept {
  switch (route) {
    case ConstructionRoute::CauchyWindow: return "cauchy-window";
    case ConstructionRoute::SetS: return "set-s";
    case ConstructionRoute::PaddedCauchy: return "padded-cauchy";
    case ConstructionRoute::SmallFamilies: return "small-families";
    case ConstructionRoute::ThreeTerm: return "three-term";
    case ConstructionRoute::Lagrange: return "lagrange";
    case ConstructionRoute::Oracle: return "oracle";
  }
  return "unknown";
}

i64 asu_claimed_window(const ResidueClass& cls) { return cls.m % 2 == 1 ? 9 : cls.M - 1; }

Construction construct_asu(i64 n, const ResidueClass& cls) {
  const Rational bound = effective_bound(cls);
  if (n < 1 || !at_least(n, bound)) {
    throw Error(Errc::BelowBound, std::to_string(n) + " is below the effective bound " + bound.to_decimal());
  }
  const ResidueConstraints rc = residue_constraints(n, cls);
  const i64 r = rc.smallest_at_least(4);

  SolutionWalk walk(tilde_t(rc, cls, r), cls.m, cls.d);
  const i64 window = 2 * (asu_claimed_window(cls) + 1);
  for (i64 k = 0; k < window; ++k) {
    const auto ab = walk.at(k);
    if (!ab) break;
    if (!cauchy_feasible(ab->first, ab->second)) continue;
    const CauchyWitness w = cauchy_solve(ab->first, ab->second);
    return {build(n, cls, r, w, 0, 0), ConstructionRoute::CauchyWindow, r, k};
  }
  if (auto padded = padded_at(n, cls, rc, r)) return *padded;
  // The walk is finite (4a >= b^2); exhaust it before giving up on r terms.
  for (i64 k = window;; ++k) {
    const auto ab = walk.at(k);
    if (!ab) break;
    if (!cauchy_feasible(ab->first, ab->second)) continue;
    return {build(n, cls, r, cauchy_solve(ab->first, ab->second), 0, 0), ConstructionRoute::CauchyWindow, r, k};
  }
  throw Error(Errc::ConstructionFailed, "no representation of " + std::to_string(n) + " with " +
                                            std::to_string(r) + " terms for class (" +
                                            std::to_string(cls.m) + ", " + std::to_string(cls.d) + ")");
}

SquareRepresentation decompose_asu(i64 n, const ResidueClass& cls) { return construct_asu(n, cls).rep; }

std::optional<Construction> padded_cauchy_search(i64 n, const ResidueClass& cls, i64 r_max,
                                                 i64 walk_limit) {
  const ResidueConstraints rc = residue_constraints(n, cls);
  for (i64 r = rc.smallest_at_least(4); r <= r_max; r += rc.modulus) {
    if (auto c = padded_at(n, cls, rc, r, walk_limit)) return c;
  }
  return std::nullopt;
}

SquareRepresentation decompose_small(i64 n, const ResidueClass& cls) {
  const i64 m = cls.m;
  if (m < 8 || !su_exists(cls) || n < 1 || n > small_range_end(m)) {
    throw Error(Errc::OutOfRange, "decompose_small needs m >= 8, d = +-1 (mod m), 1 <= n <= 2m(m-1)^2");
  }
  const i64 low = (m - 1) * (m - 1);
  const i64 high = (m + 1) * (m + 1);
  const i64 cap = m * m - 2 * m;

  // Built for d = 1: terms 1 - m, 1 and m + 1.
  auto make = [&](i64 highs, i64 lows, i64 ones) {
    SquareRepresentation rep{n, {}};
    rep.terms.insert(rep.terms.end(), static_cast<std::size_t>(highs), m + 1);
    rep.terms.insert(rep.terms.end(), static_cast<std::size_t>(lows), 1 - m);
    rep.terms.insert(rep.terms.end(), static_cast<std::size_t>(ones), 1);
    canonicalize(rep);
    return cls.d == 1 ? rep : negated(std::move(rep));
  };

  for (i64 k = std::min(n / low, 2 * m - 1); k >= 0; --k) {
    const i64 ones = n - k * low;
    if (k + ones <= cap) return make(0, k, ones);
  }
  for (i64 k = 1; k <= 2 * m - 1; ++k) {
    const i64 ones = n - high - (k - 1) * low;
    if (ones >= 0 && k + ones <= cap) return make(1, k - 1, ones);
  }
  throw Error(Errc::ConstructionFailed, "no small-family representation of " + std::to_string(n));
}

Construction construct_effective(i64 n, const ResidueClass& cls) {
  const i64 m = cls.m;
  if (m < 6 || !su_exists(cls) || n < small_range_end(m)) {
    throw Error(Errc::OutOfRange, "decompose_effective needs m >= 6, d = +-1 (mod m), n >= 2m(m-1)^2");
  }
  const ResidueClass one = make_class(m, 1);
  const ResidueConstraints rc = residue_constraints(n, one);
  const i64 e = m % 2 == 1 ? 1 : 2;
  const i64 me = m / e;

  // Elements of S with their padding: s = sum over positions of (m x^2 + 2x)/e.
  struct Entry {
    i64 s;
    i64 plus;
    i64 minus;
  };
  std::vector<Entry> set_s;
  if (e == 1) {
    for (i64 k = 0; k < m; ++k) set_s.push_back({k * (m + 2), k, 0});
    for (i64 k = 1; k <= m; ++k) set_s.push_back({k * (m - 2), 0, k});
  } else {
    for (i64 k = 0; k < m; ++k) set_s.push_back({k * (m / 2 + 1), k, 0});
  }
  std::sort(set_s.begin(), set_s.end(), [](const Entry& a, const Entry& b) {
    return a.s != b.s ? a.s < b.s : a.plus + a.minus < b.plus + b.minus;
  });

  auto finish = [&](Construction c) {
    if (cls.d != 1) c.rep = negated(std::move(c.rep));
    return c;
  };

  const i64 asu_cap = cls.M * m + 3;
  const i64 r_limit = (cls.M + 1) * m + 3;
  for (i64 r = rc.smallest_at_least(4); r <= r_limit; r += rc.modulus) {
    const i128 t = tilde_t(rc, one, r);
    if (t % e == 0) {
      for (const Entry& entry : set_s) {
        if (entry.plus + entry.minus > r - 4) continue;
        const i128 v = t / e - 2 / e - entry.s;
        if (v % me != 0) continue;
        const i128 a = v / me;
        if (a <= 0 || a % 2 == 0) continue;
        const CauchyWitness w = cauchy_solve(to_i64(a), 1);
        return finish({build(n, one, r, w, entry.plus, entry.minus), ConstructionRoute::SetS, r, entry.s});
      }
    }
    if (r <= asu_cap) {
      if (auto padded = padded_at(n, one, rc, r)) return finish(*padded);
    }
  }
  throw Error(Errc::NoAdmissibleS, "no admissible s for n = " + std::to_string(n));
}

SquareRepresentation decompose_effective(i64 n, const ResidueClass& cls) {
  return construct_effective(n, cls).rep;
}

std::optional<SquareRepresentation> find_three_term(i64 n, const ResidueClass& cls, i64 max_triples) {
  if (n < 1) return std::nullopt;
  const i128 three_d2 = 3 * static_cast<i128>(cls.d) * cls.d;
  if ((static_cast<i128>(n) - three_d2) % cls.m != 0) return std::nullopt;
  if (!is_three_square_representable(n)) return std::nullopt;
  ThreeSquareEnumerator triples(n);
  for (i64 seen = 0; seen < max_triples; ++seen) {
    const auto t = triples.next();
    if (!t) break;
    SquareRepresentation rep{n, {}};
    for (i64 c : {t->x, t->y, t->z}) {
      if (cls.contains(c)) {
        rep.terms.push_back(c);
      } else if (cls.contains(-c)) {
        rep.terms.push_back(-c);
      } else {
        break;
      }
    }
    if (rep.terms.size() == 3) {
      canonicalize(rep);
      return rep;
    }
  }
  return std::nullopt;
}

Construction construct_su(i64 n, const ResidueClass& cls, OracleLimits limits) {
  const i64 su = su_value(cls);
  if (n < 1) throw Error(Errc::InvalidArgument, "decompose_su requires n >= 1");
  const i64 m = cls.m;

  Construction out;
  if (m == 1) {
    out = lagrange(n);
  } else if (m >= 8) {
    if (n <= small_range_end(m)) {
      SquareRepresentation rep = decompose_small(n, cls);
      const auto r = static_cast<i64>(rep.count());
      out = {std::move(rep), ConstructionRoute::SmallFamilies, r, 0};
    } else {
      out = construct_effective(n, cls);
    }
  } else if (!at_least(n, effective_bound(cls))) {
    const MinSquaresTable table(n, cls, static_cast<int>(su), limits);
    auto rep = table.representation(n);
    if (!rep) throw Error(Errc::ConstructionFailed, std::to_string(n) + " needs more than SU terms");
    const auto r = static_cast<i64>(rep->count());
    out = {std::move(*rep), ConstructionRoute::Oracle, r, 0};
  } else {
    const i64 r = residue_constraints(n, cls).smallest_at_least(4);
    std::optional<Construction> found;
    if (r > su) {
      // r = Mm+3 exceeds SU only for m in {2, 4, 6}, where three terms suffice.
      if (auto three = find_three_term(n, cls)) found = Construction{*three, ConstructionRoute::ThreeTerm, 3, 0};
    } else {
      try {
        found = construct_asu(n, cls);
      } catch (const Error& err) {
        if (err.code() != Errc::ConstructionFailed) throw;
      }
    }
    if (!found) found = padded_cauchy_search(n, cls, su);
    if (!found) found = padded_cauchy_search(n, cls, su, std::numeric_limits<i64>::max());
    if (!found) throw Error(Errc::ConstructionFailed, "no representation of " + std::to_string(n) + " within SU terms");
    out = std::move(*found);
  }

  if (static_cast<i64>(out.rep.count()) > su || !verify_representation(out.rep, cls)) {
    throw Error(Errc::ConstructionFailed, "SU construction for " + std::to_string(n) + " exceeded its cap");
  }
  return out;
}

SquareRepresentation decompose_su(i64 n, const ResidueClass& cls, OracleLimits limits) {
  return construct_su(n, cls, limits).rep;
}

}  // namespace rsq
