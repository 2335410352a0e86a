#include <algorithm>

#include "doctest.h"
#include "rsq/constructions.hpp"
#include "rsq/error.hpp"
#include "rsq/oracle.hpp"
#include "sample_stream.hpp"

using namespace rsq;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

bool congruences_hold(const SquareRepresentation& rep, const ResidueClass& c) {
  const ResidueConstraints rc = residue_constraints(rep.n, c);
  return rc.admits(static_cast<i64>(rep.count()));
}

}  // namespace

TEST_CASE("make_class") {
  const ResidueClass a = make_class(5, -4);
  CHECK(a.m == 5);
  CHECK(a.d == 1);
  CHECK(a.M == 1);
  CHECK(code_of([] { make_class(6, 3); }) == Errc::NotCoprime);
  CHECK(make_class(8, 3).M == 2);
  CHECK(make_class(6, 1).M == 4);
  CHECK(make_class(1, 0).d == 1);
  CHECK(code_of([] { make_class(0, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("threshold values") {
  CHECK(asu_value(make_class(5, 1)) == 8);
  CHECK(asu_value(make_class(6, 1)) == 26);
  CHECK(asu_value(make_class(12, 5)) == 27);
  CHECK_FALSE(su_exists(make_class(5, 2)));
  CHECK(su_exists(make_class(7, 6)));
  CHECK(su_exists(make_class(1, 1)));
  CHECK(su_value(make_class(5, 1)) == 16);
  CHECK(su_value(make_class(7, 1)) == 35);
  CHECK(su_value(make_class(1, 1)) == 4);
  CHECK(su_value(make_class(4, 3)) == 10);
  CHECK(code_of([] { su_value(make_class(5, 2)); }) == Errc::NoSU);

  CHECK(effective_bound(make_class(5, 1)) == Rational{15629, 4});
  CHECK(effective_bound(make_class(5, 1)).to_decimal() == "3907.25");
  CHECK(effective_bound(make_class(6, 1)) == Rational{85, 1});
  CHECK(effective_bound(make_class(8, 1)) == Rational{1026, 1});
  CHECK(at_least(3908, effective_bound(make_class(5, 1))));
  CHECK_FALSE(at_least(3907, effective_bound(make_class(5, 1))));
  CHECK(effective_bound(make_class(5, 1)).ceil() == 3908);

  const ThresholdProfile p = threshold_profile(make_class(5, 2));
  CHECK(p.asu == 8);
  CHECK_FALSE(p.su.has_value());
}

TEST_CASE("residue constraints") {
  const ResidueConstraints a = residue_constraints(31, make_class(5, 1));
  CHECK(a.r0 == 1);
  CHECK(a.t == 6);
  CHECK(a.admits(16));
  CHECK_FALSE(a.admits(15));

  const ResidueConstraints b = residue_constraints(3, make_class(2, 1));
  CHECK(b.r0 == 1);
  CHECK(b.t == 1);
  CHECK(b.modulus == 8);
  CHECK(b.admits(3));
  CHECK_FALSE(b.admits(1));
  CHECK(b.smallest_at_least(4) == 11);

  const ResidueClass c = make_class(9, 4);
  const ResidueConstraints sq = residue_constraints(16, c);
  CHECK(sq.r0 == 1);
  CHECK(sq.t == 0);
}

TEST_CASE("verify_representation") {
  const ResidueClass z = make_class(1, 1);
  CHECK(verify_representation({2, {1, 1}}, z));
  CHECK_FALSE(verify_representation({2, {1, 2}}, z));
  CHECK_FALSE(verify_representation({49, {7}}, make_class(8, 1)));
  CHECK(verify_representation({49, {-7}}, make_class(8, 1)));
  CHECK_FALSE(verify_representation({2, {}}, z));
  CHECK_FALSE(verify_representation({5, {1, 2}}, z));  // not canonical
  SquareRepresentation rep{5, {1, 2}};
  canonicalize(rep);
  CHECK(rep.terms == std::vector<i64>{2, 1});
}

TEST_CASE("oracle examples") {
  CHECK(min_squares_oracle(31, make_class(5, 1), 31) == 16);
  CHECK(min_squares_oracle(35, make_class(7, 1), 35) == 35);
  CHECK(min_squares_oracle(1, make_class(5, 1), 4) == 1);
  CHECK_FALSE(min_squares_oracle(31, make_class(5, 1), 15).has_value());
  CHECK_FALSE(min_squares_oracle(2, make_class(5, 2), 10).has_value());
  CHECK(code_of([] { MinSquaresTable(OracleLimits::kMaxTarget + 1, make_class(5, 1), 4); }) == Errc::ResourceLimit);
  OracleLimits tight;
  tight.max_bytes = 1024;
  CHECK(code_of([&] { MinSquaresTable(10'000, make_class(5, 1), 4, tight); }) == Errc::ResourceLimit);
}

TEST_CASE("oracle agrees with exhaustive search and sign symmetry") {
  for (auto [m, d] : {std::pair{5, 1}, {6, 1}, {8, 3}, {7, 2}}) {
    const ResidueClass c = make_class(m, d);
    const ResidueClass flipped = make_class(m, m - d);
    const MinSquaresTable t(400, c, 64);
    const MinSquaresTable u(400, flipped, 64);
    // Breadth-first over term counts.
    std::vector<int> best(401, -1);
    best[0] = 0;
    std::vector<i64> squares;
    for (i64 y = -20; y <= 20; ++y)
      if (c.contains(y) && y * y <= 400) squares.push_back(y * y);
    for (int k = 1; k <= 64; ++k)
      for (i64 v = 400; v >= 0; --v)
        if (best[v] == k - 1)
          for (i64 q : squares)
            if (v + q <= 400 && best[v + q] < 0) best[v + q] = k;
    for (i64 n = 1; n <= 400; ++n) {
      const auto got = t.min_terms(n);
      CHECK(got.value_or(-1) == best[n]);
      CHECK(u.min_terms(n) == got);
      if (const auto rep = t.representation(n)) {
        CHECK(verify_representation(*rep, c));
        CHECK(static_cast<int>(rep->count()) == *got);
      }
    }
  }
}

TEST_CASE("SU oracle consistency for small m") {
  for (i64 m = 2; m <= 8; ++m) {
    for (i64 d : {i64{1}, m - 1}) {
      const ResidueClass c = make_class(m, d);
      const i64 top = std::max<i64>(2 * m * (m - 1) * (m - 1), 200);
      const MinSquaresTable t(top, c, static_cast<int>(su_value(c)));
      int worst = 0;
      for (i64 n = 1; n <= top; ++n) {
        REQUIRE(t.min_terms(n).has_value());
        worst = std::max(worst, *t.min_terms(n));
      }
      if (m >= 5) CHECK(worst == su_value(c));
    }
  }
}

TEST_CASE("decompose_asu") {
  const ResidueClass five = make_class(5, 1);
  const Construction a = construct_asu(3908, five);
  CHECK(verify_representation(a.rep, five));
  CHECK(a.rep.count() <= 8);
  const SquareRepresentation b = decompose_asu(1026, make_class(8, 1));
  CHECK(verify_representation(b, make_class(8, 1)));
  CHECK(b.count() <= 19);
  CHECK(code_of([&] { decompose_asu(1, five); }) == Errc::BelowBound);
  CHECK(code_of([&] { decompose_asu(3907, five); }) == Errc::BelowBound);
}

TEST_CASE("decompose_asu stays within Mm+3 and the congruences on seeded samples") {
  testing::SampleStream rng(17);
  for (int i = 0; i < 3000; ++i) {
    const i64 m = rng.uniform(1, 30);
    i64 d = rng.uniform(1, m);
    while (gcd(m, d) != 1) d = rng.uniform(1, m);
    const ResidueClass c = make_class(m, d);
    const i64 n = effective_bound(c).ceil() + rng.uniform(0, i64{1} << rng.uniform(10, 50));
    try {
      const Construction k = construct_asu(n, c);
      CHECK(verify_representation(k.rep, c));
      CHECK(static_cast<i64>(k.rep.count()) <= c.M * m + 3);
      CHECK(congruences_hold(k.rep, c));
    } catch (const Error& e) {
      // Only the documented odd-m failures of the zero/one padding are allowed.
      CHECK(e.code() == Errc::ConstructionFailed);
      CHECK(m % 2 == 1);
    }
  }
}

TEST_CASE("odd m: some n above the bound need more than m+3 terms") {
  const ResidueClass five = make_class(5, 1);
  CHECK(at_least(6144, effective_bound(five)));
  CHECK(code_of([&] { construct_asu(6144, five); }) == Errc::ConstructionFailed);
  CHECK(min_squares_oracle(6144, five, 64) == 9);
  const Construction su = construct_su(6144, five);
  CHECK(su.rep.count() == 9);
}

TEST_CASE("construct_asu walks past the window when it must") {
  // 36864 = 2^12 * 9: every odd b in the window gives 4a - b^2 = 7 (mod 8).
  const ResidueClass five = make_class(5, 1);
  const Construction c = construct_asu(36864, five);
  CHECK(c.rep.count() == 4);
  CHECK(verify_representation(c.rep, five));
  CHECK(c.step >= 2 * (asu_claimed_window(five) + 1));
}

TEST_CASE("decompose_small") {
  const ResidueClass eight = make_class(8, 1);
  CHECK(decompose_small(48, eight).terms == std::vector<i64>(48, 1));
  CHECK(decompose_small(49, eight).terms == std::vector<i64>{-7});
  const SquareRepresentation top = decompose_small(784, eight);
  CHECK(verify_representation(top, eight));
  CHECK(top.count() <= 48);
  CHECK(decompose_small(49, make_class(8, 7)).terms == std::vector<i64>{7});
  CHECK(code_of([&] { decompose_small(785, eight); }) == Errc::OutOfRange);
  CHECK(code_of([] { decompose_small(10, make_class(7, 1)); }) == Errc::OutOfRange);
  CHECK(code_of([] { decompose_small(10, make_class(8, 3)); }) == Errc::OutOfRange);

  for (i64 m : {8, 10, 11, 13}) {
    for (i64 d : {i64{1}, m - 1}) {
      const ResidueClass c = make_class(m, d);
      for (i64 n = 1; n <= 2 * m * (m - 1) * (m - 1); ++n) {
        const SquareRepresentation rep = decompose_small(n, c);
        REQUIRE(verify_representation(rep, c));
        REQUIRE(static_cast<i64>(rep.count()) <= m * m - 2 * m);
      }
    }
  }
}

TEST_CASE("decompose_effective") {
  const ResidueClass six = make_class(6, 1);
  const SquareRepresentation a = decompose_effective(300, six);
  CHECK(verify_representation(a, six));
  CHECK(a.count() <= 27);
  const SquareRepresentation b = decompose_effective(1'000'000, make_class(7, 1));
  CHECK(verify_representation(b, make_class(7, 1)));
  CHECK(b.count() <= 10);
  CHECK(code_of([&] { decompose_effective(299, six); }) == Errc::OutOfRange);
  CHECK(code_of([] { decompose_effective(10'000, make_class(5, 1)); }) == Errc::OutOfRange);

  const SquareRepresentation neg = decompose_effective(1'000'000, make_class(7, 6));
  CHECK(verify_representation(neg, make_class(7, 6)));
}

TEST_CASE("decompose_effective for m = 9 can need Mm+4 terms") {
  const ResidueClass nine = make_class(9, 1);
  CHECK(min_squares_oracle(1192, nine, 64) == 13);
  const SquareRepresentation rep = decompose_effective(1192, nine);
  CHECK(verify_representation(rep, nine));
  CHECK(rep.count() == 13);
}

TEST_CASE("decompose_effective respects (M+1)m+3 on seeded samples") {
  testing::SampleStream rng(19);
  for (int i = 0; i < 2000; ++i) {
    const i64 m = rng.uniform(6, 40);
    const ResidueClass c = make_class(m, rng.uniform(0, 1) == 0 ? 1 : m - 1);
    const i64 n = 2 * m * (m - 1) * (m - 1) + rng.uniform(0, i64{1} << rng.uniform(4, 50));
    const Construction k = construct_effective(n, c);
    CHECK(verify_representation(k.rep, c));
    CHECK(static_cast<i64>(k.rep.count()) <= (c.M + 1) * m + 3);
    CHECK(congruences_hold(k.rep, c));
  }
}

TEST_CASE("decompose_su") {
  const SquareRepresentation a = decompose_su(31, make_class(5, 1));
  CHECK(a.count() == 16);
  CHECK(a.terms.front() == -4);
  CHECK(std::count(a.terms.begin(), a.terms.end(), 1) == 15);
  CHECK(decompose_su(48, make_class(8, 1)).count() == 48);
  CHECK(decompose_su(49, make_class(8, 1)).count() == 1);
  CHECK(code_of([] { decompose_su(10, make_class(5, 2)); }) == Errc::NoSU);
  CHECK(decompose_su(7, make_class(1, 1)).count() == 4);
  CHECK(decompose_su(i64{1} << 62, make_class(1, 1)).count() == 1);
}

TEST_CASE("decompose_su covers small classes exhaustively") {
  for (i64 m = 1; m <= 7; ++m) {
    for (i64 d : {i64{1}, m - 1}) {
      if (m > 1 && d == 0) continue;
      const ResidueClass c = make_class(m, d == 0 ? 1 : d);
      const i64 su = su_value(c);
      for (i64 n = 1; n <= 20'000; ++n) {
        const SquareRepresentation rep = decompose_su(n, c);
        REQUIRE(verify_representation(rep, c));
        REQUIRE(static_cast<i64>(rep.count()) <= su);
        REQUIRE(congruences_hold(rep, c));
      }
    }
  }
}

TEST_CASE("decompose_su on seeded large samples") {
  testing::SampleStream rng(23);
  for (int i = 0; i < 3000; ++i) {
    const i64 m = rng.uniform(1, 40);
    const ResidueClass c = make_class(m, rng.uniform(0, 1) == 0 ? 1 : m - 1);
    const i64 n = rng.uniform(1, i64{1} << rng.uniform(5, 61));
    const SquareRepresentation rep = decompose_su(n, c);
    CHECK(verify_representation(rep, c));
    CHECK(static_cast<i64>(rep.count()) <= su_value(c));
    CHECK(congruences_hold(rep, c));
  }
}

TEST_CASE("find_three_term") {
  const ResidueClass six = make_class(6, 1);
  const auto rep = find_three_term(27, six);
  REQUIRE(rep.has_value());
  CHECK(verify_representation(*rep, six));
  CHECK(rep->count() == 3);
  CHECK_FALSE(find_three_term(147, make_class(12, 1)).has_value());
  CHECK_FALSE(find_three_term(28, six).has_value());
}
