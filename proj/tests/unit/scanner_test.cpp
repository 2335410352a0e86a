#include <algorithm>

#include "doctest.h"
#include "rsq/error.hpp"
#include "rsq/scanner.hpp"

using namespace rsq;

namespace {

i64 brute_count(i64 n, const ResidueClass& c) {
  const i64 s = isqrt(n);
  i64 k = 0;
  for (i64 a = -s; a <= s; ++a)
    for (i64 b = -s; b <= s; ++b)
      for (i64 e = -s; e <= s; ++e)
        if (c.contains(a) && c.contains(b) && c.contains(e) && a * a + b * b + e * e == n) ++k;
  return k;
}

}  // namespace

TEST_CASE("count_three_term examples") {
  CHECK(count_three_term(3, make_class(1, 1)) == 8);
  CHECK(count_three_term(147, make_class(12, 1)) == 0);
  for (i64 m = 1; m <= 20; ++m)
    for (i64 d = 1; d <= m; ++d)
      if (gcd(m, d) == 1) CHECK(count_three_term(3 * d * d, make_class(m, d)) >= 1);
}

TEST_CASE("count_three_term matches brute force") {
  for (auto [m, d] : {std::pair{1, 1}, {2, 1}, {6, 1}, {6, 5}, {8, 3}, {12, 5}, {5, 2}}) {
    const ResidueClass c = make_class(m, d);
    for (i64 n = 1; n <= 300; ++n) {
      REQUIRE(count_three_term(n, c) == brute_count(n, c));
      CHECK(has_three_term(n, c) == (brute_count(n, c) > 0));
    }
  }
}

TEST_CASE("counts are invariant under d -> m - d") {
  for (i64 m : {5, 6, 8, 10, 12}) {
    for (i64 d = 1; d < m; ++d) {
      if (gcd(m, d) != 1) continue;
      const ResidueClass a = make_class(m, d);
      const ResidueClass b = make_class(m, m - d);
      for (i64 n = 1; n <= 10'000; n += 7) REQUIRE(count_three_term(n, a) == count_three_term(n, b));
    }
  }
}

TEST_CASE("scan examples") {
  const ScanReport six = scan_exceptions(make_class(6, 1), 10'000);
  CHECK(six.exceptions.empty());
  CHECK(six.modulus == 24);
  CHECK(six.target_residue == 3);
  CHECK(six.n_lo == 3);

  const ScanReport twelve = scan_exceptions(make_class(12, 1), 10'000);
  for (i64 n : {147, 1083, 2883, 5547}) {
    CHECK(std::binary_search(twelve.exceptions.begin(), twelve.exceptions.end(), n));
  }
  const ScanReport five = scan_exceptions(make_class(12, 5), 10'000);
  CHECK(std::binary_search(five.exceptions.begin(), five.exceptions.end(), 507));

  try {
    scan_exceptions(make_class(6, 5), 10);
    FAIL("range below 3d^2 must be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("scan report invariants and job independence") {
  const ResidueClass c = make_class(8, 3);
  const ScanReport one = scan_exceptions(c, 20'000, {true, 1});
  const ScanReport four = scan_exceptions(c, 20'000, {true, 4});
  CHECK(one.exceptions == four.exceptions);
  CHECK(*one.counts == *four.counts);
  CHECK(std::is_sorted(one.exceptions.begin(), one.exceptions.end()));
  for (const auto& [n, k] : *one.counts) {
    CHECK(floor_mod(n - 27, 16) == 0);
    CHECK(k == count_three_term(n, c));
    CHECK((k == 0) == std::binary_search(one.exceptions.begin(), one.exceptions.end(), n));
  }
  const ScanReport fast = scan_exceptions(c, 20'000, {false, 3});
  CHECK(fast.exceptions == one.exceptions);
  CHECK_FALSE(fast.counts.has_value());
}

TEST_CASE("classify_exception") {
  const auto a = classify_exception(147);
  CHECK(a.kind == ExceptionClassification::Kind::ThreeEllSquared);
  CHECK(a.ell == 7);
  CHECK(a.ell_mod_12 == 7);
  CHECK(a.describe() == "3*7^2 (7 mod 12 = 7)");
  const auto b = classify_exception(507);
  CHECK(b.ell == 13);
  CHECK(b.ell_mod_12 == 1);
  CHECK(classify_exception(48).kind == ExceptionClassification::Kind::Other);
  CHECK(classify_exception(48).describe() == "other");
  CHECK(classify_exception(12).kind == ExceptionClassification::Kind::Other);    // l = 2
  CHECK(classify_exception(243).kind == ExceptionClassification::Kind::Other);   // l = 9
}

TEST_CASE("asu lower witnesses") {
  const auto six = asu_lower_witnesses(make_class(6, 1), 3);
  REQUIRE(six.size() == 3);
  CHECK(six[0].n == 266);
  for (const Witness& w : six) {
    CHECK(w.n % 24 == 2);
    CHECK(w.certified >= 26);
    CHECK(w.prime % 4 == 3);
    CHECK(w.n % static_cast<i64>(w.prime) == 0);
    CHECK_FALSE(is_two_square_representable(w.n));
  }
  for (const Witness& w : asu_lower_witnesses(make_class(5, 1), 3)) {
    CHECK(w.n % 5 == 3);
    CHECK(w.n % 8 == 7);
    CHECK(w.certified >= 8);
  }
  for (const Witness& w : asu_lower_witnesses(make_class(12, 1), 2)) {
    CHECK(w.n % 24 == 2);
    CHECK(w.certified >= 26);
  }
  for (auto [m, d] : {std::pair{8, 3}, {10, 3}, {4, 1}, {2, 1}, {7, 3}}) {
    const ResidueClass c = make_class(m, d);
    const i64 bound = m % 2 == 0 ? c.M * m + 2 : m + 3;
    for (const Witness& w : asu_lower_witnesses(c, 2)) CHECK(w.certified >= bound);
  }
  WitnessOptions tiny;
  tiny.search_limit = 0;
  try {
    asu_lower_witnesses(make_class(6, 1), 1, tiny);
    FAIL("search limit must be enforced");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SearchExhausted);
  }
}

TEST_CASE("su extremal witness") {
  CHECK(su_extremal_witness(make_class(7, 1)).n == 35);
  CHECK(su_extremal_witness(make_class(7, 1)).certified == 35);
  CHECK(su_extremal_witness(make_class(8, 1)).n == 48);
  CHECK(su_extremal_witness(make_class(3, 1)).n == 3);
  CHECK(su_extremal_witness(make_class(9, 8)).certified == 63);
  try {
    su_extremal_witness(make_class(2, 1));
    FAIL("m < 3 must be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfRange);
  }
  try {
    su_extremal_witness(make_class(5, 2));
    FAIL("no SU");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoSU);
  }
}
