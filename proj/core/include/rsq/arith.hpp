#pragma once

// Exact integer primitives on the non-negative range of std::int64_t.
// Products are taken at 128-bit width internally.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rsq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
__extension__ typedef __int128 i128;

/// n = 4^alpha * core with 4 not dividing core.
struct Pow4Normalization {
  int alpha = 0;
  i64 core = 0;
};

/// x*x + y*y + z*z == n with x >= y >= z >= 0.
struct ThreeSquareDecomposition {
  i64 n = 0;
  i64 x = 0;
  i64 y = 0;
  i64 z = 0;

  friend bool operator==(const ThreeSquareDecomposition&, const ThreeSquareDecomposition&) = default;
};

/// u*u + v*v with u >= v >= 0.
struct TwoSquares {
  i64 u = 0;
  i64 v = 0;

  friend bool operator==(const TwoSquares&, const TwoSquares&) = default;
};

/// Throws Error(InvalidArgument) for n < 1.
Pow4Normalization pow4_normalize(i64 n);

/// True iff n is not of the form 4^a(8b+7). Throws for n < 0.
bool is_three_square_representable(i64 n);

/// Largest feasible x first, then the two-square completion with the largest
/// second coordinate. Throws Error(NotRepresentable) on Legendre-form input.
ThreeSquareDecomposition decompose_three_squares(i64 n);

/// The representation with the largest u, or nullopt when some prime
/// p = 3 (mod 4) divides n to an odd power.
std::optional<TwoSquares> decompose_two_squares(i64 n);

/// Every representation u >= v >= 0, ordered by descending u.
std::vector<TwoSquares> all_two_squares(i64 n);

/// Fast necessary-and-sufficient test used by the descents.
bool is_two_square_representable(i64 n);

/// Deterministic Miller-Rabin, exact on all of u64.
bool is_prime(u64 n);

/// Prime factorization in ascending prime order. factorize(1) is empty.
std::vector<std::pair<u64, int>> factorize(u64 n);

/// floor(sqrt(n)) for n >= 0.
i64 isqrt(i64 n);

bool is_square(i64 n);

/// Mathematical modulo: result in [0, m) for m > 0.
constexpr i64 floor_mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

constexpr i64 floor_div(i64 a, i64 m) {
  return (a - floor_mod(a, m)) / m;
}

i64 gcd(i64 a, i64 b);

/// Inverse of a modulo m (m >= 1, gcd(a, m) == 1). Returns 0 when m == 1.
i64 mod_inverse(i64 a, i64 m);

/// Restartable enumeration of all x >= y >= z >= 0 with x^2+y^2+z^2 == n,
/// descending in x and then in y.
class ThreeSquareEnumerator {
 public:
  explicit ThreeSquareEnumerator(i64 n);

  std::optional<ThreeSquareDecomposition> next();

 private:
  bool advance_x();

  i64 n_;
  i64 x_;
  i64 x_min_;
  std::vector<TwoSquares> pending_;
  std::size_t pos_ = 0;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace rsq
