#include "rsq/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "rsq/error.hpp"

namespace rsq {
namespace {

__extension__ typedef unsigned __int128 u128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Brent's variant of Pollard rho. Returns a non-trivial factor of the odd
// composite n; the increment c is walked deterministically.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2;
    u64 g = 1;
    u64 q = 1;
    u64 x = 0;
    u64 ys = 0;
    constexpr u64 kBatch = 128;
    for (u64 r = 1; g == 1; r <<= 1U) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (mul_mod(y, y, n) + c) % n;
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = (mul_mod(ys, ys, n) + c) % n;
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 f = pollard_brent(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

struct Gaussian {
  i128 re;
  i128 im;
};

Gaussian mul(Gaussian a, Gaussian b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// u^2 + v^2 = p for a prime p = 1 (mod 4), via a square root of -1 and the
// Euclidean descent of Hermite-Serret/Cornacchia.
Gaussian prime_two_squares(u64 p) {
  u64 c = 2;
  while (pow_mod(c, (p - 1) / 2, p) != p - 1) ++c;
  u64 r = pow_mod(c, (p - 1) / 4, p);
  if (r > p / 2) r = p - r;
  const u64 limit = static_cast<u64>(isqrt(static_cast<i64>(p)));
  u64 a = p;
  u64 b = r;
  while (b > limit) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  const i64 v = isqrt(static_cast<i64>(p - b * b));
  return {static_cast<i128>(b), static_cast<i128>(v)};
}

i64 odd_part(i64 n) {
  while (n > 0 && (n & 1) == 0) n >>= 1;
  return n;
}

}  // namespace

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NoSU: return "NoSU";
    case Errc::BelowBound: return "BelowBound";
    case Errc::ConstructionFailed: return "ConstructionFailed";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NoAdmissibleS: return "NoAdmissibleS";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::ResourceLimit: return "ResourceLimit";
  }
  return "Unknown";
}

i64 isqrt(i64 n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "isqrt of negative value");
  auto r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  // Quadratic residues mod 64 reject most non-squares cheaply.
  constexpr u64 kMask64 = 0x0202021202030213ULL;
  if (((kMask64 >> (static_cast<u64>(n) & 63U)) & 1U) == 0) return false;
  const i64 r = isqrt(n);
  return r * r == n;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 mod_inverse(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 old_r = floor_mod(a, m);
  i64 r = m;
  i64 old_s = 1;
  i64 s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw Error(Errc::InvalidArgument, "mod_inverse: arguments not coprime");
  return floor_mod(old_s, m);
}

Pow4Normalization pow4_normalize(i64 n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "pow4_normalize requires n >= 1");
  Pow4Normalization out{0, n};
  while (out.core % 4 == 0) {
    out.core /= 4;
    ++out.alpha;
  }
  return out;
}

bool is_three_square_representable(i64 n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative input");
  if (n == 0) return true;
  return pow4_normalize(n).core % 8 != 7;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kSmall{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Bases known to be exact for every 64-bit n.
  static constexpr std::array<u64, 7> kBases{2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 a : kBases) {
    a %= n;
    if (a == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 p : {2ULL, 3ULL, 5ULL}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  // Wheel-30 trial division up to 2^16 settles everything below 2^32.
  static constexpr std::array<u64, 8> kWheel{4, 2, 4, 2, 4, 6, 2, 6};
  u64 p = 7;
  for (std::size_t w = 0; p <= 65536 && p * p <= n; p += kWheel[w], w = (w + 1) % kWheel.size()) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 q : primes) {
    if (!out.empty() && out.back().first == q) {
      ++out.back().second;
    } else {
      out.emplace_back(q, 1);
    }
  }
  return out;
}

bool is_two_square_representable(i64 n) {
  if (n < 0) return false;
  if (n == 0) return true;
  if (odd_part(n) % 4 == 3) return false;
  for (const auto& [p, e] : factorize(static_cast<u64>(n))) {
    if (p % 4 == 3 && e % 2 == 1) return false;
  }
  return true;
}

std::vector<TwoSquares> all_two_squares(i64 n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative input");
  if (n == 0) return {TwoSquares{0, 0}};
  if (odd_part(n) % 4 == 3) return {};

  Gaussian base{1, 0};
  std::vector<std::pair<Gaussian, int>> split;  // (pi, exponent) for p = 1 mod 4
  for (const auto& [p, e] : factorize(static_cast<u64>(n))) {
    if (p == 2) {
      for (int i = 0; i < e; ++i) base = mul(base, Gaussian{1, 1});
    } else if (p % 4 == 3) {
      if (e % 2 == 1) return {};
      for (int i = 0; i < e / 2; ++i) base = mul(base, Gaussian{static_cast<i128>(p), 0});
    } else {
      split.emplace_back(prime_two_squares(p), e);
    }
  }

  std::vector<Gaussian> products{base};
  for (const auto& [pi, e] : split) {
    const Gaussian conj{pi.re, -pi.im};
    std::vector<Gaussian> next;
    next.reserve(products.size() * static_cast<std::size_t>(e + 1));
    for (int j = 0; j <= e; ++j) {
      Gaussian factor{1, 0};
      for (int i = 0; i < j; ++i) factor = mul(factor, pi);
      for (int i = j; i < e; ++i) factor = mul(factor, conj);
      for (const Gaussian& g : products) next.push_back(mul(g, factor));
    }
    products = std::move(next);
  }

  std::vector<TwoSquares> out;
  out.reserve(products.size());
  for (const Gaussian& g : products) {
    auto u = static_cast<i64>(g.re < 0 ? -g.re : g.re);
    auto v = static_cast<i64>(g.im < 0 ? -g.im : g.im);
    if (u < v) std::swap(u, v);
    out.push_back({u, v});
  }
  std::sort(out.begin(), out.end(), [](const TwoSquares& a, const TwoSquares& b) { return a.u > b.u; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<TwoSquares> decompose_two_squares(i64 n) {
  auto reps = all_two_squares(n);
  if (reps.empty()) return std::nullopt;
  return reps.front();
}

ThreeSquareEnumerator::ThreeSquareEnumerator(i64 n) : n_(n), x_(0), x_min_(0) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative input");
  x_ = isqrt(n);
  // Smallest x with 3x^2 >= n.
  x_min_ = isqrt(n / 3);
  while (3 * static_cast<i128>(x_min_) * x_min_ < n) ++x_min_;
}

bool ThreeSquareEnumerator::advance_x() {
  for (; x_ >= x_min_; --x_) {
    const i64 rest = n_ - x_ * x_;
    if (!is_two_square_representable(rest)) continue;
    pending_.clear();
    for (const TwoSquares& ts : all_two_squares(rest)) {
      if (ts.u <= x_) pending_.push_back(ts);
    }
    pos_ = 0;
    if (!pending_.empty()) return true;
  }
  return false;
}

std::optional<ThreeSquareDecomposition> ThreeSquareEnumerator::next() {
  // Advance lazily: the next x may lie far below the current one.
  if (done_) return std::nullopt;
  if (pos_ == pending_.size()) {
    if (started_) --x_;
    started_ = true;
    if (!advance_x()) {
      done_ = true;
      return std::nullopt;
    }
  }
  const TwoSquares ts = pending_[pos_++];
  return ThreeSquareDecomposition{n_, x_, ts.u, ts.v};
}

ThreeSquareDecomposition decompose_three_squares(i64 n) {
  if (!is_three_square_representable(n)) {
    throw Error(Errc::NotRepresentable, std::to_string(n) + " is of the form 4^a(8b+7)");
  }
  ThreeSquareEnumerator it(n);
  auto first = it.next();
  if (!first) throw Error(Errc::ConstructionFailed, "three-square descent found nothing");
  return *first;
}

}  // namespace rsq
