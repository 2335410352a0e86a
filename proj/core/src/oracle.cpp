#include "rsq/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "rsq/error.hpp"

namespace rsq {

OracleLimits OracleLimits::from_env() {
  OracleLimits limits;
  if (const char* env = std::getenv("RS_MAX_MEMORY_MB")) {
    char* end = nullptr;
    const unsigned long long mb = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') limits.max_bytes = static_cast<std::size_t>(mb) * 1024 * 1024;
  }
  return limits;
}

MinSquaresTable::MinSquaresTable(i64 n_max, const ResidueClass& cls, int cap, OracleLimits limits)
    : cls_(cls), cap_(std::clamp(cap, 1, kMaxCap)) {
  if (n_max < 0) throw Error(Errc::InvalidArgument, "oracle target must be non-negative");
  if (n_max > limits.max_target) {
    throw Error(Errc::ResourceLimit, "oracle target " + std::to_string(n_max) + " exceeds " +
                                         std::to_string(limits.max_target));
  }
  const auto bytes = static_cast<std::size_t>(n_max + 1) * sizeof(std::uint16_t);
  if (bytes > limits.max_bytes) {
    throw Error(Errc::ResourceLimit, "oracle table needs " + std::to_string(bytes >> 20) +
                                         " MiB, above RS_MAX_MEMORY_MB");
  }

  // Class members y with 0 < y^2 <= n_max, one root per square value.
  // Positive roots win ties.
  std::vector<std::pair<i64, i64>> members;
  const i64 s = isqrt(n_max);
  for (i64 y = -s + floor_mod(cls.d + s, cls.m); y <= s; y += cls.m) {
    if (y != 0) members.emplace_back(y * y, -y);
  }
  std::sort(members.begin(), members.end());
  for (const auto& [sq, neg_root] : members) {
    if (!squares_.empty() && squares_.back() == sq) continue;
    squares_.push_back(sq);
    roots_.push_back(-neg_root);
  }

  best_.assign(static_cast<std::size_t>(n_max + 1), kNone);
  best_[0] = 0;
  for (std::size_t v = 1; v < best_.size(); ++v) {
    std::uint16_t b = kNone;
    for (i64 q : squares_) {
      const auto uq = static_cast<std::size_t>(q);
      if (uq > v) break;
      const std::uint16_t prev = best_[v - uq];
      if (prev < b - 1) b = static_cast<std::uint16_t>(prev + 1);
    }
    best_[v] = b;
  }
}

std::optional<int> MinSquaresTable::min_terms(i64 n) const {
  if (n < 0 || n > n_max()) throw Error(Errc::OutOfRange, "target outside the oracle table");
  const std::uint16_t v = best_[static_cast<std::size_t>(n)];
  if (v == kNone || v > cap_) return std::nullopt;
  return static_cast<int>(v);
}

std::optional<SquareRepresentation> MinSquaresTable::representation(i64 n) const {
  if (!min_terms(n)) return std::nullopt;
  SquareRepresentation rep{n, {}};
  i64 v = n;
  while (v > 0) {
    const std::uint16_t want = best_[static_cast<std::size_t>(v)] - 1;
    bool stepped = false;
    for (std::size_t i = squares_.size(); i-- > 0;) {
      if (squares_[i] > v) continue;
      if (best_[static_cast<std::size_t>(v - squares_[i])] == want) {
        rep.terms.push_back(roots_[i]);
        v -= squares_[i];
        stepped = true;
        break;
      }
    }
    if (!stepped) throw Error(Errc::ConstructionFailed, "oracle table is inconsistent");
  }
  canonicalize(rep);
  return rep;
}

std::optional<int> min_squares_oracle(i64 n, const ResidueClass& cls, int cap, OracleLimits limits) {
  if (n < 1) throw Error(Errc::InvalidArgument, "oracle requires n >= 1");
  if (cap < 1) throw Error(Errc::InvalidArgument, "oracle requires cap >= 1");
  return MinSquaresTable(n, cls, cap, limits).min_terms(n);
}

}  // namespace rsq
