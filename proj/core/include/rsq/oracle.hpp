#pragma once

// Brute-force minimal term counts: a coin-change table over the squares of
// class members. Independent of every constructive route in the library.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rsq/residue_class.hpp"

namespace rsq {

struct OracleLimits {
  static constexpr i64 kMaxTarget = 100'000'000;

  i64 max_target = kMaxTarget;
  std::size_t max_bytes = std::numeric_limits<std::size_t>::max();

  /// Honors RS_MAX_MEMORY_MB when set.
  static OracleLimits from_env();
};

class MinSquaresTable {
 public:
  static constexpr int kMaxCap = 65534;

  /// Exact minimal counts for every target in [0, n_max]; counts above cap
  /// are reported as unrepresentable. Throws Error(ResourceLimit).
  MinSquaresTable(i64 n_max, const ResidueClass& cls, int cap, OracleLimits limits = {});

  i64 n_max() const { return static_cast<i64>(best_.size()) - 1; }
  int cap() const { return cap_; }
  const ResidueClass& cls() const { return cls_; }

  std::optional<int> min_terms(i64 n) const;

  /// A minimal representation of n, largest squares first.
  std::optional<SquareRepresentation> representation(i64 n) const;

 private:
  static constexpr std::uint16_t kNone = std::numeric_limits<std::uint16_t>::max();

  ResidueClass cls_;
  int cap_;
  std::vector<i64> squares_;  // ascending, non-zero
  std::vector<i64> roots_;    // a class member whose square is squares_[i]
  std::vector<std::uint16_t> best_;
};

/// nullopt means no representation with at most cap terms.
std::optional<int> min_squares_oracle(i64 n, const ResidueClass& cls, int cap, OracleLimits limits = {});

}  // namespace rsq
