#pragma once

// Three-term representation counts, exception scans and lower-bound
// witnesses.

#include <optional>
#include <string>
#include <vector>

#include "rsq/oracle.hpp"
#include "rsq/residue_class.hpp"

namespace rsq {

/// Ordered triples (y1, y2, y3) of class members with y1^2 + y2^2 + y3^2 = n.
i64 count_three_term(i64 n, const ResidueClass& cls);
/// count_three_term(n, cls) > 0, stopping at the first triple.
bool has_three_term(i64 n, const ResidueClass& cls);

struct ScanOptions {
  bool keep_counts = false;
  unsigned jobs = 1;
};

struct ScanReport {
  ResidueClass cls;
  i64 n_lo = 0;
  i64 n_hi = 0;
  i64 modulus = 1;            ///< mM
  i64 target_residue = 0;     ///< 3d^2 mod mM
  std::vector<i64> exceptions;  ///< ascending
  /// (n, count) for every scanned n, ascending; only with keep_counts.
  std::optional<std::vector<std::pair<i64, i64>>> counts;
};

/// Every n in [1, n_max] with n = 3d^2 (mod mM), the progression on which a
/// three-term representation is not ruled out by the term-count congruence.
/// The result does not depend on opts.jobs. Throws Error(InvalidArgument) if n_max < 3d^2.
ScanReport scan_exceptions(const ResidueClass& cls, i64 n_max, ScanOptions opts = {});

struct ExceptionClassification {
  enum class Kind { ThreeEllSquared, Other };

  i64 n = 0;
  Kind kind = Kind::Other;
  i64 ell = 0;
  i64 ell_mod_12 = 0;

  /// "3*7^2 (7 mod 12 = 7)" or "other".
  std::string describe() const;
};

/// ThreeEllSquared iff n = 3 l^2 with l an odd prime.
ExceptionClassification classify_exception(i64 n);

struct Witness {
  i64 n = 0;
  i64 lower_bound = 0;    ///< proven minimum term count
  int certified = 0;      ///< oracle minimum, >= lower_bound
  u64 prime = 0;          ///< even m: a prime 3 (mod 4) dividing n to an odd power
};

struct WitnessOptions {
  i64 search_limit = 10'000'000;  ///< largest t0 tried
  OracleLimits limits = {};
};

/// Even m: n = mMt0 + 2d^2 that is not a sum of two squares, needing at least
/// Mm + 2 terms. Odd m: n = mt0 + 3d^2 with n = 7 (mod 8), needing at least
/// m + 3 terms. Each witness is confirmed by the oracle; candidates with no
/// representation at all are skipped.
/// Throws Error(SearchExhausted) past opts.search_limit.
std::vector<Witness> asu_lower_witnesses(const ResidueClass& cls, int count, WitnessOptions opts = {});

/// n = m^2 - 2m with its oracle minimum, equal to n. Throws Error(NoSU) or
/// Error(OutOfRange) for m < 3.
Witness su_extremal_witness(const ResidueClass& cls, OracleLimits limits = {});

}  // namespace rsq
