#pragma once

// Constructive decompositions into squares of class members.
//
// Every route reduces n = sum (m x_i + d)^2 over r terms to
//   m * sum x_i^2 + 2d * sum x_i = (n - r d^2) / m,
// solves the first four x_i with the constrained four-square solver and fills
// the remaining positions with x in {0, +1, -1}.

#include <optional>
#include <string_view>

#include "rsq/oracle.hpp"
#include "rsq/residue_class.hpp"

namespace rsq {

enum class ConstructionRoute {
  CauchyWindow,   ///< zero padding, walking the (a_k, b_k) solution family
  SetS,           ///< linear sum 1, padding encodes an element of the set S
  PaddedCauchy,   ///< free linear sum, padding of +1/-1 entries
  SmallFamilies,  ///< copies of 1, (m-1)^2 and one (m+1)^2
  ThreeTerm,      ///< a three-square decomposition sign-adjusted into the class
  Lagrange,       ///< m = 1
  Oracle,         ///< minimal representation read from the coin-change table
};

std::string_view to_string(ConstructionRoute route) noexcept;

struct Construction {
  SquareRepresentation rep;
  ConstructionRoute route = ConstructionRoute::CauchyWindow;
  i64 r = 0;     ///< term count
  i64 step = 0;  ///< k for CauchyWindow, s for SetS, unused otherwise
};

/// Window widths claimed for the (a_k, b_k) walk: k <= 9 for odd m and
/// k <= M - 1 for even m.
i64 asu_claimed_window(const ResidueClass& cls);

/// n >= effective_bound(cls). Tries the zero-padded walk over twice the
/// claimed window, the padded search at the same r, then the rest of the
/// walk. Throws
/// Error(BelowBound) or Error(ConstructionFailed).
Construction construct_asu(i64 n, const ResidueClass& cls);
SquareRepresentation decompose_asu(i64 n, const ResidueClass& cls);

/// m >= 8, d = +-1 (mod m), n <= 2m(m-1)^2; at most m^2 - 2m terms.
SquareRepresentation decompose_small(i64 n, const ResidueClass& cls);

/// m >= 6, d = +-1 (mod m), n >= 2m(m-1)^2. Admissible r ascending; at each r
/// the set-S route, then (for r <= Mm+3) the padded search. Always succeeds
/// with at most (M+1)m+3 terms; at most Mm+3 unless no admissible r <= Mm+3
/// yields a padded solution.
Construction construct_effective(i64 n, const ResidueClass& cls);
SquareRepresentation decompose_effective(i64 n, const ResidueClass& cls);

/// Admissible r in [4, r_max] ascending; within each r, fewer non-zero
/// padding entries first. Each linear family is walked for at most
/// walk_limit solutions.
std::optional<Construction> padded_cauchy_search(i64 n, const ResidueClass& cls, i64 r_max,
                                                 i64 walk_limit = 24);

/// Exactly three terms; enumerates at most max_triples decompositions.
std::optional<SquareRepresentation> find_three_term(i64 n, const ResidueClass& cls,
                                                    i64 max_triples = 1'000'000);

/// At most su_value(cls) terms. Throws Error(NoSU).
Construction construct_su(i64 n, const ResidueClass& cls, OracleLimits limits = {});
SquareRepresentation decompose_su(i64 n, const ResidueClass& cls, OracleLimits limits = {});

}  // namespace rsq
