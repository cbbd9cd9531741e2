#pragma once

#include <cstddef>
#include <vector>

#include "haarlab/measure.hpp"
#include "haarlab/rational.hpp"
#include "haarlab/topgroup.hpp"

namespace haarlab {

/// Cover the closed set `k` with left translates of the interior of `s`.
struct CoveringProblem {
  FiniteTopGroup group;
  Subset k;
  Subset s;
};

struct CoveringSolution {
  std::size_t count = 0;
  /// Ascending; the lexicographically least among all optimal covers.
  std::vector<std::size_t> translates;

  friend bool operator==(const CoveringSolution&, const CoveringSolution&) = default;
};

/// (K:S), the least n with K covered by g_1 S°, ..., g_n S°. The empty set
/// needs no translates, so (∅:S) = 0. Exact: iterative deepening between a
/// counting lower bound and a greedy upper bound.
[[nodiscard]] CoveringSolution covering_number(const CoveringProblem& p);

/// (K:U) / (K0:U) for an open neighbourhood U of the identity.
[[nodiscard]] Rational mu_u(const FiniteTopGroup& g, Subset k, Subset k0, Subset u);

/// The covering construction with U at the bottom of the neighbourhood filter
/// of the identity (the identity closure N): every atom gets mass
/// (atom:N)/(K0:N), which normalizes mu(K0) = 1.
[[nodiscard]] FiniteMeasure existence_via_covering(const FiniteTopGroup& g, Subset k0);

}  // namespace haarlab
