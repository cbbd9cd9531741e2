#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "haarlab/rational.hpp"

/// The plane R^2 under the seminorm (x, y) -> |x|: its opens are U x R for U
/// open in R, so Borel sets are cylinders E x R and Haar measure is the
/// length of the base.
namespace haarlab::plane {

/// An interval of the line; a missing endpoint is -inf (lo) or +inf (hi),
/// and infinite endpoints are always open.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
  static Interval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }

  [[nodiscard]] bool bounded() const noexcept { return lo.has_value() && hi.has_value(); }
  [[nodiscard]] bool empty() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of intervals kept sorted, disjoint, and with touching
/// pieces merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> intervals);

  [[nodiscard]] const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  [[nodiscard]] bool empty() const noexcept { return intervals_.empty(); }
  [[nodiscard]] bool bounded() const;
  /// Every piece closed and bounded: the compact sets in this lattice.
  [[nodiscard]] bool is_closed_bounded() const;
  /// Every finite endpoint open.
  [[nodiscard]] bool is_open() const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> intervals_;
};

[[nodiscard]] IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
[[nodiscard]] IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
[[nodiscard]] bool is_subset(const IntervalUnion& a, const IntervalUnion& b);
[[nodiscard]] IntervalUnion shift(const IntervalUnion& e, const Rational& by);
/// Lebesgue measure; endpoint flags do not matter.
[[nodiscard]] ExtendedRational lebesgue_length(const IntervalUnion& e);

/// base x R
struct CylinderSet {
  IntervalUnion base;

  /// Closed and compact in the seminorm topology.
  [[nodiscard]] bool is_closed_compact() const { return base.is_closed_bounded(); }
  [[nodiscard]] bool is_open() const { return base.is_open(); }

  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;
};

/// pi_1: the base of the cylinder, i.e. the quotient V / closure{0} = R.
[[nodiscard]] IntervalUnion project(const CylinderSet& e);

/// E -> |pi_1(E)|, the Haar measure of V.
[[nodiscard]] ExtendedRational haar_v(const CylinderSet& e);

/// E + (a, b); b moves nothing since every set is a cylinder.
[[nodiscard]] CylinderSet translate_v(const CylinderSet& e, const Rational& a, const Rational& b);

struct RegularityGap {
  /// Closed compact, inside e.
  CylinderSet inner;
  /// Open, containing e.
  CylinderSet outer;
  /// Set when the base was unbounded and inner had to be cut to a bounded
  /// piece of mass at least 1/eps.
  bool inner_truncated = false;
};

/// Inner and outer approximations with mass within eps of e: every finite
/// endpoint moves by eps / (2 * number of pieces), open ones inward for the
/// inner set and all of them outward for the outer set.
[[nodiscard]] RegularityGap regularity_gap(const CylinderSet& e, const Rational& eps);

/// Closed rectangle [x0, x1] x [y0, y1].
struct Rect {
  Rational x0, x1, y0, y1;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// K_{m,n} = [m, m+1] x [n, n+1].
[[nodiscard]] Rect unit_square(const Integer& m, const Integer& n);

enum class BkVerdict { FinitenessViolated, NonzeroViolated };

std::string to_string(BkVerdict verdict);

/// Refutes, for one hypothesized value c = mu(K_{0,0}), the existence of a
/// Haar measure on the sigma-algebra generated by opens and compact sets.
struct BkCertificate {
  Rational input_mass;
  Rational probe_bound;
  BkVerdict verdict = BkVerdict::FinitenessViolated;

  /// Finiteness branch: m = floor(bound / c) + 1 disjoint translates
  /// K_{0,0} + (0, 2n), n < m, inside K = [0,1] x R, total m c > bound.
  std::size_t translate_count = 0;
  std::vector<Rect> translates;
  Rational total_mass;

  /// Nonzero branch: the grid {K_{m,n}} covers the plane and each cell has
  /// mass 0, so mu(R^2) <= 0. The cells over [-W, W]^2 are exhibited.
  std::size_t window = 0;
  std::vector<Rect> grid;
};

[[nodiscard]] BkCertificate counterexample_bk(const Rational& c, const Rational& probe_bound);

/// Re-checks a certificate from its rectangles alone: unit translates of
/// K_{0,0}, pairwise disjoint and inside [0,1] x R with enough mass, or a
/// gap-free grid over the window with zero total mass.
[[nodiscard]] bool verify_certificate(const BkCertificate& cert);

}  // namespace haarlab::plane
