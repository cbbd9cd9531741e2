#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "haarlab/rational.hpp"
#include "haarlab/topgroup.hpp"
#include "haarlab/topology.hpp"

namespace haarlab {

/// Regularity is checked by literally scanning every open superset and every
/// closed subset up to this many atoms; beyond it, against the extremal sets.
inline constexpr std::size_t kExhaustiveRegularityAtoms = 12;
/// Atom cap for replaying the regularity equalities inside `pullback`.
inline constexpr std::size_t kPullbackReplayAtoms = 10;

enum class Side { Left, Right };

std::string to_string(Side side);

/// A measure on the Borel sets of a finite topological group, given by an
/// exact nonnegative mass per Borel atom (in the group's canonical atom order).
class FiniteMeasure {
 public:
  /// Throws NegativeMass, or InvalidArgument when the mass count is wrong.
  FiniteMeasure(FiniteTopGroup group, std::vector<Rational> atom_mass);
  FiniteMeasure(std::shared_ptr<const FiniteTopGroup> group, std::vector<Rational> atom_mass);

  static FiniteMeasure zero(const FiniteTopGroup& group);

  [[nodiscard]] const FiniteTopGroup& group() const noexcept { return *group_; }
  [[nodiscard]] const std::shared_ptr<const FiniteTopGroup>& group_ptr() const noexcept { return group_; }
  [[nodiscard]] const std::vector<Rational>& atom_mass() const noexcept { return mass_; }
  [[nodiscard]] const Rational& atom_mass(std::size_t atom) const { return mass_.at(atom); }

  /// mu(E) for a Borel set of points; NotMeasurable otherwise.
  [[nodiscard]] Rational operator()(Subset borel_set) const;
  [[nodiscard]] Rational total() const;
  [[nodiscard]] FiniteMeasure scaled(const Rational& factor) const;

  /// Same group (structurally) and same masses.
  friend bool operator==(const FiniteMeasure& a, const FiniteMeasure& b);

 private:
  std::shared_ptr<const FiniteTopGroup> group_;
  std::vector<Rational> mass_;
};

/// Throws MeasureSpaceMismatch unless `mu` lives on `g`.
void require_on(const FiniteTopGroup& g, const FiniteMeasure& mu, const char* what);

struct HaarWitness {
  std::string axiom;
  Subset set;
  std::optional<std::size_t> element;
};

struct HaarReport {
  Side side = Side::Left;
  bool nonzero = false;
  bool left_invariant = false;
  bool right_invariant = false;
  bool locally_finite = false;
  bool outer_regular = false;
  bool inner_regular_on_opens = false;
  /// False when a scan fell back to generators or extremal sets.
  bool exhaustive = true;
  /// First failure per axiom, in canonical set order then element order.
  std::vector<HaarWitness> witnesses;

  [[nodiscard]] bool is_radon() const noexcept { return locally_finite && outer_regular && inner_regular_on_opens; }
  [[nodiscard]] bool is_left_haar() const noexcept { return nonzero && left_invariant && is_radon(); }
  [[nodiscard]] bool is_right_haar() const noexcept { return nonzero && right_invariant && is_radon(); }
  [[nodiscard]] bool is_haar() const noexcept { return side == Side::Left ? is_left_haar() : is_right_haar(); }
};

[[nodiscard]] HaarReport is_haar(const FiniteTopGroup& g, const FiniteMeasure& mu, Side side = Side::Left);

/// The Radon axioms alone, read off the extremal sets: with nonnegative masses
/// the infimum over open supersets sits at the open hull and the supremum over
/// closed subsets at the closed core. Atoms are clopen, so checking each atom
/// covers every Borel set.
[[nodiscard]] bool is_radon(const FiniteTopGroup& g, const FiniteMeasure& mu);

/// Mass one on every atom: the counting measure of the quotient pulled back.
[[nodiscard]] FiniteMeasure canonical_haar(const FiniteTopGroup& g);

struct HaarSolutionSpace {
  std::size_t dimension = 0;
  std::vector<FiniteMeasure> basis;
};

/// Solves the translation-invariance equations over the atom masses exactly.
[[nodiscard]] HaarSolutionSpace haar_solution_space(const FiniteTopGroup& g, Side side = Side::Left);

/// The a with nu = a mu, if there is one (mu nonzero).
[[nodiscard]] std::optional<Rational> proportionality(const FiniteMeasure& mu, const FiniteMeasure& nu);

/// E -> mu(E^{-1})
[[nodiscard]] FiniteMeasure invert_measure(const FiniteTopGroup& g, const FiniteMeasure& mu);

/// F -> mu(pi^{-1}(F)) on the quotient.
[[nodiscard]] FiniteMeasure pushforward(const QuotientData& q, const FiniteMeasure& mu);
/// E -> nu(pi(E)) on the base group.
[[nodiscard]] FiniteMeasure pullback(const QuotientData& q, const FiniteMeasure& nu);

/// Sum over atoms of f(atom) mu(atom). NotMeasurable if f varies on an atom.
[[nodiscard]] Rational integrate(const FiniteTopGroup& g, const PointFunction& f, const FiniteMeasure& mu);

/// x -> f(g x) (left) or x -> f(x g) (right).
[[nodiscard]] PointFunction translate(const FiniteTopGroup& g, const PointFunction& f, std::size_t element,
                                      Side side = Side::Left);

struct FubiniResult {
  /// integral over g of (integral over h of f(x, y) d lam(y)) d mu(x)
  Rational lhs;
  /// integral over h of (integral over g of f(x, y) d mu(x)) d lam(y)
  Rational rhs;
};

/// f is indexed like product_group(g, h): point (x, y) is x * order(h) + y.
[[nodiscard]] FubiniResult fubini_check(const FiniteTopGroup& g, const FiniteTopGroup& h, const PointFunction& f,
                                        const FiniteMeasure& mu, const FiniteMeasure& lam);

/// Whether both measures integrate every atom indicator alike. NotRadon
/// unless both are Radon.
[[nodiscard]] bool riesz_check(const FiniteTopGroup& g, const FiniteMeasure& mu1, const FiniteMeasure& mu2);

struct PositivityReport {
  bool closed_compact_positive = false;
  bool opens_positive = false;
  bool integrals_positive = false;
  bool exhaustive = true;
  std::optional<Subset> witness;

  [[nodiscard]] bool holds() const noexcept {
    return closed_compact_positive && opens_positive && integrals_positive;
  }
};

/// Requires a left Haar measure (NotHaar otherwise).
[[nodiscard]] PositivityReport positivity_report(const FiniteTopGroup& g, const FiniteMeasure& mu);

/// On x times an indiscrete h: E -> mu_x(pi_x(E)).
[[nodiscard]] FiniteMeasure product_haar(const FiniteTopGroup& x, const FiniteTopGroup& h, const FiniteMeasure& mu_x);

}  // namespace haarlab
