#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "haarlab/rational.hpp"
#include "haarlab/subset.hpp"

namespace haarlab {

/// Upper bound on how many opens `FiniteSpace::opens()` will materialize.
inline constexpr std::size_t kMaxListedOpens = std::size_t{1} << 22;

/// A topology on the points 0..n-1.
///
/// A finite topology is determined by the smallest open set containing each
/// point (its minimal neighbourhood), so that is what is stored; the family of
/// opens is recovered as all unions of minimal neighbourhoods. This keeps
/// discrete spaces on 64 points representable.
class FiniteSpace {
 public:
  FiniteSpace() = default;

  /// Validates that `opens` is a topology (contains the empty set and the whole
  /// space, closed under pairwise union and intersection). Duplicates are merged.
  static FiniteSpace from_opens(std::size_t n, std::vector<Subset> opens);
  /// Validates x in N(x) and y in N(x) => N(y) subset of N(x).
  static FiniteSpace from_minimal_neighborhoods(std::vector<Subset> nbhds);

  static FiniteSpace discrete(std::size_t n);
  static FiniteSpace indiscrete(std::size_t n);
  /// Opens {}, {1}, {0,1}.
  static FiniteSpace sierpinski();

  [[nodiscard]] std::size_t size() const noexcept { return nbhd_.size(); }
  [[nodiscard]] Subset full() const noexcept { return Subset::full(size()); }
  [[nodiscard]] bool valid(Subset s) const noexcept { return s.is_subset_of(full()); }

  [[nodiscard]] Subset minimal_neighborhood(std::size_t x) const { return nbhd_.at(x); }
  [[nodiscard]] std::span<const Subset> minimal_neighborhoods() const noexcept { return nbhd_; }

  [[nodiscard]] bool is_open(Subset s) const;
  [[nodiscard]] bool is_closed(Subset s) const { return is_open(complement(s)); }
  [[nodiscard]] Subset complement(Subset s) const noexcept { return s.complement_in(size()); }

  /// Smallest open set containing `s`.
  [[nodiscard]] Subset open_hull(Subset s) const;

  /// All open sets in canonical (ascending mask) order.
  [[nodiscard]] std::vector<Subset> opens(std::size_t limit = kMaxListedOpens) const;
  [[nodiscard]] std::vector<Subset> closed_sets(std::size_t limit = kMaxListedOpens) const;

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  explicit FiniteSpace(std::vector<Subset> nbhd) : nbhd_(std::move(nbhd)) {}

  std::vector<Subset> nbhd_;
};

/// Throws InvalidArgument unless `s` only names points of `space`.
void require_valid(const FiniteSpace& space, Subset s, const char* what);

[[nodiscard]] Subset closure(const FiniteSpace& space, Subset s);
[[nodiscard]] Subset interior(const FiniteSpace& space, Subset s);

struct SeparationFlags {
  bool hausdorff = false;
  bool regular = false;
  bool normal = false;
  bool locally_compact = false;
  bool strongly_locally_compact = false;
  bool base_compact_nbhds = false;
  bool base_closed_compact_nbhds = false;

  friend bool operator==(const SeparationFlags&, const SeparationFlags&) = default;
};

/// Regularity and normality follow Kelley: no T1 axiom is assumed.
[[nodiscard]] SeparationFlags separation_flags(const FiniteSpace& space);

/// Disjoint opens (U, V) with a in U and b in V, for a disjoint from the closed
/// set b in a regular space. Returns the lexicographically smallest such pair.
[[nodiscard]] std::pair<Subset, Subset> separate(const FiniteSpace& space, Subset a, Subset b);

/// Writes the closed set k as K1 u K2 with K1 in u1 and K2 in u2: with
/// L_i = k \ u_i and (V1, V2) = separate(L1, L2), K_i = k \ V_i.
[[nodiscard]] std::pair<Subset, Subset> split_compact(const FiniteSpace& space, Subset k, Subset u1,
                                                      Subset u2);

/// Open U and closed compact L with k in U in L, assembled from the minimal
/// neighbourhood of each point of k and its closure.
[[nodiscard]] std::pair<Subset, Subset> closed_compact_sandwich(const FiniteSpace& space, Subset k);

/// A rational value per point.
struct PointFunction {
  std::vector<Rational> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  const Rational& operator()(std::size_t x) const { return values.at(x); }

  static PointFunction constant(std::size_t n, const Rational& c) { return {std::vector<Rational>(n, c)}; }
  static PointFunction indicator(std::size_t n, Subset s);

  friend bool operator==(const PointFunction&, const PointFunction&) = default;
};

/// Continuity into the reals: with a finite image the subspace topology on the
/// image is discrete, so every level set has to be open.
[[nodiscard]] bool is_continuous(const FiniteSpace& space, const PointFunction& f);

/// Points where f is nonzero.
[[nodiscard]] Subset support(const PointFunction& f);

/// g with 1_k <= g <= 1_u, continuous, with closed support inside u.
[[nodiscard]] PointFunction urysohn_finite(const FiniteSpace& space, Subset k, Subset u);

/// Default cap for `enumerate_topologies`.
inline constexpr std::size_t kDefaultMaxTopologyPoints = 4;
/// Hard cap: 7 points would mean 9.5 million topologies.
inline constexpr std::size_t kHardMaxTopologyPoints = 6;

/// Every topology on n labelled points, ordered by their sorted open families.
[[nodiscard]] std::vector<FiniteSpace> enumerate_topologies(
    std::size_t n, std::size_t max_points = kDefaultMaxTopologyPoints);

}  // namespace haarlab
