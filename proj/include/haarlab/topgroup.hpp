#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "haarlab/error.hpp"
#include "haarlab/subset.hpp"
#include "haarlab/topology.hpp"

namespace haarlab {

/// Largest group order a subset mask can hold.
inline constexpr std::size_t kMaxGroupOrder = kMaxPoints;

/// Statements quantified over all Borel sets are checked over every union of
/// atoms up to this many atoms, and over the atoms (which generate the Borel
/// sets under disjoint union) beyond it.
inline constexpr std::size_t kExhaustiveAtoms = 16;
/// Same, for statements quantified over pairs of Borel sets.
inline constexpr std::size_t kExhaustivePairAtoms = 8;

/// A group given by its Cayley table on the elements 0..order-1.
class FiniteGroup {
 public:
  /// Validates closure, the Latin-square property, the identity and inverse
  /// laws and associativity; InvalidGroup names the failing triple.
  static FiniteGroup from_table(const std::vector<std::vector<std::size_t>>& table, std::string name = "");

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  /// Symmetries of the regular n-gon (order 2n): element r^i s^j is i + n*j.
  static FiniteGroup dihedral(std::size_t n);
  /// Permutations of {0,1,2} in lexicographic order, composed right to left.
  static FiniteGroup symmetric3();
  /// 1, -1, i, -i, j, -j, k, -k.
  static FiniteGroup quaternion8();
  /// Element (a, b) is a * order(h) + b.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  [[nodiscard]] std::size_t order() const noexcept { return order_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t identity() const noexcept { return identity_; }
  [[nodiscard]] std::size_t multiply(std::size_t a, std::size_t b) const {
    return table_[a * order_ + b];
  }
  [[nodiscard]] std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  [[nodiscard]] Subset elements() const noexcept { return Subset::full(order_); }
  [[nodiscard]] std::vector<std::vector<std::size_t>> table() const;

  /// g s
  [[nodiscard]] Subset left_translate(std::size_t g, Subset s) const;
  /// s g
  [[nodiscard]] Subset right_translate(Subset s, std::size_t g) const;
  /// s^{-1}
  [[nodiscard]] Subset inverse_of(Subset s) const;
  /// a b = { x y : x in a, y in b }
  [[nodiscard]] Subset product(Subset a, Subset b) const;

  [[nodiscard]] bool is_subgroup(Subset s) const;
  [[nodiscard]] bool is_normal_subgroup(Subset s) const;
  [[nodiscard]] Subset generated_subgroup(Subset generators) const;
  [[nodiscard]] std::vector<Subset> conjugacy_classes() const;
  /// Ascending by size, then by mask.
  [[nodiscard]] std::vector<Subset> normal_subgroups() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::size_t identity_ = 0;
  std::vector<std::uint8_t> table_;
  std::vector<std::size_t> inverse_;
  std::string name_;
};

/// A finite group with a topology making multiplication and inversion
/// continuous. Only `validate_top_group` produces these.
class FiniteTopGroup {
 public:
  [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
  [[nodiscard]] const FiniteSpace& space() const noexcept { return space_; }
  [[nodiscard]] std::size_t order() const noexcept { return group_.order(); }

  /// N = closure of the identity.
  [[nodiscard]] Subset identity_closure() const noexcept { return closure_of_identity_; }
  /// N-cosets: the identity coset first, the rest by smallest member.
  [[nodiscard]] const std::vector<Subset>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] std::size_t atom_count() const noexcept { return atoms_.size(); }
  [[nodiscard]] std::size_t atom_of(std::size_t point) const { return atom_of_.at(point); }

  /// Borel sets are exactly the unions of atoms.
  [[nodiscard]] bool is_borel(Subset s) const;
  /// Union of the atoms whose indices are set in `atom_mask`.
  [[nodiscard]] Subset atoms_to_points(Subset atom_mask) const;
  /// Inverse of atoms_to_points; throws NotMeasurable for non-Borel sets.
  [[nodiscard]] Subset points_to_atoms(Subset points) const;

  /// Index of the atom g A for atom index a (left) or A g (right).
  [[nodiscard]] std::size_t left_atom_translate(std::size_t g, std::size_t atom) const;
  [[nodiscard]] std::size_t right_atom_translate(std::size_t atom, std::size_t g) const;
  [[nodiscard]] std::size_t atom_inverse(std::size_t atom) const;

  friend bool operator==(const FiniteTopGroup& a, const FiniteTopGroup& b) {
    return a.group_ == b.group_ && a.space_ == b.space_;
  }

 private:
  friend FiniteTopGroup validate_top_group(FiniteGroup group, FiniteSpace space);
  FiniteTopGroup(FiniteGroup group, FiniteSpace space) : group_(std::move(group)), space_(std::move(space)) {}

  FiniteGroup group_;
  FiniteSpace space_;
  Subset closure_of_identity_;
  std::vector<Subset> atoms_;
  std::vector<std::size_t> atom_of_;
};

/// Discontinuity witness: the preimage of `open` fails to be open at the
/// point (x, y) (for inversion y is unused).
class ContinuityError : public Error {
 public:
  ContinuityError(ErrorKind kind, std::size_t x, std::size_t y, Subset open, const std::string& message)
      : Error(kind, message), x_(x), y_(y), open_(open) {}

  [[nodiscard]] std::size_t x() const noexcept { return x_; }
  [[nodiscard]] std::size_t y() const noexcept { return y_; }
  [[nodiscard]] Subset open() const noexcept { return open_; }

 private:
  std::size_t x_;
  std::size_t y_;
  Subset open_;
};

[[nodiscard]] FiniteTopGroup validate_top_group(FiniteGroup group, FiniteSpace space);

/// Topology whose opens are the unions of cosets of `normal_subgroup`.
[[nodiscard]] FiniteTopGroup coset_topology(const FiniteGroup& group, Subset normal_subgroup);

[[nodiscard]] Subset identity_closure(const FiniteTopGroup& g);

/// Every compatible topology, one per normal subgroup, ascending by the size
/// of the identity closure.
[[nodiscard]] std::vector<FiniteTopGroup> group_topologies(const FiniteGroup& group,
                                                           std::size_t max_order = kMaxGroupOrder);

[[nodiscard]] FiniteTopGroup product_group(const FiniteTopGroup& g, const FiniteTopGroup& h,
                                           std::size_t max_order = kMaxGroupOrder);

/// One verified structural statement about the quotient map.
struct StatementCheck {
  std::string id;
  std::string statement;
  bool holds = false;
  /// False when only the generating atoms were quantified over.
  bool exhaustive = true;
};

/// The quotient G' = G / closure{e} with its projection.
struct QuotientData {
  FiniteTopGroup base;
  FiniteTopGroup quotient;
  /// proj[x] is the quotient element of x; quotient element i is atom i of base.
  std::vector<std::size_t> proj;
  /// Smallest member of each coset.
  std::vector<std::size_t> labels;
  std::vector<StatementCheck> checks;

  [[nodiscard]] Subset image(Subset points) const;
  [[nodiscard]] Subset preimage(Subset quotient_points) const;
};

/// Builds the quotient and verifies statements (i)-(vii); any failure is an
/// internal inconsistency.
[[nodiscard]] QuotientData quotient(const FiniteTopGroup& g);

struct BorelAtoms {
  std::vector<Subset> atoms;
  std::vector<StatementCheck> checks;
};

/// The Borel atoms together with the saturation statements (viii)-(xii).
[[nodiscard]] BorelAtoms borel_atoms(const FiniteTopGroup& g);

}  // namespace haarlab
