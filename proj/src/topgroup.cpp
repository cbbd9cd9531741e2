#include "haarlab/topgroup.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <string>

namespace haarlab {

namespace {

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

/// Atoms of the algebra generated by the opens: points are equivalent when no
/// minimal neighbourhood tells them apart. Ordered with the class of
/// `anchor` first, the rest by smallest member.
std::vector<Subset> generated_algebra_atoms(const FiniteSpace& space, std::size_t anchor) {
  const std::size_t n = space.size();
  std::vector<Subset> classes;
  Subset assigned;
  for (std::size_t x = 0; x < n; ++x) {
    if (assigned.contains(x)) continue;
    Subset cls;
    for (std::size_t y = x; y < n; ++y) {
      bool same = true;
      for (std::size_t z = 0; z < n && same; ++z) {
        const Subset u = space.minimal_neighborhood(z);
        same = u.contains(x) == u.contains(y);
      }
      if (same) cls |= Subset::singleton(y);
    }
    assigned |= cls;
    classes.push_back(cls);
  }
  std::stable_partition(classes.begin(), classes.end(), [&](Subset c) { return c.contains(anchor); });
  return classes;
}

/// Calls f on each union of `atoms` selected by an atom mask: every mask when
/// there are at most `limit` atoms, otherwise each single atom. Returns
/// whether the enumeration was exhaustive.
template <typename F>
bool for_each_union(const std::vector<Subset>& atoms, std::size_t limit, F&& f) {
  auto points_of = [&](Subset atom_mask) {
    Subset s;
    atom_mask.for_each([&](std::size_t i) { s |= atoms[i]; });
    return s;
  };
  if (atoms.size() <= limit) {
    for_each_submask(Subset::full(atoms.size()), [&](Subset m) { f(points_of(m)); });
    return true;
  }
  for (Subset atom : atoms) f(atom);
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<std::size_t>>& table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) fail(ErrorKind::InvalidGroup, "empty Cayley table");
  if (n > kMaxGroupOrder) fail(ErrorKind::TooLarge, "group order " + std::to_string(n) + " exceeds 64");
  FiniteGroup g;
  g.order_ = n;
  g.name_ = std::move(name);
  g.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      fail(ErrorKind::InvalidGroup, "row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                                        " entries, expected " + std::to_string(n));
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) {
        fail(ErrorKind::InvalidGroup, "product " + std::to_string(a) + "*" + std::to_string(b) + " = " +
                                          std::to_string(table[a][b]) + " is not an element");
      }
      g.table_[a * n + b] = static_cast<std::uint8_t>(table[a][b]);
    }
  }
  // Latin square: a b = a c or b a = c a forces b = c.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (g.multiply(a, b) == g.multiply(a, c)) {
          fail(ErrorKind::InvalidGroup, "cancellation fails: " + std::to_string(a) + "*" + std::to_string(b) + " = " +
                                            std::to_string(a) + "*" + std::to_string(c) + " for the triple " +
                                            triple(a, b, c));
        }
        if (g.multiply(b, a) == g.multiply(c, a)) {
          fail(ErrorKind::InvalidGroup, "cancellation fails: " + std::to_string(b) + "*" + std::to_string(a) + " = " +
                                            std::to_string(c) + "*" + std::to_string(a) + " for the triple " +
                                            triple(a, b, c));
        }
      }
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool identity = true;
    for (std::size_t x = 0; x < n && identity; ++x) identity = g.multiply(e, x) == x && g.multiply(x, e) == x;
    if (identity) {
      g.identity_ = e;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::InvalidGroup, "no identity element");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = g.multiply(a, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (g.multiply(ab, c) != g.multiply(a, g.multiply(b, c))) {
          fail(ErrorKind::InvalidGroup, "associativity fails for " + triple(a, b, c));
        }
      }
    }
  }
  g.inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.multiply(a, b) == g.identity_) g.inverse_[a] = b;
    }
    if (g.multiply(g.inverse_[a], a) != g.identity_) {
      fail(ErrorKind::InvalidGroup, "element " + std::to_string(a) + " has no two-sided inverse");
    }
  }
  return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "cyclic group needs n >= 1");
  if (n > kMaxGroupOrder) fail(ErrorKind::TooLarge, "group order " + std::to_string(n) + " exceeds 64");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return from_table(t, "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "dihedral group needs n >= 1");
  if (2 * n > kMaxGroupOrder) fail(ErrorKind::TooLarge, "group order " + std::to_string(2 * n) + " exceeds 64");
  const std::size_t order = 2 * n;
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
      // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
      const std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
      t[x][y] = rot + n * ((b + d) % 2);
    }
  }
  return from_table(t, "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<std::size_t, 3>> perms;
  std::array<std::size_t, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<std::size_t, 3> c{};
      for (std::size_t x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return from_table(t, "S3");
}

FiniteGroup FiniteGroup::quaternion8() {
  // unit products for 1, i, j, k as (sign, unit)
  constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  constexpr std::size_t kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x) {
    for (std::size_t y = 0; y < 8; ++y) {
      const std::size_t ux = x / 2, uy = y / 2;
      int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * kSign[ux][uy];
      t[x][y] = 2 * kUnit[ux][uy] + (sign < 0 ? 1 : 0);
    }
  }
  return from_table(t, "Q8");
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  if (n > kMaxGroupOrder) fail(ErrorKind::TooLarge, "product order " + std::to_string(n) + " exceeds 64");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a = x / h.order(), b = x % h.order(), c = y / h.order(), d = y % h.order();
      t[x][y] = g.multiply(a, c) * h.order() + h.multiply(b, d);
    }
  }
  return from_table(t, g.name() + "x" + h.name());
}

std::vector<std::vector<std::size_t>> FiniteGroup::table() const {
  std::vector<std::vector<std::size_t>> t(order_, std::vector<std::size_t>(order_));
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = multiply(a, b);
  }
  return t;
}

Subset FiniteGroup::left_translate(std::size_t g, Subset s) const {
  Subset out;
  s.for_each([&](std::size_t x) { out |= Subset::singleton(multiply(g, x)); });
  return out;
}

Subset FiniteGroup::right_translate(Subset s, std::size_t g) const {
  Subset out;
  s.for_each([&](std::size_t x) { out |= Subset::singleton(multiply(x, g)); });
  return out;
}

Subset FiniteGroup::inverse_of(Subset s) const {
  Subset out;
  s.for_each([&](std::size_t x) { out |= Subset::singleton(inverse(x)); });
  return out;
}

Subset FiniteGroup::product(Subset a, Subset b) const {
  Subset out;
  a.for_each([&](std::size_t x) { out |= left_translate(x, b); });
  return out;
}

bool FiniteGroup::is_subgroup(Subset s) const {
  if (!s.is_subset_of(elements()) || !s.contains(identity_)) return false;
  return product(s, s).is_subset_of(s) && inverse_of(s).is_subset_of(s);
}

bool FiniteGroup::is_normal_subgroup(Subset s) const {
  if (!is_subgroup(s)) return false;
  for (std::size_t g = 0; g < order_; ++g) {
    if (right_translate(left_translate(g, s), inverse(g)) != s) return false;
  }
  return true;
}

Subset FiniteGroup::generated_subgroup(Subset generators) const {
  Subset h = generators | Subset::singleton(identity_);
  while (true) {
    Subset next = h | product(h, h) | inverse_of(h);
    if (next == h) return h;
    h = next;
  }
}

std::vector<Subset> FiniteGroup::conjugacy_classes() const {
  std::vector<Subset> classes;
  Subset seen;
  for (std::size_t x = 0; x < order_; ++x) {
    if (seen.contains(x)) continue;
    Subset cls;
    for (std::size_t g = 0; g < order_; ++g) cls |= Subset::singleton(multiply(multiply(g, x), inverse(g)));
    seen |= cls;
    classes.push_back(cls);
  }
  return classes;
}

std::vector<Subset> FiniteGroup::normal_subgroups() const {
  // Every normal subgroup is generated by the conjugacy classes it contains,
  // so joining classes one at a time reaches all of them.
  const auto classes = conjugacy_classes();
  std::set<Mask> seen;
  std::deque<Subset> queue;
  const Subset trivial_subgroup = Subset::singleton(identity_);
  seen.insert(trivial_subgroup.bits());
  queue.push_back(trivial_subgroup);
  std::vector<Subset> out;
  while (!queue.empty()) {
    Subset n = queue.front();
    queue.pop_front();
    out.push_back(n);
    for (Subset cls : classes) {
      if (cls.is_subset_of(n)) continue;
      Subset joined = generated_subgroup(n | cls);
      if (seen.insert(joined.bits()).second) queue.push_back(joined);
    }
  }
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// ---------------------------------------------------------------------------
// FiniteTopGroup

bool FiniteTopGroup::is_borel(Subset s) const {
  if (!space_.valid(s)) return false;
  for (Subset atom : atoms_) {
    if (atom.intersects(s) && !atom.is_subset_of(s)) return false;
  }
  return true;
}

Subset FiniteTopGroup::atoms_to_points(Subset atom_mask) const {
  if (!atom_mask.is_subset_of(Subset::full(atoms_.size()))) {
    fail(ErrorKind::InvalidArgument, "atom mask " + to_string(atom_mask) + " out of range");
  }
  Subset s;
  atom_mask.for_each([&](std::size_t i) { s |= atoms_[i]; });
  return s;
}

Subset FiniteTopGroup::points_to_atoms(Subset points) const {
  require_valid(space_, points, "set");
  Subset mask;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].is_subset_of(points)) {
      mask |= Subset::singleton(i);
    } else if (atoms_[i].intersects(points)) {
      fail(ErrorKind::NotMeasurable, to_string(points) + " splits the atom " + to_string(atoms_[i]));
    }
  }
  return mask;
}

std::size_t FiniteTopGroup::left_atom_translate(std::size_t g, std::size_t atom) const {
  return atom_of_[group_.multiply(g, atoms_.at(atom).first())];
}

std::size_t FiniteTopGroup::right_atom_translate(std::size_t atom, std::size_t g) const {
  return atom_of_[group_.multiply(atoms_.at(atom).first(), g)];
}

std::size_t FiniteTopGroup::atom_inverse(std::size_t atom) const {
  return atom_of_[group_.inverse(atoms_.at(atom).first())];
}

FiniteTopGroup validate_top_group(FiniteGroup group, FiniteSpace space) {
  const std::size_t n = group.order();
  if (space.size() != n) {
    fail(ErrorKind::InvalidArgument, "space has " + std::to_string(space.size()) + " points but the group has " +
                                         std::to_string(n) + " elements");
  }
  // Continuity at (x, y) means N(x) N(y) lies in every open set around xy,
  // and the smallest of those is N(xy); likewise N(x)^{-1} in N(x^{-1}).
  for (std::size_t x = 0; x < n; ++x) {
    const Subset target = space.minimal_neighborhood(group.inverse(x));
    if (!group.inverse_of(space.minimal_neighborhood(x)).is_subset_of(target)) {
      throw ContinuityError(ErrorKind::NotContinuousInversion, x, x, target,
                            "preimage of " + to_string(target) + " under inversion is not a neighbourhood of " +
                                std::to_string(x));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Subset target = space.minimal_neighborhood(group.multiply(x, y));
      if (!group.product(space.minimal_neighborhood(x), space.minimal_neighborhood(y)).is_subset_of(target)) {
        throw ContinuityError(ErrorKind::NotContinuousMultiplication, x, y, target,
                              "preimage of " + to_string(target) + " under multiplication is not a "
                              "neighbourhood of (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }

  FiniteTopGroup g(std::move(group), std::move(space));
  const FiniteGroup& grp = g.group_;
  const FiniteSpace& sp = g.space_;
  const Subset n_closure = closure(sp, Subset::singleton(grp.identity()));
  if (!grp.is_normal_subgroup(n_closure)) {
    inconsistency("closure of the identity " + to_string(n_closure) + " is not a normal subgroup");
  }
  for (std::size_t x = 0; x < n; ++x) {
    const Subset coset = grp.left_translate(x, n_closure);
    if (closure(sp, Subset::singleton(x)) != coset) {
      inconsistency("closure of " + std::to_string(x) + " differs from its coset " + to_string(coset));
    }
    if (sp.minimal_neighborhood(x) != coset) {
      inconsistency("minimal neighbourhood of " + std::to_string(x) + " differs from its coset " + to_string(coset));
    }
  }
  g.closure_of_identity_ = n_closure;
  g.atom_of_.assign(n, 0);
  Subset seen;
  std::vector<Subset> cosets;
  for (std::size_t x = 0; x < n; ++x) {
    if (seen.contains(x)) continue;
    const Subset coset = grp.left_translate(x, n_closure);
    seen |= coset;
    cosets.push_back(coset);
  }
  std::stable_partition(cosets.begin(), cosets.end(), [&](Subset c) { return c.contains(grp.identity()); });
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    cosets[i].for_each([&](std::size_t x) { g.atom_of_[x] = i; });
  }
  g.atoms_ = std::move(cosets);
  return g;
}

FiniteTopGroup coset_topology(const FiniteGroup& group, Subset normal_subgroup) {
  if (!group.is_normal_subgroup(normal_subgroup)) {
    fail(ErrorKind::InvalidArgument, to_string(normal_subgroup) + " is not a normal subgroup of " +
                                         (group.name().empty() ? std::string("the group") : group.name()));
  }
  std::vector<Subset> nbhd;
  for (std::size_t x = 0; x < group.order(); ++x) nbhd.push_back(group.left_translate(x, normal_subgroup));
  return validate_top_group(group, FiniteSpace::from_minimal_neighborhoods(std::move(nbhd)));
}

Subset identity_closure(const FiniteTopGroup& g) { return g.identity_closure(); }

std::vector<FiniteTopGroup> group_topologies(const FiniteGroup& group, std::size_t max_order) {
  if (group.order() > max_order) {
    fail(ErrorKind::TooLarge, "group order " + std::to_string(group.order()) + " exceeds the cap of " +
                                  std::to_string(max_order));
  }
  std::vector<FiniteTopGroup> out;
  for (Subset n : group.normal_subgroups()) {
    FiniteTopGroup tg = coset_topology(group, n);
    if (identity_closure(tg) != n) {
      inconsistency("topology of " + to_string(n) + " has identity closure " + to_string(identity_closure(tg)));
    }
    out.push_back(std::move(tg));
  }
  return out;
}

FiniteTopGroup product_group(const FiniteTopGroup& g, const FiniteTopGroup& h, std::size_t max_order) {
  const std::size_t n = g.order() * h.order();
  if (n > std::min(max_order, kMaxGroupOrder)) {
    fail(ErrorKind::TooLarge, "product order " + std::to_string(n) + " exceeds the cap");
  }
  FiniteGroup group = FiniteGroup::direct_product(g.group(), h.group());
  std::vector<Subset> nbhd(n);
  for (std::size_t x = 0; x < n; ++x) {
    const Subset ua = g.space().minimal_neighborhood(x / h.order());
    const Subset ub = h.space().minimal_neighborhood(x % h.order());
    ua.for_each([&](std::size_t a) {
      ub.for_each([&](std::size_t b) { nbhd[x] |= Subset::singleton(a * h.order() + b); });
    });
  }
  return validate_top_group(std::move(group), FiniteSpace::from_minimal_neighborhoods(std::move(nbhd)));
}

// ---------------------------------------------------------------------------
// Quotient

Subset QuotientData::image(Subset points) const {
  require_valid(base.space(), points, "set");
  Subset out;
  points.for_each([&](std::size_t x) { out |= Subset::singleton(proj[x]); });
  return out;
}

Subset QuotientData::preimage(Subset quotient_points) const {
  require_valid(quotient.space(), quotient_points, "quotient set");
  Subset out;
  for (std::size_t x = 0; x < proj.size(); ++x) {
    if (quotient_points.contains(proj[x])) out |= Subset::singleton(x);
  }
  return out;
}

QuotientData quotient(const FiniteTopGroup& g) {
  const FiniteGroup& grp = g.group();
  const std::size_t n = g.order();
  const std::size_t m = g.atom_count();
  std::vector<std::size_t> proj(n);
  std::vector<std::size_t> labels(m);
  for (std::size_t x = 0; x < n; ++x) proj[x] = g.atom_of(x);
  for (std::size_t i = 0; i < m; ++i) labels[i] = g.atoms()[i].first();

  std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) table[i][j] = proj[grp.multiply(labels[i], labels[j])];
  }
  bool homomorphism = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (proj[grp.multiply(x, y)] != table[proj[x]][proj[y]]) homomorphism = false;
    }
  }
  if (!homomorphism) inconsistency("coset multiplication is not well defined");
  FiniteGroup qgroup = FiniteGroup::from_table(table, grp.name().empty() ? "" : grp.name() + "/N");

  // Quotient topology: V is open iff its preimage is open. Minimal
  // neighbourhoods are saturated, so their images are the quotient's.
  std::vector<Subset> qnbhd(m);
  for (std::size_t x = 0; x < n; ++x) {
    g.space().minimal_neighborhood(x).for_each([&](std::size_t y) { qnbhd[proj[x]] |= Subset::singleton(proj[y]); });
  }
  for (std::size_t i = 0; i < m; ++i) {
    Subset pre;
    for (std::size_t x = 0; x < n; ++x) {
      if (qnbhd[i].contains(proj[x])) pre |= Subset::singleton(x);
    }
    if (!g.space().is_open(pre)) inconsistency("image of a minimal neighbourhood has a non-open preimage");
  }
  FiniteTopGroup qtop = validate_top_group(std::move(qgroup), FiniteSpace::from_minimal_neighborhoods(qnbhd));

  QuotientData q{g, std::move(qtop), std::move(proj), std::move(labels), {}};
  const FiniteSpace& base_space = q.base.space();
  const FiniteSpace& qspace = q.quotient.space();
  const std::vector<Subset> base_atoms = generated_algebra_atoms(base_space, grp.identity());
  const std::vector<Subset> quotient_atoms = generated_algebra_atoms(qspace, q.quotient.group().identity());

  bool surjective = q.image(base_space.full()) == qspace.full();
  q.checks.push_back({"hom", "pi is a surjective group homomorphism", homomorphism && surjective, true});

  {
    bool holds = true;
    bool exhaustive = for_each_union(base_atoms, kExhaustiveAtoms, [&](Subset u) {
      if (base_space.is_open(u) && !qspace.is_open(q.image(u))) holds = false;
    });
    for (std::size_t x = 0; x < n; ++x) {
      holds = holds && qspace.is_open(q.image(base_space.minimal_neighborhood(x)));
    }
    q.checks.push_back({"i", "pi is open", holds, exhaustive});
  }
  q.checks.push_back({"ii", "the quotient is Hausdorff", separation_flags(qspace).hausdorff, true});
  {
    bool holds = true;
    bool exhaustive = for_each_union(base_atoms, kExhaustiveAtoms, [&](Subset c) {
      if (base_space.is_closed(c) && !qspace.is_closed(q.image(c))) holds = false;
    });
    q.checks.push_back({"iii", "pi is closed", holds, exhaustive});
  }
  q.checks.push_back({"iv", "the quotient is locally compact", separation_flags(qspace).locally_compact, true});
  {
    // every subset of the finite quotient is compact
    bool holds = true;
    bool exhaustive = for_each_union(quotient_atoms, kExhaustiveAtoms, [&](Subset c) {
      const Subset k = q.preimage(c);
      if (!base_space.is_closed(k) || q.image(k) != c) holds = false;
    });
    q.checks.push_back({"v", "every compact C has a closed compact K with pi(K) = C", holds, exhaustive});
  }
  {
    bool holds = true;
    bool exhaustive = base_atoms.size() <= kExhaustiveAtoms;
    if (exhaustive) {
      std::set<Mask> images;
      for (Subset u : base_space.opens()) images.insert(q.image(u).bits());
      std::set<Mask> qopens;
      for (Subset v : qspace.opens()) qopens.insert(v.bits());
      holds = images == qopens;
    } else {
      for (std::size_t x = 0; x < n; ++x) {
        holds = holds && q.image(base_space.minimal_neighborhood(x)) == qspace.minimal_neighborhood(q.proj[x]);
      }
    }
    q.checks.push_back({"vi", "the quotient topology is the image of the topology", holds, exhaustive});
  }
  {
    bool holds = true;
    bool exhaustive = base_atoms.size() <= kExhaustiveAtoms;
    if (exhaustive) {
      std::set<Mask> images;
      for_each_union(base_atoms, kExhaustiveAtoms, [&](Subset e) { images.insert(q.image(e).bits()); });
      std::set<Mask> qborel;
      for_each_union(quotient_atoms, kExhaustiveAtoms, [&](Subset f) { qborel.insert(f.bits()); });
      holds = images == qborel;
    } else {
      std::set<Mask> images;
      for (Subset a : base_atoms) images.insert(q.image(a).bits());
      std::set<Mask> qatoms;
      for (Subset a : quotient_atoms) qatoms.insert(a.bits());
      holds = images == qatoms && base_atoms.size() == quotient_atoms.size();
    }
    q.checks.push_back({"vii", "the quotient Borel sets are the images of Borel sets", holds, exhaustive});
  }
  for (const auto& check : q.checks) {
    if (!check.holds) inconsistency("quotient statement (" + check.id + ") fails: " + check.statement);
  }
  return q;
}

BorelAtoms borel_atoms(const FiniteTopGroup& g) {
  const FiniteGroup& grp = g.group();
  const FiniteSpace& space = g.space();
  const std::vector<Subset> algebra = generated_algebra_atoms(space, grp.identity());
  if (algebra != g.atoms()) inconsistency("Borel atoms differ from the cosets of the identity closure");
  for (Subset atom : algebra) {
    if (!space.is_open(atom) || !space.is_closed(atom)) inconsistency("atom " + to_string(atom) + " is not clopen");
  }

  // pi through point closures: x -> smallest member of closure{x}, which
  // coincides with the coset x N.
  std::vector<std::size_t> closure_label(g.order());
  std::vector<Subset> point_closure(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    point_closure[x] = closure(space, Subset::singleton(x));
    closure_label[x] = point_closure[x].first();
  }
  auto pi = [&](Subset e) {
    Subset out;
    e.for_each([&](std::size_t x) { out |= Subset::singleton(closure_label[x]); });
    return out;
  };
  auto pi_inverse = [&](Subset labels) {
    Subset out;
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (labels.contains(closure_label[x])) out |= Subset::singleton(x);
    }
    return out;
  };
  auto saturated = [&](Subset e) {
    bool ok = true;
    e.for_each([&](std::size_t x) { ok = ok && point_closure[x].is_subset_of(e); });
    return ok;
  };

  BorelAtoms out{algebra, {}};
  {
    bool holds = true;
    bool exhaustive = for_each_union(algebra, kExhaustiveAtoms, [&](Subset u) {
      if (space.is_open(u) && !saturated(u)) holds = false;
    });
    for (std::size_t x = 0; x < g.order(); ++x) holds = holds && saturated(space.minimal_neighborhood(x));
    out.checks.push_back({"viii", "open sets contain the closure of each of their points", holds, exhaustive});
  }
  {
    bool holds = true;
    bool exhaustive = for_each_union(algebra, kExhaustiveAtoms, [&](Subset e) { holds = holds && saturated(e); });
    out.checks.push_back({"ix", "Borel sets contain the closure of each of their points", holds, exhaustive});
  }

  // Pair statements: E1 ranges over the atoms when the family is large, which
  // suffices because each statement is stable under unions in E1.
  bool disjoint_ok = true;
  bool inclusion_ok = true;
  bool equality_ok = true;
  bool pairs_exhaustive = algebra.size() <= kExhaustivePairAtoms;
  auto check_pair = [&](Subset e1, Subset e2) {
    const Subset p1 = pi(e1);
    const Subset p2 = pi(e2);
    if (!e1.intersects(e2) && p1.intersects(p2)) disjoint_ok = false;
    if (p1.is_subset_of(p2) && !e1.is_subset_of(e2)) inclusion_ok = false;
    if (p1 == p2 && e1 != e2) equality_ok = false;
  };
  if (pairs_exhaustive) {
    for_each_union(algebra, kExhaustivePairAtoms, [&](Subset e1) {
      for_each_union(algebra, kExhaustivePairAtoms, [&](Subset e2) { check_pair(e1, e2); });
    });
  } else {
    for (Subset a : algebra) {
      for_each_union(algebra, kExhaustiveAtoms, [&](Subset e2) { check_pair(a, e2); });
    }
  }
  out.checks.push_back({"x", "disjoint Borel sets have disjoint images", disjoint_ok, pairs_exhaustive});
  out.checks.push_back({"xi", "pi(E1) in pi(E2) implies E1 in E2", inclusion_ok, pairs_exhaustive});
  out.checks.push_back({"xii", "pi(E1) = pi(E2) implies E1 = E2", equality_ok, pairs_exhaustive});
  {
    bool holds = true;
    bool exhaustive = for_each_union(algebra, kExhaustiveAtoms, [&](Subset e) { holds = holds && pi_inverse(pi(e)) == e; });
    out.checks.push_back({"sat", "pi^-1(pi(E)) = E for Borel E", holds, exhaustive});
  }
  for (const auto& check : out.checks) {
    if (!check.holds) inconsistency("saturation statement (" + check.id + ") fails: " + check.statement);
  }
  return out;
}

}  // namespace haarlab
