#include "haarlab/measure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "haarlab/error.hpp"

namespace haarlab {

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

namespace {

using Matrix = std::vector<std::vector<Rational>>;

/// Basis of { x : A x = 0 }. Rows are folded one at a time into a reduced
/// row echelon basis, so redundant equations cost a few row operations.
std::vector<std::vector<Rational>> nullspace(const Matrix& a, std::size_t cols) {
  std::map<std::size_t, std::vector<Rational>> reduced;  // pivot column -> row
  for (std::vector<Rational> v : a) {
    for (auto& [p, row] : reduced) {
      if (v[p] == 0) continue;
      const Rational factor = v[p];
      for (std::size_t c = 0; c < cols; ++c) {
        if (row[c] != 0) v[c] -= factor * row[c];
      }
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](const Rational& r) { return r != 0; });
    if (lead == v.end()) continue;
    const std::size_t col = static_cast<std::size_t>(lead - v.begin());
    const Rational scale = *lead;
    for (auto& x : v) x /= scale;
    for (auto& [p, row] : reduced) {
      if (row[col] == 0) continue;
      const Rational factor = row[col];
      for (std::size_t c = 0; c < cols; ++c) {
        if (v[c] != 0) row[c] -= factor * v[c];
      }
    }
    reduced.emplace(col, std::move(v));
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (reduced.contains(free)) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (const auto& [p, row] : reduced) v[p] = -row[free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Masses of every union of atoms, indexed by atom mask.
std::vector<Rational> mass_table(const FiniteMeasure& mu) {
  const std::size_t m = mu.atom_mass().size();
  std::vector<Rational> table(std::size_t{1} << m);
  table[0] = 0;
  for (Mask s = 1; s < table.size(); ++s) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(s));
    table[s] = table[s & (s - 1)] + mu.atom_mass(low);
  }
  return table;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteMeasure

FiniteMeasure::FiniteMeasure(FiniteTopGroup group, std::vector<Rational> atom_mass)
    : FiniteMeasure(std::make_shared<const FiniteTopGroup>(std::move(group)), std::move(atom_mass)) {}

FiniteMeasure::FiniteMeasure(std::shared_ptr<const FiniteTopGroup> group, std::vector<Rational> atom_mass)
    : group_(std::move(group)), mass_(std::move(atom_mass)) {
  if (!group_) fail(ErrorKind::InvalidArgument, "measure needs a group");
  if (mass_.size() != group_->atom_count()) {
    fail(ErrorKind::InvalidArgument, "expected " + std::to_string(group_->atom_count()) + " atom masses, got " +
                                         std::to_string(mass_.size()));
  }
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (mass_[i] < 0) {
      fail(ErrorKind::NegativeMass, "atom " + to_string(group_->atoms()[i]) + " has mass " + to_string(mass_[i]));
    }
  }
}

FiniteMeasure FiniteMeasure::zero(const FiniteTopGroup& group) {
  return FiniteMeasure(group, std::vector<Rational>(group.atom_count(), Rational(0)));
}

Rational FiniteMeasure::operator()(Subset borel_set) const {
  Rational sum = 0;
  group_->points_to_atoms(borel_set).for_each([&](std::size_t i) { sum += mass_[i]; });
  return sum;
}

Rational FiniteMeasure::total() const {
  Rational sum = 0;
  for (const auto& m : mass_) sum += m;
  return sum;
}

FiniteMeasure FiniteMeasure::scaled(const Rational& factor) const {
  std::vector<Rational> out = mass_;
  for (auto& m : out) m *= factor;
  return FiniteMeasure(group_, std::move(out));
}

bool operator==(const FiniteMeasure& a, const FiniteMeasure& b) {
  return (a.group_ == b.group_ || *a.group_ == *b.group_) && a.mass_ == b.mass_;
}

void require_on(const FiniteTopGroup& g, const FiniteMeasure& mu, const char* what) {
  if (&mu.group() != &g && !(mu.group() == g)) {
    fail(ErrorKind::MeasureSpaceMismatch, std::string(what) + " does not live on this group");
  }
}

// ---------------------------------------------------------------------------
// Haar verification

HaarReport is_haar(const FiniteTopGroup& g, const FiniteMeasure& mu, Side side) {
  require_on(g, mu, "measure");
  const FiniteSpace& space = g.space();
  const std::size_t m = g.atom_count();

  HaarReport report;
  report.side = side;
  auto witness = [&](const std::string& axiom, Subset set, std::optional<std::size_t> element) {
    for (const auto& w : report.witnesses) {
      if (w.axiom == axiom) return;
    }
    report.witnesses.push_back({axiom, set, element});
  };

  report.nonzero = mu.total() > 0;
  if (!report.nonzero) witness("nonzero", space.full(), std::nullopt);

  // Borel sets: every union of atoms, or the atoms alone for large groups
  // (translations permute atoms and mu is additive, so atoms decide).
  const bool all_sets = m <= kExhaustiveAtoms;
  std::vector<Rational> table;
  if (all_sets) table = mass_table(mu);
  auto mass_of_atoms = [&](Subset atom_mask) {
    if (all_sets) return table[atom_mask.bits()];
    Rational sum = 0;
    atom_mask.for_each([&](std::size_t i) { sum += mu.atom_mass(i); });
    return sum;
  };
  auto same_mass = [&](Subset a, Subset b) {
    return all_sets ? table[a.bits()] == table[b.bits()] : mass_of_atoms(a) == mass_of_atoms(b);
  };
  std::vector<Subset> scope;
  if (all_sets) {
    for_each_submask(Subset::full(m), [&](Subset mask) { scope.push_back(mask); });
  } else {
    for (std::size_t i = 0; i < m; ++i) scope.push_back(Subset::singleton(i));
  }
  report.exhaustive = all_sets;

  // x and xn act alike for n in N, so one element per atom decides; the
  // smallest member of each atom, in ascending order, keeps the first
  // failing element first.
  std::vector<std::size_t> reps;
  for (Subset a : g.atoms()) reps.push_back(a.first());
  std::sort(reps.begin(), reps.end());
  auto permute = [](Subset mask, const std::vector<std::size_t>& perm) {
    Subset out;
    mask.for_each([&](std::size_t i) { out |= Subset::singleton(perm[i]); });
    return out;
  };
  std::vector<std::vector<std::size_t>> left_perm, right_perm;
  for (std::size_t x : reps) {
    auto& l = left_perm.emplace_back(m);
    auto& r = right_perm.emplace_back(m);
    for (std::size_t i = 0; i < m; ++i) {
      l[i] = g.left_atom_translate(x, i);
      r[i] = g.right_atom_translate(i, x);
    }
  }
  report.left_invariant = true;
  report.right_invariant = true;
  for (Subset mask : scope) {
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if (!same_mass(permute(mask, left_perm[k]), mask)) {
        report.left_invariant = false;
        if (side == Side::Left) witness("left_invariant", g.atoms_to_points(mask), reps[k]);
      }
      if (!same_mass(permute(mask, right_perm[k]), mask)) {
        report.right_invariant = false;
        if (side == Side::Right) witness("right_invariant", g.atoms_to_points(mask), reps[k]);
      }
    }
  }

  // Masses are exact rationals, hence finite on every closed compact set;
  // the scan is kept so the axiom is read off the closed sets themselves.
  report.locally_finite = true;
  for (Subset mask : scope) {
    if (space.is_closed(g.atoms_to_points(mask))) (void)mass_of_atoms(mask);
  }

  report.outer_regular = true;
  report.inner_regular_on_opens = true;
  if (m <= kExhaustiveRegularityAtoms) {
    const std::size_t count = std::size_t{1} << m;
    std::vector<char> open(count), closed(count);
    for (Mask s = 0; s < count; ++s) {
      const Subset pts = g.atoms_to_points(Subset(s));
      open[s] = space.is_open(pts);
      closed[s] = space.is_closed(pts);
    }
    const Subset all = Subset::full(m);
    for (Mask s = 0; s < count; ++s) {
      // inf over open supersets
      const Rational* best = nullptr;
      for_each_submask(all - Subset(s), [&](Subset extra) {
        const Mask sup = s | extra.bits();
        if (open[sup] && (best == nullptr || table[sup] < *best)) best = &table[sup];
      });
      if (best == nullptr || *best != table[s]) {
        report.outer_regular = false;
        witness("outer_regular", g.atoms_to_points(Subset(s)), std::nullopt);
      }
      if (!open[s]) continue;
      // sup over closed compact subsets
      const Rational* top = nullptr;
      for_each_submask(Subset(s), [&](Subset sub) {
        if (closed[sub.bits()] && (top == nullptr || *top < table[sub.bits()])) top = &table[sub.bits()];
      });
      if (top == nullptr || *top != table[s]) {
        report.inner_regular_on_opens = false;
        witness("inner_regular_on_opens", g.atoms_to_points(Subset(s)), std::nullopt);
      }
    }
  } else {
    // Nonnegative masses make mu monotone, so the infimum is attained at the
    // smallest open superset and the supremum at the largest closed subset.
    report.exhaustive = false;
    for (Subset mask : scope) {
      const Subset e = g.atoms_to_points(mask);
      const Subset hull = space.open_hull(e);
      if (mu(hull) != mass_of_atoms(mask)) {
        report.outer_regular = false;
        witness("outer_regular", e, std::nullopt);
      }
      if (space.is_open(e)) {
        const Subset inner = space.complement(space.open_hull(space.complement(e)));
        if (mu(inner) != mass_of_atoms(mask)) {
          report.inner_regular_on_opens = false;
          witness("inner_regular_on_opens", e, std::nullopt);
        }
      }
    }
  }
  return report;
}

bool is_radon(const FiniteTopGroup& g, const FiniteMeasure& mu) {
  require_on(g, mu, "measure");
  const FiniteSpace& space = g.space();
  auto regular_at = [&](Subset e) {
    if (mu(space.open_hull(e)) != mu(e)) return false;
    return !space.is_open(e) || mu(space.complement(space.open_hull(space.complement(e)))) == mu(e);
  };
  // atoms are clopen and disjoint, so regularity on atoms extends to their unions
  return std::all_of(g.atoms().begin(), g.atoms().end(), regular_at);
}

FiniteMeasure canonical_haar(const FiniteTopGroup& g) {
  return FiniteMeasure(g, std::vector<Rational>(g.atom_count(), Rational(1)));
}

HaarSolutionSpace haar_solution_space(const FiniteTopGroup& g, Side side) {
  const std::size_t m = g.atom_count();
  Matrix rows;
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = side == Side::Left ? g.left_atom_translate(x, i) : g.right_atom_translate(i, x);
      if (i == j) continue;
      std::vector<Rational> row(m, Rational(0));
      row[j] = 1;
      row[i] = -1;
      rows.push_back(std::move(row));
    }
  }
  HaarSolutionSpace out;
  auto basis = nullspace(rows, m);
  out.dimension = basis.size();
  auto shared = std::make_shared<const FiniteTopGroup>(g);
  for (auto& v : basis) {
    const bool any_negative = std::any_of(v.begin(), v.end(), [](const Rational& r) { return r < 0; });
    const bool any_positive = std::any_of(v.begin(), v.end(), [](const Rational& r) { return r > 0; });
    if (any_negative && any_positive) inconsistency("invariant mass vector with mixed signs");
    const Rational lead = *std::find_if(v.begin(), v.end(), [](const Rational& r) { return r != 0; });
    for (auto& r : v) r /= lead;
    out.basis.emplace_back(shared, std::move(v));
  }
  return out;
}

std::optional<Rational> proportionality(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  require_on(mu.group(), nu, "second measure");
  const Rational total = mu.total();
  if (total == 0) return std::nullopt;
  Rational a = nu.total() / total;
  if (mu.scaled(a) == nu) return a;
  return std::nullopt;
}

FiniteMeasure invert_measure(const FiniteTopGroup& g, const FiniteMeasure& mu) {
  require_on(g, mu, "measure");
  std::vector<Rational> out(g.atom_count());
  for (std::size_t i = 0; i < g.atom_count(); ++i) {
    out[i] = mu(g.group().inverse_of(g.atoms()[i]));
  }
  return FiniteMeasure(mu.group_ptr(), std::move(out));
}

FiniteMeasure pushforward(const QuotientData& q, const FiniteMeasure& mu) {
  require_on(q.base, mu, "measure");
  std::vector<Rational> out(q.quotient.atom_count());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = mu(q.preimage(q.quotient.atoms()[j]));
  return FiniteMeasure(q.quotient, std::move(out));
}

FiniteMeasure pullback(const QuotientData& q, const FiniteMeasure& nu) {
  require_on(q.quotient, nu, "measure");
  const FiniteTopGroup& base = q.base;
  std::vector<Rational> out(base.atom_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = nu(q.image(base.atoms()[i]));
  FiniteMeasure bar(base, std::move(out));

  // Replay the regularity equalities for the pulled-back measure: the
  // infimum over quotient opens around pi(A) equals the infimum of
  // bar-mass over opens V around A, and likewise for closed compact sets
  // inside an open U.
  const std::size_t m = base.atom_count();
  if (m <= kPullbackReplayAtoms) {
    const FiniteSpace& space = base.space();
    const FiniteSpace& qspace = q.quotient.space();
    const Subset all = Subset::full(m);
    for_each_submask(all, [&](Subset mask) {
      const Subset a = base.atoms_to_points(mask);
      const Subset pa = q.image(a);
      std::optional<Rational> inf_quotient;
      for_each_submask(qspace.full() - pa, [&](Subset extra) {
        const Subset u = pa | extra;
        if (qspace.is_open(u) && (!inf_quotient || nu(u) < *inf_quotient)) inf_quotient = nu(u);
      });
      std::optional<Rational> inf_base;
      for_each_submask(all - mask, [&](Subset extra) {
        const Subset v = base.atoms_to_points(mask | extra);
        if (space.is_open(v) && (!inf_base || bar(v) < *inf_base)) inf_base = bar(v);
      });
      if (!inf_quotient || !inf_base || *inf_quotient != bar(a) || *inf_base != bar(a)) {
        inconsistency("outer regularity of the pullback fails on " + to_string(a));
      }
      if (!space.is_open(a)) return;
      std::optional<Rational> sup_quotient;
      for_each_submask(pa, [&](Subset k) {
        if (!sup_quotient || *sup_quotient < nu(k)) sup_quotient = nu(k);
      });
      std::optional<Rational> sup_base;
      for_each_submask(mask, [&](Subset sub) {
        const Subset c = base.atoms_to_points(sub);
        if (space.is_closed(c) && (!sup_base || *sup_base < bar(c))) sup_base = bar(c);
      });
      if (!sup_quotient || !sup_base || *sup_quotient != bar(a) || *sup_base != bar(a)) {
        inconsistency("inner regularity of the pullback fails on " + to_string(a));
      }
    });
  }
  return bar;
}

// ---------------------------------------------------------------------------
// Integration

Rational integrate(const FiniteTopGroup& g, const PointFunction& f, const FiniteMeasure& mu) {
  require_on(g, mu, "measure");
  if (f.size() != g.order()) {
    fail(ErrorKind::InvalidArgument, "function has " + std::to_string(f.size()) + " values for a group of order " +
                                         std::to_string(g.order()));
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < g.atom_count(); ++i) {
    const Subset atom = g.atoms()[i];
    const Rational& value = f(atom.first());
    atom.for_each([&](std::size_t x) {
      if (f(x) != value) fail(ErrorKind::NotMeasurable, "function is not constant on the atom " + to_string(atom));
    });
    sum += value * mu.atom_mass(i);
  }
  return sum;
}

PointFunction translate(const FiniteTopGroup& g, const PointFunction& f, std::size_t element, Side side) {
  if (f.size() != g.order()) fail(ErrorKind::InvalidArgument, "function size does not match the group");
  PointFunction out = f;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const std::size_t moved = side == Side::Left ? g.group().multiply(element, x) : g.group().multiply(x, element);
    out.values[x] = f(moved);
  }
  return out;
}

FubiniResult fubini_check(const FiniteTopGroup& g, const FiniteTopGroup& h, const PointFunction& f,
                          const FiniteMeasure& mu, const FiniteMeasure& lam) {
  require_on(g, mu, "mu");
  require_on(h, lam, "lambda");
  const std::size_t ng = g.order();
  const std::size_t nh = h.order();
  if (f.size() != ng * nh) {
    fail(ErrorKind::InvalidArgument, "function has " + std::to_string(f.size()) + " values, expected " +
                                         std::to_string(ng * nh));
  }
  if (!is_radon(g, mu)) fail(ErrorKind::NotRadon, "mu is not a Radon measure");
  if (!is_radon(h, lam)) fail(ErrorKind::NotRadon, "lambda is not a Radon measure");

  auto slice_y = [&](std::size_t x) {
    PointFunction s{std::vector<Rational>(nh)};
    for (std::size_t y = 0; y < nh; ++y) s.values[y] = f(x * nh + y);
    return s;
  };
  auto slice_x = [&](std::size_t y) {
    PointFunction s{std::vector<Rational>(ng)};
    for (std::size_t x = 0; x < ng; ++x) s.values[x] = f(x * nh + y);
    return s;
  };

  PointFunction inner_over_h{std::vector<Rational>(ng)};
  for (std::size_t x = 0; x < ng; ++x) inner_over_h.values[x] = integrate(h, slice_y(x), lam);
  PointFunction inner_over_g{std::vector<Rational>(nh)};
  for (std::size_t y = 0; y < nh; ++y) inner_over_g.values[y] = integrate(g, slice_x(y), mu);
  return {integrate(g, inner_over_h, mu), integrate(h, inner_over_g, lam)};
}

bool riesz_check(const FiniteTopGroup& g, const FiniteMeasure& mu1, const FiniteMeasure& mu2) {
  require_on(g, mu1, "first measure");
  require_on(g, mu2, "second measure");
  if (!is_radon(g, mu1) || !is_radon(g, mu2)) fail(ErrorKind::NotRadon, "riesz_check needs Radon measures");
  for (Subset atom : g.atoms()) {
    const PointFunction f = PointFunction::indicator(g.order(), atom);
    if (integrate(g, f, mu1) != integrate(g, f, mu2)) return false;
  }
  return true;
}

PositivityReport positivity_report(const FiniteTopGroup& g, const FiniteMeasure& mu) {
  if (!is_haar(g, mu, Side::Left).is_left_haar()) fail(ErrorKind::NotHaar, "measure is not a left Haar measure");
  const FiniteSpace& space = g.space();
  PositivityReport report;
  const std::size_t m = g.atom_count();
  report.exhaustive = m <= kExhaustiveAtoms;
  std::vector<Subset> scope;
  if (report.exhaustive) {
    for_each_submask(Subset::full(m), [&](Subset mask) { scope.push_back(g.atoms_to_points(mask)); });
  } else {
    scope = g.atoms();
    scope.push_back(space.full());
  }

  for (Subset s : scope) {
    if (space.is_closed(s) && mu(s) > 0) report.closed_compact_positive = true;
  }
  report.opens_positive = true;
  for (Subset s : scope) {
    if (!s.empty() && space.is_open(s) && mu(s) <= 0) {
      report.opens_positive = false;
      if (!report.witness) report.witness = s;
    }
  }
  // Any nonnegative nonzero measurable f dominates a positive multiple of
  // some atom indicator.
  report.integrals_positive = true;
  for (Subset atom : g.atoms()) {
    if (integrate(g, PointFunction::indicator(g.order(), atom), mu) <= 0) {
      report.integrals_positive = false;
      if (!report.witness) report.witness = atom;
    }
  }
  return report;
}

FiniteMeasure product_haar(const FiniteTopGroup& x, const FiniteTopGroup& h, const FiniteMeasure& mu_x) {
  require_on(x, mu_x, "measure");
  if (h.identity_closure() != h.group().elements()) {
    fail(ErrorKind::InvalidArgument, "the second factor must carry the indiscrete topology");
  }
  FiniteTopGroup product = product_group(x, h);
  std::vector<Rational> out(product.atom_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Subset projected;
    product.atoms()[i].for_each([&](std::size_t p) { projected |= Subset::singleton(p / h.order()); });
    out[i] = mu_x(projected);
  }
  return FiniteMeasure(std::move(product), std::move(out));
}

}  // namespace haarlab
