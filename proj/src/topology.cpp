#include "haarlab/topology.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "haarlab/error.hpp"

namespace haarlab {

std::string to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t p) {
    if (!first) out += ",";
    out += std::to_string(p);
    first = false;
  });
  return out + "}";
}

void require_valid(const FiniteSpace& space, Subset s, const char* what) {
  if (!space.valid(s)) {
    fail(ErrorKind::InvalidArgument, std::string(what) + " " + to_string(s) + " names points outside a " +
                                         std::to_string(space.size()) + "-point space");
  }
}

FiniteSpace FiniteSpace::from_opens(std::size_t n, std::vector<Subset> opens) {
  if (n > kMaxPoints) fail(ErrorKind::TooLarge, "at most 64 points are supported");
  const Subset whole = Subset::full(n);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  for (Subset o : opens) {
    if (!o.is_subset_of(whole)) fail(ErrorKind::InvalidTopology, "open set " + to_string(o) + " out of range");
  }
  auto member = [&](Subset s) { return std::binary_search(opens.begin(), opens.end(), s); };
  if (!member(Subset{})) fail(ErrorKind::InvalidTopology, "the empty set must be open");
  if (!member(whole)) fail(ErrorKind::InvalidTopology, "the whole space must be open");
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!member(opens[i] | opens[j])) {
        fail(ErrorKind::InvalidTopology,
             "union of " + to_string(opens[i]) + " and " + to_string(opens[j]) + " is not open");
      }
      if (!member(opens[i] & opens[j])) {
        fail(ErrorKind::InvalidTopology,
             "intersection of " + to_string(opens[i]) + " and " + to_string(opens[j]) + " is not open");
      }
    }
  }
  std::vector<Subset> nbhd(n, whole);
  for (Subset o : opens) {
    o.for_each([&](std::size_t x) { nbhd[x] &= o; });
  }
  return FiniteSpace(std::move(nbhd));
}

FiniteSpace FiniteSpace::from_minimal_neighborhoods(std::vector<Subset> nbhds) {
  const std::size_t n = nbhds.size();
  if (n > kMaxPoints) fail(ErrorKind::TooLarge, "at most 64 points are supported");
  const Subset whole = Subset::full(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!nbhds[x].is_subset_of(whole)) {
      fail(ErrorKind::InvalidTopology, "neighbourhood of " + std::to_string(x) + " out of range");
    }
    if (!nbhds[x].contains(x)) {
      fail(ErrorKind::InvalidTopology, "neighbourhood of " + std::to_string(x) + " must contain it");
    }
    nbhds[x].for_each([&](std::size_t y) {
      if (!nbhds[y].is_subset_of(nbhds[x])) {
        fail(ErrorKind::InvalidTopology, "neighbourhoods of " + std::to_string(x) + " and " +
                                             std::to_string(y) + " are not nested");
      }
    });
  }
  return FiniteSpace(std::move(nbhds));
}

FiniteSpace FiniteSpace::discrete(std::size_t n) {
  std::vector<Subset> nbhd;
  for (std::size_t x = 0; x < n; ++x) nbhd.push_back(Subset::singleton(x));
  return from_minimal_neighborhoods(std::move(nbhd));
}

FiniteSpace FiniteSpace::indiscrete(std::size_t n) {
  return from_minimal_neighborhoods(std::vector<Subset>(n, Subset::full(n)));
}

FiniteSpace FiniteSpace::sierpinski() {
  return from_minimal_neighborhoods({Subset::of({0, 1}), Subset::of({1})});
}

bool FiniteSpace::is_open(Subset s) const {
  require_valid(*this, s, "set");
  bool open = true;
  s.for_each([&](std::size_t x) { open = open && nbhd_[x].is_subset_of(s); });
  return open;
}

Subset FiniteSpace::open_hull(Subset s) const {
  require_valid(*this, s, "set");
  Subset hull;
  s.for_each([&](std::size_t x) { hull |= nbhd_[x]; });
  return hull;
}

std::vector<Subset> FiniteSpace::opens(std::size_t limit) const {
  // Opens are the unions of minimal neighbourhoods; grow the family one
  // distinct neighbourhood at a time.
  std::vector<Subset> basis(nbhd_.begin(), nbhd_.end());
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  std::unordered_set<Mask> seen{0};
  std::vector<Subset> family{Subset{}};
  for (Subset b : basis) {
    const std::size_t current = family.size();
    for (std::size_t i = 0; i < current; ++i) {
      Subset u = family[i] | b;
      if (seen.insert(u.bits()).second) {
        family.push_back(u);
        if (family.size() > limit) {
          fail(ErrorKind::TooLarge, "space has more than " + std::to_string(limit) + " open sets");
        }
      }
    }
  }
  std::sort(family.begin(), family.end());
  return family;
}

std::vector<Subset> FiniteSpace::closed_sets(std::size_t limit) const {
  std::vector<Subset> out;
  for (Subset o : opens(limit)) out.push_back(complement(o));
  std::sort(out.begin(), out.end());
  return out;
}

Subset closure(const FiniteSpace& space, Subset s) {
  require_valid(space, s, "set");
  Subset out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (space.minimal_neighborhood(x).intersects(s)) out |= Subset::singleton(x);
  }
  return out;
}

Subset interior(const FiniteSpace& space, Subset s) {
  require_valid(space, s, "set");
  Subset out;
  s.for_each([&](std::size_t x) {
    if (space.minimal_neighborhood(x).is_subset_of(s)) out |= Subset::singleton(x);
  });
  return out;
}

SeparationFlags separation_flags(const FiniteSpace& space) {
  // Each quantifier over open or closed sets is reduced to the extremal
  // witness: the smallest open around a point is its minimal neighbourhood,
  // and the largest closed set missing x is the complement of that
  // neighbourhood. Separation only gets harder as the sets grow.
  const std::size_t n = space.size();
  SeparationFlags flags;

  flags.hausdorff = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (space.minimal_neighborhood(x).intersects(space.minimal_neighborhood(y))) flags.hausdorff = false;
    }
  }

  flags.regular = true;
  for (std::size_t x = 0; x < n; ++x) {
    const Subset around = space.minimal_neighborhood(x);
    const Subset far = space.complement(around);
    if (around.intersects(space.open_hull(far))) flags.regular = false;
  }

  flags.normal = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const Subset ca = closure(space, Subset::singleton(a));
      const Subset cb = closure(space, Subset::singleton(b));
      if (ca.intersects(cb)) continue;
      if (space.open_hull(ca).intersects(space.open_hull(cb))) flags.normal = false;
    }
  }

  // Every subset of a finite space is compact, so compactness never
  // constrains the neighbourhoods below; only closedness can.
  flags.locally_compact = true;
  flags.strongly_locally_compact = true;
  flags.base_compact_nbhds = true;
  flags.base_closed_compact_nbhds = true;
  for (std::size_t x = 0; x < n; ++x) {
    const Subset around = space.minimal_neighborhood(x);
    if (!interior(space, space.full()).contains(x)) flags.locally_compact = false;
    if (!interior(space, closure(space, around)).contains(x)) flags.strongly_locally_compact = false;
    if (!interior(space, around).contains(x)) flags.base_compact_nbhds = false;
    // any closed neighbourhood of x inside `around` must contain `around`
    if (!space.is_closed(around)) flags.base_closed_compact_nbhds = false;
  }
  return flags;
}

std::pair<Subset, Subset> separate(const FiniteSpace& space, Subset a, Subset b) {
  require_valid(space, a, "a");
  require_valid(space, b, "b");
  if (a.intersects(b)) fail(ErrorKind::NotDisjoint, to_string(a) + " meets " + to_string(b));
  if (!space.is_closed(b)) fail(ErrorKind::NotClosed, to_string(b) + " is not closed");
  if (!separation_flags(space).regular) fail(ErrorKind::NotRegular, "space is not regular");
  // The smallest opens containing a and b are also the smallest in canonical
  // order, so if any separating pair exists this one is the least.
  Subset u = space.open_hull(a);
  Subset v = space.open_hull(b);
  if (u.intersects(v)) {
    inconsistency("regular space failed to separate " + to_string(a) + " from " + to_string(b));
  }
  return {u, v};
}

std::pair<Subset, Subset> split_compact(const FiniteSpace& space, Subset k, Subset u1, Subset u2) {
  require_valid(space, k, "k");
  require_valid(space, u1, "u1");
  require_valid(space, u2, "u2");
  if (!space.is_closed(k)) fail(ErrorKind::NotClosed, to_string(k) + " is not closed");
  if (!space.is_open(u1)) fail(ErrorKind::NotOpen, to_string(u1) + " is not open");
  if (!space.is_open(u2)) fail(ErrorKind::NotOpen, to_string(u2) + " is not open");
  if (!k.is_subset_of(u1 | u2)) {
    fail(ErrorKind::NotCovered, to_string(k) + " is not covered by " + to_string(u1) + " and " + to_string(u2));
  }
  const Subset l1 = k - u1;
  const Subset l2 = k - u2;
  const auto [v1, v2] = separate(space, l1, l2);
  return {k - v1, k - v2};
}

std::pair<Subset, Subset> closed_compact_sandwich(const FiniteSpace& space, Subset k) {
  require_valid(space, k, "k");
  if (!separation_flags(space).strongly_locally_compact) {
    fail(ErrorKind::NotStronglyLocallyCompact, "some point has no closed compact neighbourhood");
  }
  Subset u;
  Subset l;
  k.for_each([&](std::size_t x) {
    const Subset around = space.minimal_neighborhood(x);
    u |= around;
    l |= closure(space, around);
  });
  return {u, l};
}

PointFunction PointFunction::indicator(std::size_t n, Subset s) {
  PointFunction f = constant(n, Rational(0));
  s.for_each([&](std::size_t x) {
    if (x < n) f.values[x] = 1;
  });
  return f;
}

bool is_continuous(const FiniteSpace& space, const PointFunction& f) {
  if (f.size() != space.size()) {
    fail(ErrorKind::InvalidArgument, "function has " + std::to_string(f.size()) + " values for a " +
                                         std::to_string(space.size()) + "-point space");
  }
  // f is continuous iff it is constant on every minimal neighbourhood, which
  // is the same as every level set being open.
  for (std::size_t x = 0; x < space.size(); ++x) {
    bool constant = true;
    space.minimal_neighborhood(x).for_each([&](std::size_t y) { constant = constant && f(y) == f(x); });
    if (!constant) return false;
  }
  return true;
}

Subset support(const PointFunction& f) {
  Subset s;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f(x) != 0) s |= Subset::singleton(x);
  }
  return s;
}

PointFunction urysohn_finite(const FiniteSpace& space, Subset k, Subset u) {
  require_valid(space, k, "k");
  require_valid(space, u, "u");
  if (!k.is_subset_of(u)) fail(ErrorKind::NotNested, to_string(k) + " is not inside " + to_string(u));
  if (!space.is_closed(k)) fail(ErrorKind::NotClosed, to_string(k) + " is not closed");
  if (!space.is_open(u)) fail(ErrorKind::NotOpen, to_string(u) + " is not open");
  if (!separation_flags(space).regular) fail(ErrorKind::NotRegular, "space is not regular");
  // In a regular finite space the closed set k is also open, so its
  // indicator is already continuous.
  PointFunction g = PointFunction::indicator(space.size(), k);
  if (!is_continuous(space, g) || !closure(space, support(g)).is_subset_of(u)) {
    inconsistency("indicator of " + to_string(k) + " is not a valid Urysohn function");
  }
  return g;
}

std::vector<FiniteSpace> enumerate_topologies(std::size_t n, std::size_t max_points) {
  if (n > max_points || n > kHardMaxTopologyPoints) {
    fail(ErrorKind::TooLarge, "enumerating topologies on " + std::to_string(n) + " points exceeds the cap of " +
                                  std::to_string(std::min(max_points, kHardMaxTopologyPoints)));
  }
  // Finite topologies are exactly the preorders (x <= y iff y lies in every
  // open containing x). Build the preorders one point at a time: the new
  // point k gets a down-closed set D below it and an up-closed set Up above
  // it, with every element of D below every element of Up.
  std::vector<std::vector<Subset>> preorders{{}};  // up-sets per point
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<Subset>> next;
    const Subset earlier = Subset::full(k);
    for (const auto& up : preorders) {
      std::vector<Subset> down(k);
      for (std::size_t x = 0; x < k; ++x) {
        up[x].for_each([&](std::size_t y) { down[y] |= Subset::singleton(x); });
      }
      for_each_submask(earlier, [&](Subset below) {
        bool down_closed = true;
        below.for_each([&](std::size_t d) { down_closed = down_closed && down[d].is_subset_of(below); });
        if (!down_closed) return;
        for_each_submask(earlier, [&](Subset above) {
          bool ok = true;
          above.for_each([&](std::size_t a) { ok = ok && up[a].is_subset_of(above); });
          below.for_each([&](std::size_t d) { ok = ok && above.is_subset_of(up[d]); });
          if (!ok) return;
          std::vector<Subset> extended = up;
          below.for_each([&](std::size_t d) { extended[d] |= Subset::singleton(k); });
          extended.push_back(above | Subset::singleton(k));
          next.push_back(std::move(extended));
        });
      });
    }
    preorders = std::move(next);
  }

  std::vector<std::pair<std::vector<Subset>, FiniteSpace>> keyed;
  keyed.reserve(preorders.size());
  for (auto& up : preorders) {
    FiniteSpace space = FiniteSpace::from_minimal_neighborhoods(std::move(up));
    keyed.emplace_back(space.opens(), std::move(space));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FiniteSpace> out;
  out.reserve(keyed.size());
  for (auto& entry : keyed) out.push_back(std::move(entry.second));
  return out;
}

}  // namespace haarlab
