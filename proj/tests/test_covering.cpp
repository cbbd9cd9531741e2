#include <doctest.h>

#include "haarlab/covering.hpp"
#include "haarlab/error.hpp"
#include "oracles.hpp"

using haarlab::FiniteGroup;
using haarlab::FiniteSpace;
using haarlab::FiniteTopGroup;
using haarlab::Rational;
using haarlab::Subset;

namespace {

Subset S(std::initializer_list<std::size_t> xs) { return Subset::of(xs); }

haarlab::ErrorKind error_kind(auto&& f) {
  try {
    f();
  } catch (const haarlab::Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return haarlab::ErrorKind::InternalInconsistency;
}

FiniteTopGroup z4_cosets() { return haarlab::coset_topology(FiniteGroup::cyclic(4), S({0, 2})); }

}  // namespace

TEST_CASE("covering_number examples") {
  const auto g = z4_cosets();
  CHECK(haarlab::covering_number({g, S({0, 2}), S({0, 2})}) == haarlab::CoveringSolution{1, {0}});
  CHECK(haarlab::covering_number({g, S({}), S({0, 2})}) == haarlab::CoveringSolution{0, {}});
  CHECK(haarlab::covering_number({g, S({0, 1, 2, 3}), S({0, 2})}) == haarlab::CoveringSolution{2, {0, 1}});
  CHECK(error_kind([&] { (void)haarlab::covering_number({g, S({0, 2}), S({0})}); }) ==
        haarlab::ErrorKind::EmptyInterior);
  const auto disc = haarlab::validate_top_group(FiniteGroup::cyclic(4), FiniteSpace::discrete(4));
  const auto sier_like = haarlab::validate_top_group(FiniteGroup::cyclic(4), FiniteSpace::indiscrete(4));
  CHECK(haarlab::covering_number({disc, S({0, 1, 2, 3}), S({0, 1})}).count == 2);
  CHECK(haarlab::covering_number({sier_like, S({0, 1, 2, 3}), S({0, 1, 2, 3})}).count == 1);
}

TEST_CASE("covering_number matches the all-subsets oracle") {
  const std::vector<FiniteGroup> groups = {
      FiniteGroup::cyclic(2),  FiniteGroup::cyclic(4),      FiniteGroup::cyclic(6),
      FiniteGroup::cyclic(8),  FiniteGroup::symmetric3(),  FiniteGroup::quaternion8(),
      FiniteGroup::dihedral(4), FiniteGroup::cyclic(12),
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))};
  std::size_t compared = 0;
  for (const auto& grp : groups) {
    for (const auto& g : haarlab::group_topologies(grp)) {
      const auto opens = oracle::opens_of(g.space());
      const std::size_t m = g.atom_count();
      if (m > 6) continue;  // keeps the pair loop small; larger cases run in the acceptance suite
      for_each_submask(Subset::full(m), [&](Subset kmask) {
        for_each_submask(Subset::full(m), [&](Subset smask) {
          if (smask.empty()) return;
          const Subset k = g.atoms_to_points(kmask);
          const Subset s = g.atoms_to_points(smask);
          const auto got = haarlab::covering_number({g, k, s});
          const auto want = oracle::min_cover(grp, oracle::interior(opens, s.bits()), k.bits());
          CHECK(got.count == want.count);
          CHECK(got.translates == want.translates);
          ++compared;
        });
      });
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("non-Borel sets are covered by translates of their interior") {
  const auto g = haarlab::coset_topology(FiniteGroup::cyclic(6), S({0, 3}));
  const auto opens = oracle::opens_of(g.space());
  // S = {0, 3, 1}: interior {0, 3}
  const auto got = haarlab::covering_number({g, g.space().full(), S({0, 1, 3})});
  const auto want = oracle::min_cover(g.group(), oracle::interior(opens, S({0, 1, 3}).bits()), g.space().full().bits());
  CHECK(got.count == want.count);
  CHECK(got.count == 3);
  CHECK(error_kind([&] { (void)haarlab::covering_number({g, S({0}), S({0, 3})}); }) == haarlab::ErrorKind::NotClosed);
}

TEST_CASE("mu_u") {
  const auto g = z4_cosets();
  const Subset n = S({0, 2});
  CHECK(haarlab::mu_u(g, n, n, n) == 1);
  CHECK(haarlab::mu_u(g, S({0, 1, 2, 3}), n, n) == 2);
  CHECK(haarlab::mu_u(g, S({}), n, n) == 0);
  CHECK(haarlab::mu_u(g, S({1, 3}), S({1, 3}), S({0, 1, 2, 3})) == 1);
  CHECK(error_kind([&] { (void)haarlab::mu_u(g, n, n, S({1, 3})); }) == haarlab::ErrorKind::NotNeighborhoodOfIdentity);
  CHECK(error_kind([&] { (void)haarlab::mu_u(g, n, S({}), n); }) == haarlab::ErrorKind::EmptyInterior);
}

TEST_CASE("existence_via_covering") {
  const auto g = z4_cosets();
  CHECK(haarlab::existence_via_covering(g, S({0, 2})) == haarlab::canonical_haar(g));
  CHECK(haarlab::existence_via_covering(g, S({0, 1, 2, 3})) == haarlab::canonical_haar(g).scaled(Rational(1, 2)));
  const auto triv = haarlab::validate_top_group(FiniteGroup::trivial(), FiniteSpace::discrete(1));
  CHECK(haarlab::existence_via_covering(triv, S({0})).atom_mass() == std::vector<Rational>{1});
  CHECK(error_kind([&] { (void)haarlab::existence_via_covering(g, S({0})); }) == haarlab::ErrorKind::EmptyInterior);

  for (const auto& grp : {FiniteGroup::cyclic(6), FiniteGroup::symmetric3(), FiniteGroup::quaternion8()}) {
    for (const auto& tg : haarlab::group_topologies(grp)) {
      CHECK(haarlab::existence_via_covering(tg, tg.identity_closure()) == haarlab::canonical_haar(tg));
      const auto whole = haarlab::existence_via_covering(tg, tg.space().full());
      CHECK(whole.total() == 1);
      CHECK(haarlab::is_haar(tg, whole).is_haar());
    }
  }
}
