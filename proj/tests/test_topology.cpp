#include <doctest.h>

#include "haarlab/error.hpp"
#include "haarlab/topgroup.hpp"
#include "haarlab/topology.hpp"
#include "oracles.hpp"

using haarlab::FiniteSpace;
using haarlab::Subset;

namespace {

Subset S(std::initializer_list<std::size_t> xs) { return Subset::of(xs); }

FiniteSpace z4_cosets() {
  return haarlab::coset_topology(haarlab::FiniteGroup::cyclic(4), S({0, 2})).space();
}

bool is_error(haarlab::ErrorKind kind, auto&& f) {
  try {
    f();
  } catch (const haarlab::Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("construction validates the topology axioms") {
  CHECK(is_error(haarlab::ErrorKind::InvalidTopology, [] { (void)FiniteSpace::from_opens(2, {S({}), S({0})}); }));
  CHECK(is_error(haarlab::ErrorKind::InvalidTopology,
                 [] { (void)FiniteSpace::from_opens(3, {S({}), S({0}), S({1}), S({0, 1, 2})}); }));
  const auto sp = FiniteSpace::from_opens(2, {S({1}), S({}), S({0, 1}), S({1})});
  CHECK(sp == FiniteSpace::sierpinski());
  CHECK(sp.opens() == std::vector<Subset>{S({}), S({1}), S({0, 1})});
}

TEST_CASE("closure and interior") {
  const auto sier = FiniteSpace::sierpinski();
  CHECK(haarlab::closure(sier, S({1})) == S({0, 1}));
  CHECK(haarlab::closure(sier, S({})) == S({}));
  CHECK(haarlab::closure(FiniteSpace::discrete(3), S({2})) == S({2}));
  CHECK(haarlab::interior(sier, S({0})) == S({}));
  CHECK(haarlab::interior(sier, sier.full()) == sier.full());
  CHECK(haarlab::interior(FiniteSpace::indiscrete(2), S({0})) == S({}));
}

TEST_CASE("closure and interior agree with the oracle and are dual") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& space : haarlab::enumerate_topologies(n)) {
      const auto opens = oracle::opens_of(space);
      for (oracle::Mask s = 0; s <= oracle::full(n); ++s) {
        const Subset sub(s);
        CHECK(haarlab::closure(space, sub).bits() == oracle::closure(n, opens, s));
        CHECK(haarlab::interior(space, sub).bits() == oracle::interior(opens, s));
        CHECK(haarlab::interior(space, sub) == space.complement(haarlab::closure(space, space.complement(sub))));
      }
    }
  }
}

TEST_CASE("enumerate_topologies matches the subset-family oracle") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const auto spaces = haarlab::enumerate_topologies(n);
    const auto expected = oracle::all_topologies(n);
    REQUIRE(spaces.size() == expected.size());
    std::vector<oracle::Family> got;
    for (const auto& s : spaces) got.push_back(oracle::opens_of(s));
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(got == expected);
  }
  CHECK(haarlab::enumerate_topologies(1).size() == 1);
  CHECK(haarlab::enumerate_topologies(2).size() == 4);
  CHECK(haarlab::enumerate_topologies(3).size() == 29);
  CHECK(haarlab::enumerate_topologies(4).size() == 355);
  CHECK(haarlab::enumerate_topologies(5, 5).size() == 6942);
  CHECK(is_error(haarlab::ErrorKind::TooLarge, [] { (void)haarlab::enumerate_topologies(5); }));
  CHECK(is_error(haarlab::ErrorKind::TooLarge, [] { (void)haarlab::enumerate_topologies(7, 7); }));
}

TEST_CASE("separation flags") {
  SUBCASE("examples") {
    const auto ind = haarlab::separation_flags(FiniteSpace::indiscrete(2));
    CHECK_FALSE(ind.hausdorff);
    CHECK(ind.regular);
    CHECK(ind.normal);
    CHECK_FALSE(haarlab::separation_flags(FiniteSpace::sierpinski()).regular);
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto f = haarlab::separation_flags(FiniteSpace::discrete(k));
      CHECK((f.hausdorff && f.regular && f.normal && f.locally_compact && f.strongly_locally_compact &&
             f.base_compact_nbhds && f.base_closed_compact_nbhds));
    }
  }
  SUBCASE("literal quantifiers over every space on up to 4 points") {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const auto& space : haarlab::enumerate_topologies(n)) {
        const auto got = haarlab::separation_flags(space);
        const auto want = oracle::flags(n, oracle::opens_of(space));
        CHECK(got.hausdorff == want.hausdorff);
        CHECK(got.regular == want.regular);
        CHECK(got.normal == want.normal);
        CHECK(got.locally_compact == want.locally_compact);
        CHECK(got.strongly_locally_compact == want.strongly_locally_compact);
        CHECK(got.base_compact_nbhds == want.base_compact_nbhds);
        CHECK(got.base_closed_compact_nbhds == want.base_closed_compact_nbhds);
      }
    }
  }
}

TEST_CASE("separate") {
  CHECK(haarlab::separate(FiniteSpace::discrete(3), S({0}), S({2})) == std::pair{S({0}), S({2})});
  CHECK(haarlab::separate(FiniteSpace::indiscrete(2), S({0, 1}), S({})) == std::pair{S({0, 1}), S({})});
  CHECK(haarlab::separate(z4_cosets(), S({0, 2}), S({1, 3})) == std::pair{S({0, 2}), S({1, 3})});

  const auto sier = FiniteSpace::sierpinski();
  CHECK(is_error(haarlab::ErrorKind::NotRegular, [&] { (void)haarlab::separate(sier, S({1}), S({0})); }));
  const auto disc = FiniteSpace::discrete(2);
  CHECK(is_error(haarlab::ErrorKind::NotDisjoint, [&] { (void)haarlab::separate(disc, S({0}), S({0, 1})); }));
  const auto z4 = z4_cosets();
  CHECK(is_error(haarlab::ErrorKind::NotClosed, [&] { (void)haarlab::separate(z4, S({1}), S({0})); }));
}

TEST_CASE("separate returns the lexicographically least pair on every regular space") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& space : haarlab::enumerate_topologies(n)) {
      if (!haarlab::separation_flags(space).regular) continue;
      const auto opens = oracle::opens_of(space);
      for (oracle::Mask b : oracle::closed_of(n, opens)) {
        for (oracle::Mask a = 0; a <= oracle::full(n); ++a) {
          if (a & b) continue;
          const auto want = oracle::least_separation(opens, a, b);
          REQUIRE(want.has_value());
          const auto [u, v] = haarlab::separate(space, Subset(a), Subset(b));
          CHECK(u.bits() == want->first);
          CHECK(v.bits() == want->second);
        }
      }
    }
  }
}

TEST_CASE("split_compact") {
  const auto d4 = FiniteSpace::discrete(4);
  CHECK(haarlab::split_compact(d4, S({}), S({}), S({})) == std::pair{S({}), S({})});
  CHECK(haarlab::split_compact(d4, S({0, 1, 2, 3}), S({0, 1}), S({2, 3})) == std::pair{S({0, 1}), S({2, 3})});
  CHECK(haarlab::split_compact(d4, S({1, 2}), S({0, 1, 2}), S({})) == std::pair{S({1, 2}), S({})});
  CHECK(is_error(haarlab::ErrorKind::NotCovered, [&] { (void)haarlab::split_compact(d4, S({0, 3}), S({0}), S({1})); }));

  SUBCASE("postconditions on every regular space on up to 4 points") {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const auto& space : haarlab::enumerate_topologies(n)) {
        if (!haarlab::separation_flags(space).regular) continue;
        const auto opens = space.opens();
        for (Subset k : space.closed_sets()) {
          for (Subset u1 : opens) {
            for (Subset u2 : opens) {
              if (!k.is_subset_of(u1 | u2)) continue;
              const auto [k1, k2] = haarlab::split_compact(space, k, u1, u2);
              CHECK(k1.is_subset_of(u1));
              CHECK(k2.is_subset_of(u2));
              CHECK((k1 | k2) == k);
              CHECK(space.is_closed(k1));
              CHECK(space.is_closed(k2));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("closed_compact_sandwich") {
  CHECK(haarlab::closed_compact_sandwich(z4_cosets(), S({0})) == std::pair{S({0, 2}), S({0, 2})});
  CHECK(haarlab::closed_compact_sandwich(z4_cosets(), S({})) == std::pair{S({}), S({})});
  // X itself is a closed compact neighbourhood, so finite spaces always qualify
  CHECK(haarlab::closed_compact_sandwich(FiniteSpace::sierpinski(), S({1})) == std::pair{S({1}), S({0, 1})});
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& space : haarlab::enumerate_topologies(n)) {
      for (oracle::Mask k = 0; k <= oracle::full(n); ++k) {
        const auto [u, l] = haarlab::closed_compact_sandwich(space, Subset(k));
        CHECK(Subset(k).is_subset_of(u));
        CHECK(u.is_subset_of(l));
        CHECK(space.is_open(u));
        CHECK(space.is_closed(l));
      }
    }
  }
}

TEST_CASE("urysohn_finite and continuity") {
  const auto z4 = z4_cosets();
  CHECK(haarlab::urysohn_finite(z4, S({0, 2}), z4.full()) == haarlab::PointFunction::indicator(4, S({0, 2})));
  CHECK(haarlab::urysohn_finite(z4, S({}), z4.full()) == haarlab::PointFunction::constant(4, 0));
  CHECK(haarlab::urysohn_finite(z4, z4.full(), z4.full()) == haarlab::PointFunction::constant(4, 1));
  CHECK(is_error(haarlab::ErrorKind::NotNested, [&] { (void)haarlab::urysohn_finite(z4, S({0, 2}), S({1, 3})); }));

  CHECK(haarlab::is_continuous(z4, haarlab::PointFunction::indicator(4, S({1, 3}))));
  CHECK_FALSE(haarlab::is_continuous(z4, haarlab::PointFunction::indicator(4, S({0}))));
  CHECK(haarlab::support(haarlab::PointFunction{{0, 2, 0, haarlab::Rational(-1, 2)}}) == S({1, 3}));

  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& space : haarlab::enumerate_topologies(n)) {
      if (!haarlab::separation_flags(space).regular) continue;
      for (Subset k : space.closed_sets()) {
        for (Subset u : space.opens()) {
          if (!k.is_subset_of(u)) continue;
          const auto g = haarlab::urysohn_finite(space, k, u);
          CHECK(haarlab::is_continuous(space, g));
          for (std::size_t x = 0; x < n; ++x) {
            CHECK(g(x) >= (k.contains(x) ? 1 : 0));
            CHECK(g(x) <= (u.contains(x) ? 1 : 0));
          }
          const Subset supp = haarlab::support(g);
          CHECK(space.is_closed(supp));
          CHECK(supp.is_subset_of(u));
        }
      }
    }
  }
}
