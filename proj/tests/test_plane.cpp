#include <doctest.h>

#include <random>
#include <set>

#include "haarlab/error.hpp"
#include "haarlab/plane.hpp"

using haarlab::ExtendedRational;
using haarlab::Rational;
using namespace haarlab::plane;

namespace {

Interval closed(long long a, long long b) { return Interval::closed(a, b); }
Interval open(const Rational& a, const Rational& b) { return Interval::open(a, b); }
CylinderSet cyl(std::vector<Interval> pieces) { return CylinderSet{IntervalUnion(std::move(pieces))}; }

bool member(const Interval& iv, const Rational& x) {
  if (iv.lo && (x < *iv.lo || (x == *iv.lo && !iv.lo_closed))) return false;
  if (iv.hi && (x > *iv.hi || (x == *iv.hi && !iv.hi_closed))) return false;
  return true;
}

bool member(const std::vector<Interval>& pieces, const Rational& x) {
  return std::any_of(pieces.begin(), pieces.end(), [&](const Interval& iv) { return member(iv, x); });
}

/// Endpoints, midpoints between them, and points beyond both ends.
std::vector<Rational> probes(const std::vector<Interval>& pieces) {
  std::set<Rational> ends;
  for (const auto& iv : pieces) {
    if (iv.lo) ends.insert(*iv.lo);
    if (iv.hi) ends.insert(*iv.hi);
  }
  std::vector<Rational> out(ends.begin(), ends.end());
  std::vector<Rational> extra;
  for (std::size_t i = 0; i + 1 < out.size(); ++i) extra.push_back((out[i] + out[i + 1]) / 2);
  if (!out.empty()) {
    extra.push_back(out.front() - 1);
    extra.push_back(out.back() + 1);
  } else {
    extra.push_back(0);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

/// Length by sweeping the elementary segments between sorted endpoints.
ExtendedRational sweep_length(const std::vector<Interval>& pieces) {
  std::set<Rational> ends;
  for (const auto& iv : pieces) {
    if (iv.empty()) continue;
    if (!iv.lo || !iv.hi) return ExtendedRational::infinity();
    ends.insert(*iv.lo);
    ends.insert(*iv.hi);
  }
  Rational total = 0;
  const std::vector<Rational> e(ends.begin(), ends.end());
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (member(pieces, (e[i] + e[i + 1]) / 2)) total += e[i + 1] - e[i];
  }
  return total;
}

std::vector<Interval> random_pieces(std::mt19937_64& rng, bool allow_unbounded) {
  std::uniform_int_distribution<int> count(0, 4), end(-8, 8), flag(0, 1), den(1, 4), inf(0, 9);
  std::vector<Interval> out;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Rational a(end(rng), den(rng));
    Rational b(end(rng), den(rng));
    if (b < a) std::swap(a, b);
    Interval iv{a, b, flag(rng) == 1, flag(rng) == 1};
    if (allow_unbounded && inf(rng) == 0) iv = Interval{std::nullopt, b, false, iv.hi_closed};
    if (allow_unbounded && inf(rng) == 0) iv = Interval{iv.lo, std::nullopt, iv.lo_closed, false};
    out.push_back(iv);
  }
  return out;
}

}  // namespace

TEST_CASE("interval unions canonicalize without changing membership") {
  const IntervalUnion u({closed(2, 3), open(0, 1), closed(1, 2), Interval{Rational(5), Rational(5), true, false}});
  REQUIRE(u.intervals().size() == 1);
  CHECK(u.intervals()[0] == Interval{Rational(0), Rational(3), false, true});
  CHECK(IntervalUnion({open(0, 1), open(1, 2)}).intervals().size() == 2);
  CHECK(IntervalUnion({Interval{std::nullopt, Rational(0), false, true}, closed(-5, 4)}).intervals() ==
        std::vector<Interval>{Interval{std::nullopt, Rational(4), false, true}});

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto raw = random_pieces(rng, true);
    const IntervalUnion u(raw);
    for (const auto& p : probes(raw)) CHECK(member(raw, p) == member(u.intervals(), p));
    CHECK(lebesgue_length(u) == sweep_length(raw));
    for (std::size_t i = 0; i + 1 < u.intervals().size(); ++i) {
      const auto& a = u.intervals()[i];
      const auto& b = u.intervals()[i + 1];
      REQUIRE((a.hi && b.lo));
      const bool separated = *a.hi < *b.lo || (*a.hi == *b.lo && !a.hi_closed && !b.lo_closed);
      CHECK(separated);
    }
  }
}

TEST_CASE("set operations agree with pointwise membership") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto ra = random_pieces(rng, true);
    const auto rb = random_pieces(rng, true);
    const IntervalUnion a(ra), b(rb);
    auto all = ra;
    all.insert(all.end(), rb.begin(), rb.end());
    bool sub = true;
    for (const auto& p : probes(all)) {
      CHECK(member(unite(a, b).intervals(), p) == (member(ra, p) || member(rb, p)));
      CHECK(member(intersect(a, b).intervals(), p) == (member(ra, p) && member(rb, p)));
      if (member(ra, p) && !member(rb, p)) sub = false;
    }
    CHECK(is_subset(a, b) == sub);
  }
}

TEST_CASE("haar_v") {
  CHECK(haar_v(cyl({closed(0, 1)})) == ExtendedRational(Rational(1)));
  CHECK(haar_v(cyl({})) == ExtendedRational(Rational(0)));
  CHECK(haar_v(cyl({closed(0, 1), Interval::closed(2, Rational(5, 2))})) == ExtendedRational(Rational(3, 2)));
  CHECK(haar_v(cyl({Interval{Rational(0), std::nullopt, true, false}})).is_infinite());
  CHECK(project(cyl({closed(0, 1)})) == IntervalUnion({closed(0, 1)}));
}

TEST_CASE("translate_v") {
  CHECK(translate_v(cyl({closed(0, 1)}), 3, -7) == cyl({closed(3, 4)}));
  CHECK(translate_v(cyl({closed(0, 1)}), 0, 12) == cyl({closed(0, 1)}));
  CHECK(translate_v(cyl({closed(0, 1), closed(2, 3)}), Rational(1, 2), 0) ==
        cyl({Interval::closed(Rational(1, 2), Rational(3, 2)), Interval::closed(Rational(5, 2), Rational(7, 2))}));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 97);
  for (int trial = 0; trial < 200; ++trial) {
    const auto e = cyl(random_pieces(rng, false));
    const Rational a(num(rng), den(rng));
    CHECK(haar_v(translate_v(e, a, Rational(num(rng), den(rng)))) == haar_v(e));
  }
}

TEST_CASE("regularity_gap") {
  const auto gap = regularity_gap(cyl({open(0, 1)}), Rational(1, 10));
  CHECK(gap.inner == cyl({Interval::closed(Rational(1, 20), Rational(19, 20))}));
  CHECK(gap.outer == cyl({Interval::open(Rational(-1, 20), Rational(21, 20))}));
  CHECK_FALSE(gap.inner_truncated);

  const auto e = cyl({closed(0, 1), closed(3, 5)});
  CHECK(regularity_gap(e, Rational(1, 3)).inner == e);
  const auto empty = regularity_gap(cyl({}), Rational(1, 2));
  CHECK(empty.inner == cyl({}));
  CHECK(haar_v(empty.outer) <= ExtendedRational(Rational(1, 2)));
  CHECK_THROWS_AS((void)regularity_gap(e, 0), haarlab::Error);

  const auto half_line = regularity_gap(cyl({Interval{Rational(0), std::nullopt, false, false}}), Rational(1, 4));
  CHECK(half_line.inner_truncated);
  CHECK(haar_v(half_line.inner) >= ExtendedRational(Rational(4)));
  CHECK(half_line.inner.is_closed_compact());

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto base = cyl(random_pieces(rng, true));
    const Rational eps(1, 1 + trial % 9);
    const auto g = regularity_gap(base, eps);
    CHECK(is_subset(g.inner.base, base.base));
    CHECK(is_subset(base.base, g.outer.base));
    CHECK(g.inner.is_closed_compact());
    CHECK(g.outer.is_open());
    const auto m = haar_v(base);
    if (!m.is_infinite()) {
      CHECK(m.value() - haar_v(g.inner).value() <= eps);
      CHECK(haar_v(g.outer).value() - m.value() <= eps);
    }
  }
}

TEST_CASE("counterexample certificates") {
  const auto c1 = counterexample_bk(1, 10);
  CHECK(c1.verdict == BkVerdict::FinitenessViolated);
  CHECK(c1.translate_count == 11);
  CHECK(c1.total_mass == 11);
  CHECK(verify_certificate(c1));

  const auto third = counterexample_bk(Rational(1, 3), 1);
  CHECK(third.translate_count == 4);
  CHECK(third.total_mass == Rational(4, 3));

  const auto zero = counterexample_bk(0, 10);
  CHECK(zero.verdict == BkVerdict::NonzeroViolated);
  CHECK(zero.total_mass == 0);
  CHECK(zero.grid.size() == 4 * zero.window * zero.window);
  CHECK(verify_certificate(zero));
  CHECK(to_string(BkVerdict::NonzeroViolated) == "NonzeroViolated");

  CHECK_THROWS_AS((void)counterexample_bk(-1, 10), haarlab::Error);
  CHECK_THROWS_AS((void)counterexample_bk(1, 0), haarlab::Error);

  SUBCASE("tampered certificates are rejected") {
    auto overlap = c1;
    overlap.translates[1] = overlap.translates[0];
    CHECK_FALSE(verify_certificate(overlap));
    auto outside = c1;
    outside.translates[0] = unit_square(1, 0);
    CHECK_FALSE(verify_certificate(outside));
    auto short_by_one = c1;
    short_by_one.translates.pop_back();
    short_by_one.translate_count = 10;
    short_by_one.total_mass = 10;
    CHECK_FALSE(verify_certificate(short_by_one));
    auto holey = zero;
    holey.grid[3] = holey.grid[2];
    CHECK_FALSE(verify_certificate(holey));
  }
}
