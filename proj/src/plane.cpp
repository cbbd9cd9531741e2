#include "haarlab/plane.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "haarlab/error.hpp"

namespace haarlab::plane {

namespace {

/// -1: a starts before b. Missing means -inf; closed starts before open.
int compare_lower(const Interval& a, const Interval& b) {
  if (!a.lo || !b.lo) return a.lo.has_value() - b.lo.has_value();
  if (*a.lo != *b.lo) return *a.lo < *b.lo ? -1 : 1;
  if (a.lo_closed != b.lo_closed) return a.lo_closed ? -1 : 1;
  return 0;
}

/// -1: a ends before b. Missing means +inf; open ends before closed.
int compare_upper(const Interval& a, const Interval& b) {
  if (!a.hi || !b.hi) return b.hi.has_value() - a.hi.has_value();
  if (*a.hi != *b.hi) return *a.hi < *b.hi ? -1 : 1;
  if (a.hi_closed != b.hi_closed) return a.hi_closed ? 1 : -1;
  return 0;
}

/// Whether `next` (starting no earlier than `cur`) overlaps or touches it.
bool joins(const Interval& cur, const Interval& next) {
  if (!cur.hi || !next.lo) return true;
  if (*next.lo < *cur.hi) return true;
  return *next.lo == *cur.hi && (cur.hi_closed || next.lo_closed);
}

std::vector<Interval> canonical(std::vector<Interval> in) {
  std::vector<Interval> pieces;
  for (auto& iv : in) {
    if (!iv.lo) iv.lo_closed = false;
    if (!iv.hi) iv.hi_closed = false;
    if (!iv.empty()) pieces.push_back(std::move(iv));
  }
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
    const int c = compare_lower(a, b);
    return c != 0 ? c < 0 : compare_upper(a, b) < 0;
  });
  std::vector<Interval> out;
  for (auto& iv : pieces) {
    if (!out.empty() && joins(out.back(), iv)) {
      if (compare_upper(out.back(), iv) < 0) {
        out.back().hi = iv.hi;
        out.back().hi_closed = iv.hi_closed;
      }
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

bool unit_square_shape(const Rect& r) { return r.x1 - r.x0 == 1 && r.y1 - r.y0 == 1; }

bool rects_disjoint(const Rect& a, const Rect& b) {
  return a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0;
}

bool pairwise_disjoint(std::vector<Rect> rects) {
  std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) { return a.y0 < b.y0; });
  bool stacked = true;
  for (std::size_t i = 1; i < rects.size() && stacked; ++i) stacked = rects[i - 1].y1 < rects[i].y0;
  if (stacked) return true;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      if (!rects_disjoint(rects[i], rects[j])) return false;
    }
  }
  return true;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace

bool Interval::empty() const {
  if (!lo || !hi) return false;
  if (*lo != *hi) return *hi < *lo;
  return !(lo_closed && hi_closed);
}

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) : intervals_(canonical(std::move(intervals))) {}

bool IntervalUnion::bounded() const {
  return std::all_of(intervals_.begin(), intervals_.end(), [](const Interval& iv) { return iv.bounded(); });
}

bool IntervalUnion::is_closed_bounded() const {
  return std::all_of(intervals_.begin(), intervals_.end(),
                     [](const Interval& iv) { return iv.bounded() && iv.lo_closed && iv.hi_closed; });
}

bool IntervalUnion::is_open() const {
  return std::all_of(intervals_.begin(), intervals_.end(),
                     [](const Interval& iv) { return !iv.lo_closed && !iv.hi_closed; });
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalUnion(std::move(all));
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> out;
  for (const auto& x : a.intervals()) {
    for (const auto& y : b.intervals()) {
      Interval both = compare_lower(x, y) >= 0 ? x : y;
      const Interval& upper = compare_upper(x, y) <= 0 ? x : y;
      both.hi = upper.hi;
      both.hi_closed = upper.hi_closed;
      out.push_back(std::move(both));
    }
  }
  return IntervalUnion(std::move(out));
}

bool is_subset(const IntervalUnion& a, const IntervalUnion& b) { return intersect(a, b) == a; }

IntervalUnion shift(const IntervalUnion& e, const Rational& by) {
  std::vector<Interval> out = e.intervals();
  for (auto& iv : out) {
    if (iv.lo) *iv.lo += by;
    if (iv.hi) *iv.hi += by;
  }
  return IntervalUnion(std::move(out));
}

ExtendedRational lebesgue_length(const IntervalUnion& e) {
  ExtendedRational total(Rational(0));
  for (const auto& iv : e.intervals()) {
    if (!iv.bounded()) return ExtendedRational::infinity();
    total = total + ExtendedRational(*iv.hi - *iv.lo);
  }
  return total;
}

IntervalUnion project(const CylinderSet& e) { return e.base; }

ExtendedRational haar_v(const CylinderSet& e) { return lebesgue_length(project(e)); }

CylinderSet translate_v(const CylinderSet& e, const Rational& a, const Rational& /*b*/) {
  return CylinderSet{shift(e.base, a)};
}

RegularityGap regularity_gap(const CylinderSet& e, const Rational& eps) {
  if (eps <= 0) fail(ErrorKind::InvalidArgument, "eps must be positive");
  RegularityGap gap;
  const auto& pieces = e.base.intervals();
  if (pieces.empty()) return gap;

  const Rational step = eps / (2 * static_cast<long long>(pieces.size()));
  const Rational reach = 1 / eps;
  std::vector<Interval> inner;
  std::vector<Interval> outer;
  for (const auto& iv : pieces) {
    Interval out = iv;
    if (out.lo) *out.lo -= step;
    if (out.hi) *out.hi += step;
    out.lo_closed = out.hi_closed = false;
    outer.push_back(std::move(out));

    std::optional<Rational> lo = iv.lo;
    std::optional<Rational> hi = iv.hi;
    if (lo && !iv.lo_closed) *lo += step;
    if (hi && !iv.hi_closed) *hi -= step;
    if (!lo && !hi) {
      lo = -reach / 2;
      hi = reach / 2;
      gap.inner_truncated = true;
    } else if (!lo) {
      lo = *hi - reach;
      gap.inner_truncated = true;
    } else if (!hi) {
      hi = *lo + reach;
      gap.inner_truncated = true;
    }
    if (*lo <= *hi) inner.push_back(Interval::closed(*lo, *hi));
  }
  gap.inner = CylinderSet{IntervalUnion(std::move(inner))};
  gap.outer = CylinderSet{IntervalUnion(std::move(outer))};

  const bool nested = is_subset(gap.inner.base, e.base) && is_subset(e.base, gap.outer.base);
  if (!nested || !gap.inner.is_closed_compact() || !gap.outer.is_open()) {
    inconsistency("regularity approximations are not nested");
  }
  const ExtendedRational mass = haar_v(e);
  if (!mass.is_infinite()) {
    const Rational& m = mass.value();
    if (m - haar_v(gap.inner).value() > eps || haar_v(gap.outer).value() - m > eps) {
      inconsistency("regularity gap exceeds eps");
    }
  } else if (haar_v(gap.inner).value() < reach) {
    inconsistency("truncated inner approximation is too small");
  }
  return gap;
}

Rect unit_square(const Integer& m, const Integer& n) {
  return Rect{Rational(m), Rational(m + 1), Rational(n), Rational(n + 1)};
}

std::string to_string(BkVerdict verdict) {
  return verdict == BkVerdict::FinitenessViolated ? "FinitenessViolated" : "NonzeroViolated";
}

namespace {
constexpr std::size_t kMaxTranslates = 1'000'000;
constexpr std::size_t kGridWindow = 2;
}  // namespace

BkCertificate counterexample_bk(const Rational& c, const Rational& probe_bound) {
  if (c < 0) fail(ErrorKind::NegativeMass, "hypothesized mass " + haarlab::to_string(c) + " is negative");
  if (probe_bound <= 0) fail(ErrorKind::InvalidArgument, "probe bound must be positive");
  BkCertificate cert;
  cert.input_mass = c;
  cert.probe_bound = probe_bound;
  if (c > 0) {
    const Integer m = floor(probe_bound / c) + 1;
    if (m > kMaxTranslates) fail(ErrorKind::TooLarge, "certificate would need " + m.str() + " translates");
    cert.verdict = BkVerdict::FinitenessViolated;
    cert.translate_count = m.convert_to<std::size_t>();
    for (std::size_t k = 0; k < cert.translate_count; ++k) {
      cert.translates.push_back(unit_square(0, Integer(2 * k)));
    }
    cert.total_mass = Rational(m) * c;
  } else {
    cert.verdict = BkVerdict::NonzeroViolated;
    cert.window = kGridWindow;
    const long long w = static_cast<long long>(kGridWindow);
    for (long long i = -w; i < w; ++i) {
      for (long long j = -w; j < w; ++j) cert.grid.push_back(unit_square(Integer(i), Integer(j)));
    }
    cert.total_mass = Rational(static_cast<long long>(cert.grid.size())) * c;
  }
  if (!verify_certificate(cert)) inconsistency("counterexample certificate failed re-verification");
  return cert;
}

bool verify_certificate(const BkCertificate& cert) {
  if (cert.input_mass < 0) return false;
  if (cert.verdict == BkVerdict::FinitenessViolated) {
    if (cert.input_mass == 0 || cert.translates.size() != cert.translate_count) return false;
    for (const Rect& r : cert.translates) {
      if (!unit_square_shape(r)) return false;    // a translate of K_{0,0}
      if (r.x0 < 0 || r.x1 > 1) return false;     // inside K = [0,1] x R
    }
    if (!pairwise_disjoint(cert.translates)) return false;
    const Rational count(static_cast<long long>(cert.translate_count));
    if (cert.total_mass != count * cert.input_mass) return false;
    // enough translates to pass the bound, and no more than needed
    return cert.total_mass > cert.probe_bound && (count - 1) * cert.input_mass <= cert.probe_bound;
  }
  if (cert.input_mass != 0) return false;
  const long long w = static_cast<long long>(cert.window);
  if (w <= 0 || cert.grid.size() != static_cast<std::size_t>(4 * w * w)) return false;
  std::set<std::pair<long long, long long>> corners;
  for (const Rect& r : cert.grid) {
    if (!unit_square_shape(r) || !is_integer(r.x0) || !is_integer(r.y0)) return false;
    const long long x = numerator(r.x0).convert_to<long long>();
    const long long y = numerator(r.y0).convert_to<long long>();
    if (x < -w || x >= w || y < -w || y >= w) return false;
    corners.emplace(x, y);
  }
  // every unit cell of [-W, W]^2 present: the window is covered
  if (corners.size() != cert.grid.size()) return false;
  return cert.total_mass == Rational(static_cast<long long>(cert.grid.size())) * cert.input_mass;
}

}  // namespace haarlab::plane
