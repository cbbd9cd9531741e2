#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace haarlab {

/// Arbitrary-precision exact rational, always kept in lowest terms.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "p/q" in lowest terms with q > 0; integers keep the "/1" suffix.
std::string to_string(const Rational& r);

/// Accepts "p/q", "p" or a terminating decimal such as "-2.75".
Rational parse_rational(std::string_view text);

/// Decimal rendering for human-facing payloads; never used for comparisons.
std::string to_decimal(const Rational& r, int digits = 12);

Integer floor(const Rational& r);

/// A nonnegative rational or +infinity; lengths on the line need the latter.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT: implicit by design of the algebra

  static ExtendedRational infinity() {
    ExtendedRational r;
    r.infinite_ = true;
    return r;
  }

  [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
  [[nodiscard]] const Rational& value() const;

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedRational(a.value_ + b.value_);
  }
  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

std::string to_string(const ExtendedRational& r);

}  // namespace haarlab
