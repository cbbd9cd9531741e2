#include <doctest.h>

#include "haarlab/error.hpp"
#include "haarlab/rational.hpp"

using haarlab::ExtendedRational;
using haarlab::Rational;

TEST_CASE("rationals render as p/q in lowest terms") {
  CHECK(haarlab::to_string(Rational(2, 4)) == "1/2");
  CHECK(haarlab::to_string(Rational(3)) == "3/1");
  CHECK(haarlab::to_string(Rational(0)) == "0/1");
  CHECK(haarlab::to_string(Rational(-7, 14)) == "-1/2");
}

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(haarlab::parse_rational("6/4") == Rational(3, 2));
  CHECK(haarlab::parse_rational("-5") == Rational(-5));
  CHECK(haarlab::parse_rational("0.25") == Rational(1, 4));
  CHECK(haarlab::parse_rational("-.5") == Rational(-1, 2));
  CHECK_THROWS_AS((void)haarlab::parse_rational(" 7/2"), haarlab::Error);

  SUBCASE("malformed input") {
    for (const char* bad : {"", "1/0", "abc", "1/2/3", "1.", "--1", "0x10"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS((void)haarlab::parse_rational(bad), haarlab::Error);
    }
  }
}

TEST_CASE("round trip through the string form") {
  for (long long p = -12; p <= 12; ++p) {
    for (long long q = 1; q <= 9; ++q) {
      const Rational r(p, q);
      CHECK(haarlab::parse_rational(haarlab::to_string(r)) == r);
    }
  }
}

TEST_CASE("floor and decimal rendering") {
  CHECK(haarlab::floor(Rational(10, 3)) == 3);
  CHECK(haarlab::floor(Rational(-1, 3)) == -1);
  CHECK(haarlab::floor(Rational(4)) == 4);
  CHECK(haarlab::to_decimal(Rational(1, 4), 4) == "0.25");
  CHECK(haarlab::to_decimal(Rational(2, 3), 4) == "0.6667");
  CHECK(haarlab::to_decimal(Rational(3)) == "3");
  CHECK(haarlab::to_decimal(Rational(-1, 3), 3) == "-0.333");
}

TEST_CASE("extended rationals") {
  const ExtendedRational inf = ExtendedRational::infinity();
  const ExtendedRational two(Rational(2));
  CHECK((two + inf).is_infinite());
  CHECK(two < inf);
  CHECK(inf == inf + inf);
  CHECK((two + two).value() == 4);
  CHECK(haarlab::to_string(inf) == "inf");
  CHECK_THROWS_AS((void)inf.value(), haarlab::Error);
}
