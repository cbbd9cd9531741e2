#include "haarlab/rational.hpp"

#include <cctype>

#include "haarlab/error.hpp"

namespace haarlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidTopology: return "InvalidTopology";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NotStronglyLocallyCompact: return "NotStronglyLocallyCompact";
    case ErrorKind::NotContinuousMultiplication: return "NotContinuousMultiplication";
    case ErrorKind::NotContinuousInversion: return "NotContinuousInversion";
    case ErrorKind::MeasureSpaceMismatch: return "MeasureSpaceMismatch";
    case ErrorKind::NotMeasurable: return "NotMeasurable";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::NotRadon: return "NotRadon";
    case ErrorKind::NotHaar: return "NotHaar";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::NotNeighborhoodOfIdentity: return "NotNeighborhoodOfIdentity";
    case ErrorKind::NegativeMass: return "NegativeMass";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) fail(ErrorKind::ParseError, "malformed rational '" + std::string(whole) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      fail(ErrorKind::ParseError, "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) fail(ErrorKind::ParseError, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
      fail(ErrorKind::ParseError, "denominator must be unsigned in '" + std::string(text) + "'");
    }
    Integer den = parse_integer(den_text, text);
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (text.find('.') != std::string_view::npos) {
    bool negative = text[0] == '-';
    std::string_view body = (text[0] == '-' || text[0] == '+') ? text.substr(1) : text;
    std::size_t dot = body.find('.');
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    auto all_digits = [](std::string_view s) {
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      }
      return true;
    };
    if (frac.empty() || !all_digits(frac) || !all_digits(int_part)) {
      fail(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
    }
    Integer whole = int_part.empty() ? Integer(0) : parse_integer(int_part, text);
    Integer digits = parse_integer(frac, text);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational magnitude = Rational(whole) + Rational(digits, scale);
    return negative ? Rational(-magnitude) : magnitude;
  }
  return Rational(parse_integer(text, text));
}

Integer floor(const Rational& r) {
  Integer q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && Rational(q) != r) q -= 1;
  return q;
}

std::string to_decimal(const Rational& r, int digits) {
  Rational magnitude = r < 0 ? Rational(-r) : r;
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half up at the last digit
  Integer scaled = floor(magnitude * scale + Rational(1, 2));
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::string frac_text = frac.str();
  frac_text.insert(0, static_cast<std::size_t>(digits) - frac_text.size(), '0');
  while (!frac_text.empty() && frac_text.back() == '0') frac_text.pop_back();
  std::string out = (r < 0 && scaled != 0) ? "-" : "";
  out += whole.str();
  if (!frac_text.empty()) out += "." + frac_text;
  return out;
}

const Rational& ExtendedRational::value() const {
  if (infinite_) fail(ErrorKind::InvalidArgument, "value() of an infinite quantity");
  return value_;
}

std::string to_string(const ExtendedRational& r) {
  return r.is_infinite() ? std::string("inf") : to_string(r.value());
}

}  // namespace haarlab
