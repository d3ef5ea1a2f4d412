#include "grpdouble/rational.hpp"

#include <charconv>

#include "grpdouble/error.hpp"

namespace grpdouble {

std::string to_string(const Rational& q) {
  std::string out = q.numerator().str();
  if (q.denominator() != 1) {
    out += '/';
    out += q.denominator().str();
  }
  return out;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw SpecError("bad rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(text.substr(slash + 1), text);
  }
  if (den == 0) {
    throw SpecError("zero denominator in '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

std::int64_t floor_to_int(const Rational& q) {
  Integer n = q.numerator();
  const Integer& d = q.denominator();  // always positive
  Integer f = n / d;
  if (n % d != 0 && n < 0) {
    f -= 1;
  }
  return static_cast<std::int64_t>(f);
}

}  // namespace grpdouble
