#include "gtue/scalar.hpp"

#include <array>
#include <cctype>
#include <string>

namespace gtue {

namespace {

using boost::multiprecision::mpz_int;

[[noreturn]] void bad_number(std::string_view text) {
  fail(ErrorCode::Schema, "not a number: '" + std::string(text) + "'");
}

mpz_int pow10(unsigned k) {
  mpz_int r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

/// Exact value of a decimal literal such as "-12.5e-3".
Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long long exponent = 0;
  bool any = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --exponent;
      any = true;
    }
  }
  if (!any) bad_number(text);
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    long long e = 0;
    bool edigits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      edigits = true;
      if (e > 100000) bad_number(text);
    }
    if (!edigits) bad_number(text);
    exponent += eneg ? -e : e;
  }
  if (i != text.size()) bad_number(text);
  // Leading zeros would make the integer parser read octal.
  const auto first = digits.find_first_not_of('0');
  mpz_int mantissa(first == std::string::npos ? std::string("0") : digits.substr(first));
  Rational value;
  if (exponent >= 0) {
    value = Rational(mantissa * pow10(static_cast<unsigned>(exponent)));
  } else {
    value = Rational(mantissa, pow10(static_cast<unsigned>(-exponent)));
  }
  return negative ? Rational(-value) : value;
}

Rational parse_rational_text(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) bad_number(text);
  return num / den;
}

}  // namespace

std::string shortest_decimal(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) fail(ErrorCode::InvalidArgument, "cannot format double");
  return std::string(buf.data(), ptr);
}

double ScalarTraits<double>::parse(std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    return parse_rational_text(text).convert_to<double>();
  }
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) bad_number(text);
  return v;
}

std::string ScalarTraits<double>::format(double v) { return shortest_decimal(v); }

Rational ScalarTraits<Rational>::parse(std::string_view text) { return parse_rational_text(text); }

Rational ScalarTraits<Rational>::from_decimal_of(double v) {
  return parse_decimal(shortest_decimal(v));
}

std::string ScalarTraits<Rational>::format(const Rational& v) {
  mpz_int num = boost::multiprecision::numerator(v);
  mpz_int den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  unsigned twos = 0, fives = 0;
  mpz_int rest = den;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();
  unsigned places = std::max(twos, fives);
  mpz_int scaled = num * pow10(places) / den;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

}  // namespace gtue
