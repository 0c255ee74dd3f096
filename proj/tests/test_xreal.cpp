#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "gtue/xreal.hpp"

using namespace gtue;

TEST_SUITE("xreal") {

TEST_CASE_TEMPLATE("addition conventions", S, double, Rational) {
  using X = ExtendedReal<S>;
  CHECK(add(X::pos_inf(), X::neg_inf()) == X::pos_inf());
  CHECK(add(X::neg_inf(), X::pos_inf()) == X::pos_inf());
  CHECK(add(X(S(3)), X::neg_inf()) == X::neg_inf());
  CHECK(add(X::neg_inf(), X::neg_inf()) == X::neg_inf());
  CHECK(add(X(S(2.5)), X::pos_inf()) == X::pos_inf());
  CHECK(add(X(S(2.5)), X(S(4))) == X(S(6.5)));
  CHECK(sub(X::pos_inf(), X::pos_inf()) == X::pos_inf());
}

TEST_CASE_TEMPLATE("scale conventions", S, double, Rational) {
  using X = ExtendedReal<S>;
  CHECK(scale(X(0), X::pos_inf()) == X(0));
  CHECK(scale(X(0), X::neg_inf()) == X(0));
  CHECK(scale(X::pos_inf(), X(0)) == X(0));
  CHECK(scale(X(-2), X::pos_inf()) == X::neg_inf());
  CHECK(scale(X(2), X::neg_inf()) == X::neg_inf());
  CHECK(scale(X::pos_inf(), X(S(0.5))) == X::pos_inf());
  CHECK(scale(X(S(0.5)), X(S(3))) == X(S(1.5)));
  CHECK_THROWS_AS(scale(X::pos_inf(), X(-1)), Error);
  CHECK_THROWS_AS(scale(X::neg_inf(), X(1)), Error);
  try {
    scale(X::neg_inf(), X(1));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedProduct);
  }
}

TEST_CASE_TEMPLATE("negation and order", S, double, Rational) {
  using X = ExtendedReal<S>;
  CHECK(neg(X::pos_inf()) == X::neg_inf());
  CHECK(neg(X(0)) == X(0));
  CHECK(neg(X(S(-3.5))) == X(S(3.5)));
  CHECK(X::neg_inf() < X(S(-1e300)));
  CHECK(X(S(1e300)) < X::pos_inf());
  CHECK(min(X::pos_inf(), X(1)) == X(1));
  CHECK(max(X::neg_inf(), X(1)) == X(1));
}

TEST_CASE("double infinities and NaN") {
  CHECK(XReal(std::numeric_limits<double>::infinity()).is_pos_inf());
  CHECK(XReal(-std::numeric_limits<double>::infinity()).is_neg_inf());
  CHECK_THROWS_AS(XReal(std::numeric_limits<double>::quiet_NaN()), Error);
}

TEST_CASE_TEMPLATE("randomized algebraic properties", S, double, Rational) {
  using X = ExtendedReal<S>;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 9), num(-40, 40);
  auto draw = [&](bool nonneg) {
    int k = pick(rng);
    if (k == 0) return X::pos_inf();
    if (k == 1 && !nonneg) return X::neg_inf();
    int n = num(rng);
    if (nonneg && n < 0) n = -n;
    return X(S(n) / S(4));
  };
  for (int i = 0; i < 500; ++i) {
    X a = draw(false), b = draw(false), c = draw(false);
    CHECK(add(a, X::pos_inf()) == X::pos_inf());
    CHECK(add(a, b) == add(b, a));
    CHECK(neg(neg(a)) == a);
    if (a <= b) CHECK(add(a, c) <= add(b, c));
    X u = draw(true), l = draw(true), m = draw(true);
    CHECK(scale(l, scale(m, u)) == scale(scale(l, m), u));
  }
}

TEST_CASE_TEMPLATE("text form", S, double, Rational) {
  using X = ExtendedReal<S>;
  CHECK(to_string(X::pos_inf()) == "inf");
  CHECK(to_string(X::neg_inf()) == "-inf");
  CHECK(parse_xreal<S>("inf") == X::pos_inf());
  CHECK(parse_xreal<S>("-inf") == X::neg_inf());
  CHECK(parse_xreal<S>("2.5") == X(S(2.5)));
  CHECK(parse_xreal<S>(to_string(X(S(-0.125)))) == X(S(-0.125)));
  CHECK_THROWS_AS(parse_xreal<S>("abc"), Error);
}

TEST_CASE("rational text round trip is exact") {
  Rational third = Rational(1) / Rational(3);
  CHECK(ScalarTraits<Rational>::format(third) == "1/3");
  CHECK(ScalarTraits<Rational>::parse("1/3") == third);
  CHECK(ScalarTraits<Rational>::format(Rational(7) / Rational(10)) == "0.7");
  CHECK(ScalarTraits<Rational>::parse("0.7") == Rational(7) / Rational(10));
  CHECK(ScalarTraits<Rational>::parse("0976") == Rational(976));
  CHECK(ScalarTraits<Rational>::parse("-1.25e-2") == Rational(-1) / Rational(80));
  CHECK(ScalarTraits<Rational>::from_decimal_of(0.1) == Rational(1) / Rational(10));
  for (const char* t : {"0.49", "-3", "12.0625", "5/18", "-7/3"}) {
    Rational v = ScalarTraits<Rational>::parse(t);
    CHECK(ScalarTraits<Rational>::parse(ScalarTraits<Rational>::format(v)) == v);
  }
}

}  // TEST_SUITE
