#pragma once

#include <compare>
#include <concepts>
#include <limits>
#include <type_traits>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "gtue/errors.hpp"
#include "gtue/scalar.hpp"

namespace gtue {

/// Element of R ∪ {-inf, +inf} with the upper-expectation conventions:
///
///   +inf + (-inf) = -inf + (+inf) = +inf,  c + inf = inf,  c - inf = -inf,
///   0 * (±inf) = 0,  lambda * (+inf) = +inf for lambda > 0,
///   (-lambda) * (+inf) = -inf,  (+inf) * a = +inf for a > 0.
///
/// Totally ordered, never NaN.
template <class S>
class ExtendedReal {
 public:
  enum class Kind : std::uint8_t { finite, pos_inf, neg_inf };

  ExtendedReal() : value_(0) {}

  // NOLINTNEXTLINE(google-explicit-constructor)
  ExtendedReal(S value) : value_(std::move(value)) { normalize(); }

  template <class I>
    requires std::integral<I>
  // NOLINTNEXTLINE(google-explicit-constructor)
  ExtendedReal(I value) : value_(static_cast<long long>(value)) {}

  static ExtendedReal pos_inf() { return ExtendedReal(Kind::pos_inf); }
  static ExtendedReal neg_inf() { return ExtendedReal(Kind::neg_inf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  const S& finite() const {
    if (!is_finite()) fail(ErrorCode::InvalidArgument, "finite() on an infinite value");
    return value_;
  }

  int sign() const {
    if (is_pos_inf()) return 1;
    if (is_neg_inf()) return -1;
    return value_ > S(0) ? 1 : (value_ < S(0) ? -1 : 0);
  }

  double to_double() const;

  friend std::weak_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    auto rank = [](Kind k) { return k == Kind::neg_inf ? 0 : (k == Kind::finite ? 1 : 2); };
    if (a.kind_ != b.kind_ || !a.is_finite()) return rank(a.kind_) <=> rank(b.kind_);
    if (a.value_ < b.value_) return std::weak_ordering::less;
    if (b.value_ < a.value_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return (a <=> b) == std::weak_ordering::equivalent;
  }

 private:
  explicit ExtendedReal(Kind kind) : value_(0), kind_(kind) {}
  void normalize();

  S value_;
  Kind kind_ = Kind::finite;
};

template <class S>
void ExtendedReal<S>::normalize() {
  if constexpr (std::is_floating_point_v<S>) {
    if (std::isnan(value_)) fail(ErrorCode::InvalidArgument, "NaN is not an extended real");
    if (std::isinf(value_)) {
      kind_ = value_ > 0 ? Kind::pos_inf : Kind::neg_inf;
      value_ = 0;
    }
  }
}

template <class S>
double ExtendedReal<S>::to_double() const {
  if (is_pos_inf()) return std::numeric_limits<double>::infinity();
  if (is_neg_inf()) return -std::numeric_limits<double>::infinity();
  return ScalarTraits<S>::to_double(value_);
}

template <class S>
ExtendedReal<S> add(const ExtendedReal<S>& a, const ExtendedReal<S>& b) {
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtendedReal<S>::pos_inf();
  if (a.is_neg_inf() || b.is_neg_inf()) return ExtendedReal<S>::neg_inf();
  return ExtendedReal<S>(S(a.finite() + b.finite()));
}

template <class S>
ExtendedReal<S> neg(const ExtendedReal<S>& a) {
  if (a.is_pos_inf()) return ExtendedReal<S>::neg_inf();
  if (a.is_neg_inf()) return ExtendedReal<S>::pos_inf();
  return ExtendedReal<S>(S(-a.finite()));
}

/// a - b under the same conventions, so +inf - +inf = +inf.
template <class S>
ExtendedReal<S> sub(const ExtendedReal<S>& a, const ExtendedReal<S>& b) {
  return add(a, neg(b));
}

/// lambda * a. `lambda` may be any finite real, or +inf with a >= 0.
template <class S>
ExtendedReal<S> scale(const ExtendedReal<S>& lambda, const ExtendedReal<S>& a) {
  if (lambda.is_neg_inf()) fail(ErrorCode::UndefinedProduct, "(-inf) * a is undefined");
  if (lambda.is_pos_inf()) {
    int s = a.sign();
    if (s < 0) fail(ErrorCode::UndefinedProduct, "(+inf) * a is undefined for a < 0");
    return s == 0 ? ExtendedReal<S>(0) : ExtendedReal<S>::pos_inf();
  }
  int ls = lambda.sign();
  if (ls == 0) return ExtendedReal<S>(0);
  if (a.is_finite()) return ExtendedReal<S>(S(lambda.finite() * a.finite()));
  bool positive = (ls > 0) == a.is_pos_inf();
  return positive ? ExtendedReal<S>::pos_inf() : ExtendedReal<S>::neg_inf();
}

template <class S>
ExtendedReal<S> operator+(const ExtendedReal<S>& a, const ExtendedReal<S>& b) {
  return add(a, b);
}
template <class S>
ExtendedReal<S> operator-(const ExtendedReal<S>& a, const ExtendedReal<S>& b) {
  return sub(a, b);
}
template <class S>
ExtendedReal<S> operator-(const ExtendedReal<S>& a) {
  return neg(a);
}

template <class S>
const ExtendedReal<S>& min(const ExtendedReal<S>& a, const ExtendedReal<S>& b) {
  return b < a ? b : a;
}
template <class S>
const ExtendedReal<S>& max(const ExtendedReal<S>& a, const ExtendedReal<S>& b) {
  return a < b ? b : a;
}

/// |a - b| for comparisons; infinite whenever the pair is not two equal infinities.
template <class S>
ExtendedReal<S> distance(const ExtendedReal<S>& a, const ExtendedReal<S>& b) {
  if (a.is_finite() && b.is_finite()) return ExtendedReal<S>(abs_value(S(a.finite() - b.finite())));
  if (a == b) return ExtendedReal<S>(0);
  return ExtendedReal<S>::pos_inf();
}

/// a <= b + tol.
template <class S>
bool leq_tol(const ExtendedReal<S>& a, const ExtendedReal<S>& b, const S& tol) {
  return a <= add(b, ExtendedReal<S>(tol));
}

/// |a - b| <= tol, with equal infinities counted as equal.
template <class S>
bool near(const ExtendedReal<S>& a, const ExtendedReal<S>& b, const S& tol) {
  return distance(a, b) <= ExtendedReal<S>(tol);
}

/// "inf", "-inf", or the scalar's decimal form.
template <class S>
std::string to_string(const ExtendedReal<S>& a) {
  if (a.is_pos_inf()) return "inf";
  if (a.is_neg_inf()) return "-inf";
  return ScalarTraits<S>::format(a.finite());
}

/// Accepts "inf", "+inf", "-inf", decimal literals and "p/q".
template <class S>
ExtendedReal<S> parse_xreal(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "Infinity") return ExtendedReal<S>::pos_inf();
  if (text == "-inf" || text == "-Infinity") return ExtendedReal<S>::neg_inf();
  return ExtendedReal<S>(ScalarTraits<S>::parse(text));
}

template <class S>
std::ostream& operator<<(std::ostream& os, const ExtendedReal<S>& a) {
  return os << to_string(a);
}

using XReal = ExtendedReal<double>;
using XRational = ExtendedReal<Rational>;

}  // namespace gtue
