#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "gtue/errors.hpp"
#include "gtue/state_space.hpp"
#include "gtue/xreal.hpp"

namespace gtue {

/// Table X -> extended reals, indexed by state.
template <class S>
using LocalVariable = std::vector<ExtendedReal<S>>;

template <class S>
bool is_bounded_below(std::span<const ExtendedReal<S>> h) {
  return std::none_of(h.begin(), h.end(), [](const auto& v) { return v.is_neg_inf(); });
}

template <class S>
bool is_bounded_above(std::span<const ExtendedReal<S>> h) {
  return std::none_of(h.begin(), h.end(), [](const auto& v) { return v.is_pos_inf(); });
}

/// Probability mass function over X.
template <class S>
using Pmf = std::vector<S>;

/// Finitely generated credal set, stored as a list of (possibly redundant)
/// extreme points. Its upper envelope is the local upper expectation.
template <class S>
class CredalSet {
 public:
  /// Throws InvalidArgument unless every point is a PMF of the same dimension.
  explicit CredalSet(std::vector<Pmf<S>> points);

  /// The full simplex: all degenerate PMFs.
  static CredalSet vacuous(std::size_t dimension);
  /// Single PMF.
  static CredalSet precise(Pmf<S> p) { return CredalSet(std::vector<Pmf<S>>{std::move(p)}); }

  std::size_t dimension() const { return points_.front().size(); }
  std::size_t size() const { return points_.size(); }
  const std::vector<Pmf<S>>& points() const { return points_; }
  const Pmf<S>& point(std::size_t i) const { return points_.at(i); }

  friend bool operator==(const CredalSet&, const CredalSet&) = default;

 private:
  std::vector<Pmf<S>> points_;
};

/// Upper bound assessment p·gamble <= upper.
template <class S>
struct Assessment {
  std::vector<S> gamble;
  S upper;
};

template <class S>
using AssessmentSet = std::vector<Assessment<S>>;

/// Σ_x p(x) h(x) with 0·(+inf) = 0.
template <class S>
ExtendedReal<S> expectation(const Pmf<S>& p, std::span<const ExtendedReal<S>> h) {
  ExtendedReal<S> total(0);
  for (std::size_t x = 0; x < p.size(); ++x) total = add(total, scale(ExtendedReal<S>(p[x]), h[x]));
  return total;
}

/// max over extreme points of the expectation of `h`; `h` must be bounded below.
template <class S>
ExtendedReal<S> local_upper(const CredalSet<S>& model, std::span<const ExtendedReal<S>> h) {
  if (h.size() != model.dimension()) fail(ErrorCode::InvalidArgument, "variable size differs from |X|");
  if (!is_bounded_below(h)) fail(ErrorCode::UnboundedBelowInput, "local variable takes the value -inf");
  ExtendedReal<S> best = ExtendedReal<S>::neg_inf();
  for (const auto& p : model.points()) {
    best = max(best, expectation(p, h));
    if (best.is_pos_inf()) break;
  }
  return best;
}

/// Conjugate lower expectation, -upper(-h); `h` must be bounded above.
template <class S>
ExtendedReal<S> local_lower(const CredalSet<S>& model, std::span<const ExtendedReal<S>> h) {
  if (!is_bounded_above(h)) fail(ErrorCode::UnboundedAboveInput, "local variable takes the value +inf");
  LocalVariable<S> negated(h.size());
  std::transform(h.begin(), h.end(), negated.begin(), [](const auto& v) { return neg(v); });
  return neg(local_upper<S>(model, negated));
}

/// Vertices of {p in the simplex : p·g_i <= b_i for all i}.
/// Throws SureLoss when the polytope is empty and DimensionCapExceeded when
/// |X| > `dimension_cap`.
template <class S>
CredalSet<S> natural_extension(const StateSpace& space, const AssessmentSet<S>& assessments,
                               std::size_t dimension_cap = 6);

// ---------------------------------------------------------------------------

template <class S>
CredalSet<S>::CredalSet(std::vector<Pmf<S>> points) : points_(std::move(points)) {
  if (points_.empty()) fail(ErrorCode::InvalidArgument, "credal set needs at least one extreme point");
  const std::size_t n = points_.front().size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "PMF over an empty state space");
  for (const auto& p : points_) {
    if (p.size() != n) fail(ErrorCode::InvalidArgument, "extreme points differ in dimension");
    S total(0);
    for (const auto& mass : p) {
      if (mass < S(0)) fail(ErrorCode::InvalidArgument, "negative probability mass");
      total += mass;
    }
    if (abs_value(S(total - S(1))) > ScalarTraits<S>::pmf_tol()) {
      fail(ErrorCode::InvalidArgument, "extreme point does not sum to one");
    }
  }
}

template <class S>
CredalSet<S> CredalSet<S>::vacuous(std::size_t dimension) {
  std::vector<Pmf<S>> points;
  for (std::size_t i = 0; i < dimension; ++i) {
    Pmf<S> p(dimension, S(0));
    p[i] = S(1);
    points.push_back(std::move(p));
  }
  return CredalSet(std::move(points));
}

namespace detail {

/// Solves the square system A x = rhs; returns false when A is singular.
template <class S>
bool solve_square(std::vector<std::vector<S>> a, std::vector<S> rhs, std::vector<S>& x) {
  const std::size_t n = rhs.size();
  const S eps = ScalarTraits<S>::exact ? S(0) : S(1e-12);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs_value(a[r][col]) > abs_value(a[pivot][col])) pivot = r;
    }
    if (abs_value(a[pivot][col]) <= eps) return false;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == S(0)) continue;
      S factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  x.assign(n, S(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
  return true;
}

}  // namespace detail

template <class S>
CredalSet<S> natural_extension(const StateSpace& space, const AssessmentSet<S>& assessments,
                               std::size_t dimension_cap) {
  const std::size_t n = space.size();
  if (n > dimension_cap) {
    fail(ErrorCode::DimensionCapExceeded,
         "|X| = " + std::to_string(n) + " exceeds cap " + std::to_string(dimension_cap));
  }
  // Inequalities row·p <= bound: non-negativity first, then the assessments.
  std::vector<std::vector<S>> rows;
  std::vector<S> bounds;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<S> r(n, S(0));
    r[i] = S(-1);
    rows.push_back(std::move(r));
    bounds.push_back(S(0));
  }
  for (const auto& a : assessments) {
    if (a.gamble.size() != n) fail(ErrorCode::InvalidArgument, "assessment gamble size differs from |X|");
    rows.push_back(a.gamble);
    bounds.push_back(a.upper);
  }
  const S tol = ScalarTraits<S>::exact ? S(0) : S(1e-9);
  const std::size_t total = rows.size();
  const std::size_t pick = n - 1;

  std::vector<Pmf<S>> vertices;
  auto is_duplicate = [&](const Pmf<S>& p) {
    return std::any_of(vertices.begin(), vertices.end(), [&](const Pmf<S>& q) {
      for (std::size_t i = 0; i < n; ++i)
        if (abs_value(S(p[i] - q[i])) > tol) return false;
      return true;
    });
  };

  std::vector<std::size_t> chosen(pick);
  for (std::size_t i = 0; i < pick; ++i) chosen[i] = i;
  while (true) {
    std::vector<std::vector<S>> a;
    std::vector<S> rhs;
    a.emplace_back(n, S(1));
    rhs.push_back(S(1));
    for (auto c : chosen) {
      a.push_back(rows[c]);
      rhs.push_back(bounds[c]);
    }
    std::vector<S> p;
    if (detail::solve_square<S>(std::move(a), std::move(rhs), p)) {
      bool feasible = true;
      for (std::size_t r = 0; r < total && feasible; ++r) {
        S lhs(0);
        for (std::size_t i = 0; i < n; ++i) lhs += rows[r][i] * p[i];
        if (lhs > bounds[r] + tol) feasible = false;
      }
      if (feasible) {
        if constexpr (!ScalarTraits<S>::exact) {
          S sum(0);
          for (auto& v : p) {
            if (v < S(0)) v = S(0);
            sum += v;
          }
          for (auto& v : p) v /= sum;
        }
        if (!is_duplicate(p)) vertices.push_back(std::move(p));
      }
    }
    // Next combination of `pick` rows out of `total`.
    std::size_t i = pick;
    while (i > 0 && chosen[i - 1] == total - pick + i - 1) --i;
    if (i == 0) break;
    ++chosen[i - 1];
    for (std::size_t j = i; j < pick; ++j) chosen[j] = chosen[j - 1] + 1;
  }
  if (vertices.empty()) fail(ErrorCode::SureLoss, "no PMF satisfies the assessments");
  return CredalSet<S>(std::move(vertices));
}

}  // namespace gtue
