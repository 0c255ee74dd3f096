#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtue/errors.hpp"
#include "gtue/situation.hpp"
#include "gtue/xreal.hpp"

namespace gtue {

/// n-measurable global variable: a table over X^n in lexicographic order.
template <class S>
class FinitaryVariable {
 public:
  using Value = ExtendedReal<S>;

  FinitaryVariable() : arity_(1), depth_(0), values_(1) {}
  FinitaryVariable(std::size_t arity, std::size_t depth, std::vector<Value> values);

  static FinitaryVariable constant(std::size_t arity, Value c) { return FinitaryVariable(arity, 0, {c}); }
  /// Builds the depth-n table from `fn` evaluated at every situation of depth n.
  static FinitaryVariable from_function(std::size_t arity, std::size_t depth,
                                        const std::function<Value(const Situation&)>& fn);

  std::size_t arity() const { return arity_; }
  std::size_t depth() const { return depth_; }
  const std::vector<Value>& values() const { return values_; }

  /// Value on Γ(s); requires depth(s) >= depth().
  const Value& at(const Situation& s) const;
  const Value& at_lex(std::size_t lex) const { return values_.at(lex); }

  bool bounded_below() const { return is_bounded_below<S>(values_); }
  bool bounded_above() const { return is_bounded_above<S>(values_); }

  friend bool operator==(const FinitaryVariable&, const FinitaryVariable&) = default;

 private:
  std::size_t arity_;
  std::size_t depth_;
  std::vector<Value> values_;

  template <class T>
  static bool is_bounded_below(const std::vector<ExtendedReal<T>>& v) {
    return std::none_of(v.begin(), v.end(), [](const auto& x) { return x.is_neg_inf(); });
  }
  template <class T>
  static bool is_bounded_above(const std::vector<ExtendedReal<T>>& v) {
    return std::none_of(v.begin(), v.end(), [](const auto& x) { return x.is_pos_inf(); });
  }
};

/// Same variable represented at depth m >= f.depth().
template <class S>
FinitaryVariable<S> lift(const FinitaryVariable<S>& f, std::size_t m);

/// Smallest depth at which `f` is measurable.
template <class S>
std::size_t measurable_depth(const FinitaryVariable<S>& f);

/// `f` re-expressed at its smallest measurable depth.
template <class S>
FinitaryVariable<S> reduce(const FinitaryVariable<S>& f) {
  const std::size_t d = measurable_depth(f);
  if (d == f.depth()) return f;
  std::vector<ExtendedReal<S>> v(table_size(f.arity(), d));
  const std::size_t block = table_size(f.arity(), f.depth() - d);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.at_lex(i * block);
  return FinitaryVariable<S>(f.arity(), d, std::move(v));
}

/// Pointwise map.
template <class S, class Fn>
FinitaryVariable<S> map(const FinitaryVariable<S>& f, Fn fn) {
  std::vector<ExtendedReal<S>> v(f.values().size());
  std::transform(f.values().begin(), f.values().end(), v.begin(), fn);
  return FinitaryVariable<S>(f.arity(), f.depth(), std::move(v));
}

/// Pointwise combination after lifting both operands to the larger depth.
template <class S, class Fn>
FinitaryVariable<S> zip(const FinitaryVariable<S>& f, const FinitaryVariable<S>& g, Fn fn) {
  if (f.arity() != g.arity()) fail(ErrorCode::SpaceMismatch, "variables over different state spaces");
  const std::size_t d = std::max(f.depth(), g.depth());
  auto lf = lift(f, d);
  auto lg = lift(g, d);
  std::vector<ExtendedReal<S>> v(lf.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(lf.at_lex(i), lg.at_lex(i));
  return FinitaryVariable<S>(f.arity(), d, std::move(v));
}

template <class S>
FinitaryVariable<S> operator+(const FinitaryVariable<S>& f, const FinitaryVariable<S>& g) {
  return zip(f, g, [](const auto& a, const auto& b) { return add(a, b); });
}

template <class S>
FinitaryVariable<S> operator-(const FinitaryVariable<S>& f) {
  return map(f, [](const auto& a) { return neg(a); });
}

template <class S>
FinitaryVariable<S> shifted(const FinitaryVariable<S>& f, const ExtendedReal<S>& c) {
  return map(f, [&](const auto& a) { return add(a, c); });
}

template <class S>
FinitaryVariable<S> scaled(const ExtendedReal<S>& lambda, const FinitaryVariable<S>& f) {
  return map(f, [&](const auto& a) { return scale(lambda, a); });
}

/// min{f, c}.
template <class S>
FinitaryVariable<S> clamp_above(const FinitaryVariable<S>& f, const ExtendedReal<S>& c) {
  return map(f, [&](const auto& a) { return min(a, c); });
}

/// max{f, c}.
template <class S>
FinitaryVariable<S> clamp_below(const FinitaryVariable<S>& f, const ExtendedReal<S>& c) {
  return map(f, [&](const auto& a) { return max(a, c); });
}

/// f <= g at every path.
template <class S>
bool pointwise_leq(const FinitaryVariable<S>& f, const FinitaryVariable<S>& g) {
  bool ok = true;
  zip(f, g, [&](const auto& a, const auto& b) {
    if (b < a) ok = false;
    return ExtendedReal<S>(0);
  });
  return ok;
}

/// Entries of `f` on Γ(s), as a contiguous lexicographic block.
template <class S>
std::span<const ExtendedReal<S>> block_on(const FinitaryVariable<S>& f, const Situation& s) {
  if (s.depth() >= f.depth()) {
    std::size_t lex = lex_index(s.prefix(f.depth()), f.arity());
    return {f.values().data() + lex, 1};
  }
  const std::size_t width = table_size(f.arity(), f.depth() - s.depth());
  const std::size_t start = lex_index(s, f.arity()) * width;
  return {f.values().data() + start, width};
}

/// sup of f over Γ(s).
template <class S>
ExtendedReal<S> sup_on(const FinitaryVariable<S>& f, const Situation& s = {}) {
  auto b = block_on(f, s);
  return *std::max_element(b.begin(), b.end());
}

/// inf of f over Γ(s).
template <class S>
ExtendedReal<S> inf_on(const FinitaryVariable<S>& f, const Situation& s = {}) {
  auto b = block_on(f, s);
  return *std::min_element(b.begin(), b.end());
}

/// Indicator of an n-measurable event given by its characteristic table.
template <class S>
FinitaryVariable<S> indicator(std::size_t arity, std::size_t depth, const std::function<bool(const Situation&)>& in) {
  return FinitaryVariable<S>::from_function(arity, depth, [&](const Situation& s) {
    return ExtendedReal<S>(in(s) ? 1 : 0);
  });
}

enum class Monotonicity { non_decreasing, non_increasing, none };

std::string to_string(Monotonicity m);
Monotonicity parse_monotonicity(const std::string& text);

/// Sequence {f_n}, n = 0, 1, ..., given by a pure generator.
template <class S>
struct FinitarySequence {
  std::function<FinitaryVariable<S>(std::size_t)> generator;
  Monotonicity monotonicity = Monotonicity::none;
  std::optional<S> uniform_lower_bound;
  /// When set, f_n = g + n 1_A for every n >= tail_index, so the evaluation of
  /// such a tail is convex in n.
  std::optional<std::size_t> tail_index;

  FinitaryVariable<S> operator()(std::size_t n) const { return generator(n); }
};

/// f^∧n := min{f, n}; non-decreasing with limit f.
template <class S>
FinitarySequence<S> clamp_above_sequence(const FinitaryVariable<S>& f);

/// f_n := max{f, -n}; non-increasing with limit f.
template <class S>
FinitarySequence<S> clamp_below_sequence(const FinitaryVariable<S>& f);

/// Given items, repeating the last one forever.
template <class S>
FinitarySequence<S> explicit_sequence(std::vector<FinitaryVariable<S>> items, Monotonicity m);

/// Checks the declared order on the first `k` elements; throws MonotonicityViolated.
template <class S>
void spot_check(const FinitarySequence<S>& seq, std::size_t k = 16);

/// Sequence of n-measurable gambles f_n = max{min{h_n, n, sup_f}, inf_f}, where
/// h_n pads the input with repeats until each element becomes n-measurable.
template <class S>
FinitarySequence<S> normalize_sequence(const FinitarySequence<S>& seq, const ExtendedReal<S>& sup_f,
                                       const ExtendedReal<S>& inf_f);

// ---------------------------------------------------------------------------

template <class S>
FinitaryVariable<S>::FinitaryVariable(std::size_t arity, std::size_t depth, std::vector<Value> values)
    : arity_(arity), depth_(depth), values_(std::move(values)) {
  if (arity_ == 0) fail(ErrorCode::InvalidArgument, "empty state space");
  if (values_.size() != table_size(arity_, depth_)) {
    fail(ErrorCode::InvalidArgument, "table of depth " + std::to_string(depth_) + " needs " +
                                         std::to_string(table_size(arity_, depth_)) + " entries, got " +
                                         std::to_string(values_.size()));
  }
}

template <class S>
FinitaryVariable<S> FinitaryVariable<S>::from_function(std::size_t arity, std::size_t depth,
                                                       const std::function<Value(const Situation&)>& fn) {
  SituationIndex idx(arity, depth);
  std::vector<Value> v(idx.count(depth));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(idx.situation(depth, i));
  return FinitaryVariable(arity, depth, std::move(v));
}

template <class S>
const typename FinitaryVariable<S>::Value& FinitaryVariable<S>::at(const Situation& s) const {
  if (s.depth() < depth_) fail(ErrorCode::InvalidArgument, "situation too short to determine the variable");
  return values_[lex_index(s.prefix(depth_), arity_)];
}

template <class S>
FinitaryVariable<S> lift(const FinitaryVariable<S>& f, std::size_t m) {
  if (m < f.depth()) fail(ErrorCode::InvalidArgument, "cannot lift to a smaller depth");
  if (m == f.depth()) return f;
  const std::size_t block = table_size(f.arity(), m - f.depth());
  std::vector<ExtendedReal<S>> v;
  v.reserve(f.values().size() * block);
  for (const auto& x : f.values()) v.insert(v.end(), block, x);
  return FinitaryVariable<S>(f.arity(), m, std::move(v));
}

template <class S>
std::size_t measurable_depth(const FinitaryVariable<S>& f) {
  for (std::size_t d = 0; d < f.depth(); ++d) {
    const std::size_t block = table_size(f.arity(), f.depth() - d);
    bool ok = true;
    for (std::size_t i = 0; i < f.values().size() && ok; ++i) {
      if (!(f.at_lex(i) == f.at_lex(i - i % block))) ok = false;
    }
    if (ok) return d;
  }
  return f.depth();
}

template <class S>
FinitarySequence<S> clamp_above_sequence(const FinitaryVariable<S>& f) {
  if (!f.bounded_below()) fail(ErrorCode::NotBoundedBelow, "clamp_above base takes the value -inf");
  FinitarySequence<S> seq;
  seq.generator = [f](std::size_t n) { return clamp_above(f, ExtendedReal<S>(S(static_cast<long long>(n)))); };
  seq.monotonicity = Monotonicity::non_decreasing;
  seq.uniform_lower_bound = std::min(S(0), inf_on(f).is_finite() ? inf_on(f).finite() : S(0));
  // Past every finite entry the sequence is g + n 1_{f = +inf}.
  std::size_t n0 = 0;
  for (const auto& v : f.values()) {
    if (!v.is_finite()) continue;
    double d = ScalarTraits<S>::to_double(v.finite());
    if (d > 0) n0 = std::max(n0, static_cast<std::size_t>(std::ceil(d)));
  }
  seq.tail_index = n0;
  return seq;
}

template <class S>
FinitarySequence<S> clamp_below_sequence(const FinitaryVariable<S>& f) {
  if (!f.bounded_below()) fail(ErrorCode::NotBoundedBelow, "clamp_below base takes the value -inf");
  FinitarySequence<S> seq;
  seq.generator = [f](std::size_t n) { return clamp_below(f, ExtendedReal<S>(S(-static_cast<long long>(n)))); };
  seq.monotonicity = Monotonicity::non_increasing;
  auto lo = inf_on(f);
  if (lo.is_finite()) seq.uniform_lower_bound = lo.finite();
  return seq;
}

template <class S>
FinitarySequence<S> explicit_sequence(std::vector<FinitaryVariable<S>> items, Monotonicity m) {
  if (items.empty()) fail(ErrorCode::InvalidArgument, "explicit sequence needs at least one item");
  for (const auto& it : items) {
    if (!it.bounded_below()) fail(ErrorCode::NotBoundedBelow, "sequence element takes the value -inf");
  }
  FinitarySequence<S> seq;
  seq.generator = [items = std::move(items)](std::size_t n) { return items[std::min(n, items.size() - 1)]; };
  seq.monotonicity = m;
  return seq;
}

template <class S>
void spot_check(const FinitarySequence<S>& seq, std::size_t k) {
  if (seq.monotonicity == Monotonicity::none || k < 2) return;
  FinitaryVariable<S> prev = seq(0);
  for (std::size_t n = 1; n < k; ++n) {
    FinitaryVariable<S> cur = seq(n);
    bool ok = seq.monotonicity == Monotonicity::non_decreasing ? pointwise_leq(prev, cur) : pointwise_leq(cur, prev);
    if (!ok) {
      fail(ErrorCode::MonotonicityViolated, "elements " + std::to_string(n - 1) + " and " + std::to_string(n) +
                                                " break the declared " + to_string(seq.monotonicity) + " order");
    }
    prev = std::move(cur);
  }
}

template <class S>
FinitarySequence<S> normalize_sequence(const FinitarySequence<S>& seq, const ExtendedReal<S>& sup_f,
                                       const ExtendedReal<S>& inf_f) {
  if (inf_f.is_neg_inf()) fail(ErrorCode::InvalidArgument, "inf f must be finite or +inf");
  FinitarySequence<S> out;
  out.monotonicity =
      seq.monotonicity == Monotonicity::non_decreasing ? Monotonicity::non_decreasing : Monotonicity::none;
  if (inf_f.is_pos_inf()) {
    // f = +inf everywhere: the constants n.
    const std::size_t arity = seq(0).arity();
    out.generator = [arity](std::size_t n) {
      return FinitaryVariable<S>::constant(arity, ExtendedReal<S>(S(static_cast<long long>(n))));
    };
    out.monotonicity = Monotonicity::non_decreasing;
    out.uniform_lower_bound = S(0);
    return out;
  }
  out.uniform_lower_bound = inf_f.finite();
  out.generator = [seq, sup_f, inf_f](std::size_t n) {
    const std::size_t arity = seq(0).arity();
    FinitaryVariable<S> h = FinitaryVariable<S>::constant(arity, ExtendedReal<S>(0));
    std::size_t gamma = 0;
    for (std::size_t m = 1; m <= n; ++m) {
      FinitaryVariable<S> g = reduce(seq(gamma));
      if (!g.bounded_below()) fail(ErrorCode::NotBoundedBelow, "sequence element takes the value -inf");
      if (g.depth() <= m) {
        h = std::move(g);
        ++gamma;
      }
    }
    const ExtendedReal<S> cap = min(ExtendedReal<S>(S(static_cast<long long>(n))), sup_f);
    return clamp_below(clamp_above(h, cap), inf_f);
  };
  return out;
}

}  // namespace gtue
