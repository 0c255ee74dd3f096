#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtue/errors.hpp"
#include "gtue/event_tree.hpp"
#include "gtue/process.hpp"
#include "gtue/tree_model.hpp"
#include "gtue/xreal.hpp"

namespace gtue {

enum class EvalStatus { exact, converged, budget_exhausted };
/// Side from which a budget-exhausted iterate bounds the limit value.
enum class BoundDirection { lower, upper };

std::string to_string(EvalStatus s);
std::string to_string(BoundDirection d);

template <class S>
struct EvalResult {
  ExtendedReal<S> value;
  EvalStatus status = EvalStatus::exact;
  std::size_t iterations = 0;
  std::optional<ExtendedReal<S>> last_delta;
  std::optional<BoundDirection> bound;
};

struct LimitOptions {
  std::size_t budget = 64;
  double divergence_ceiling = 1e12;
  std::size_t spot_check = 16;
};

/// E_V(f | s) by backward recursion over Γ(s).
template <class S>
ExtendedReal<S> eval_finitary(const TreeModel<S>& tree, const FinitaryVariable<S>& f, const Situation& s = {});

/// s ↦ E_V(f | s) up to depth f.depth(), terminal at the level cut.
template <class S>
Process<S> eval_process(const TreeModel<S>& tree, const FinitaryVariable<S>& f);

/// -E_V(-f | s) for bounded-above f.
template <class S>
ExtendedReal<S> eval_lower_finitary(const TreeModel<S>& tree, const FinitaryVariable<S>& f, const Situation& s = {});

/// Limit of E_V(f_n | s) for a monotone sequence.
template <class S>
EvalResult<S> eval_limit(const TreeModel<S>& tree, const FinitarySequence<S>& seq, const Situation& s, const S& tol,
                         const LimitOptions& options = {});

/// M(s), after checking that M is a supermartingale whose path limits dominate f
/// on Γ(s). Throws NotASupermartingale, NotTerminal or DominanceFailed.
template <class S>
ExtendedReal<S> certificate_bound(const TreeModel<S>& tree, const Process<S>& m, const FinitaryVariable<S>& f,
                                  const Situation& s, const S& tol);

template <class S>
struct ModelComparison {
  ExtendedReal<S> value_a;
  ExtendedReal<S> value_b;
  /// Q^A_u(V_B(u·)) <= V_B(u) held at every node of Γ(s) below depth f.depth().
  bool locally_dominated = true;
  std::optional<Situation> witness;
  /// Whether value_a <= value_b (+ tol); must hold when locally_dominated.
  bool ordered = true;
};

template <class S>
ModelComparison<S> compare_models(const TreeModel<S>& a, const TreeModel<S>& b, const FinitaryVariable<S>& f,
                                  const Situation& s = {}, const S& tol = ScalarTraits<S>::default_tol());

// ---------------------------------------------------------------------------

namespace detail {

template <class S>
void check_evaluable(const TreeModel<S>& tree, const FinitaryVariable<S>& f) {
  if (f.arity() != tree.arity()) fail(ErrorCode::SpaceMismatch, "variable and tree use different state spaces");
  if (f.depth() > tree.max_depth()) {
    fail(ErrorCode::DepthExceeded, "variable depth " + std::to_string(f.depth()) + " exceeds tree max_depth " +
                                       std::to_string(tree.max_depth()));
  }
  if (!f.bounded_below()) fail(ErrorCode::NotBoundedBelow, "variable takes the value -inf");
}

/// levels[k] holds E_V(f | ·) on the depth-(d + k) situations in Γ(s), lexicographically.
template <class S>
std::vector<std::vector<ExtendedReal<S>>> backward(const TreeModel<S>& tree, const FinitaryVariable<S>& f,
                                                   const Situation& s) {
  const std::size_t n = f.depth();
  const std::size_t d = s.depth();
  const std::size_t arity = f.arity();
  std::vector<std::vector<ExtendedReal<S>>> levels(n - d + 1);
  auto leaves = block_on(f, s);
  levels[n - d].assign(leaves.begin(), leaves.end());
  std::vector<ExtendedReal<S>> h(arity);
  for (std::size_t k = n - d; k-- > 0;) {
    const auto& below = levels[k + 1];
    auto& here = levels[k];
    here.resize(below.size() / arity);
    Situation u = s;
    u.states.resize(d + k, 0);
    for (std::size_t j = 0; j < here.size(); ++j) {
      // u = s followed by the base-|X| digits of j.
      std::size_t r = j;
      for (std::size_t i = d + k; i-- > d;) {
        u.states[i] = r % arity;
        r /= arity;
      }
      std::copy(below.begin() + static_cast<std::ptrdiff_t>(j * arity),
                below.begin() + static_cast<std::ptrdiff_t>((j + 1) * arity), h.begin());
      here[j] = tree.upper(u, h);
    }
  }
  return levels;
}

}  // namespace detail

template <class S>
ExtendedReal<S> eval_finitary(const TreeModel<S>& tree, const FinitaryVariable<S>& f, const Situation& s) {
  detail::check_evaluable(tree, f);
  if (s.depth() >= f.depth()) return f.at(s);
  return detail::backward(tree, f, s).front().front();
}

template <class S>
Process<S> eval_process(const TreeModel<S>& tree, const FinitaryVariable<S>& f) {
  detail::check_evaluable(tree, f);
  auto levels = detail::backward(tree, f, Situation{});
  std::vector<ExtendedReal<S>> values;
  for (auto& l : levels) values.insert(values.end(), l.begin(), l.end());
  return Process<S>(f.arity(), f.depth(), std::move(values), Cut::level(f.arity(), f.depth()));
}

template <class S>
ExtendedReal<S> eval_lower_finitary(const TreeModel<S>& tree, const FinitaryVariable<S>& f, const Situation& s) {
  if (!f.bounded_above()) fail(ErrorCode::NotBoundedAbove, "variable takes the value +inf");
  return neg(eval_finitary(tree, -f, s));
}

template <class S>
EvalResult<S> eval_limit(const TreeModel<S>& tree, const FinitarySequence<S>& seq, const Situation& s, const S& tol,
                         const LimitOptions& options) {
  if (seq.monotonicity == Monotonicity::none) {
    fail(ErrorCode::InvalidArgument, "limit evaluation needs a monotone sequence");
  }
  if (options.budget < 1) fail(ErrorCode::InvalidArgument, "budget must be at least 1");
  spot_check(seq, options.spot_check);
  const bool up = seq.monotonicity == Monotonicity::non_decreasing;
  const ExtendedReal<S> slack(tol);
  const ExtendedReal<S> ceiling(ScalarTraits<S>::from_double(options.divergence_ceiling));

  EvalResult<S> result;
  ExtendedReal<S> prev;
  for (std::size_t n = 0; n < options.budget; ++n) {
    ExtendedReal<S> cur = eval_finitary(tree, seq(n), s);
    result.iterations = n + 1;
    if (n > 0) {
      bool ordered = up ? prev <= add(cur, slack) : cur <= add(prev, slack);
      if (!ordered) {
        fail(ErrorCode::MonotonicityViolated, "iterates " + to_string(prev) + " and " + to_string(cur) +
                                                  " break the declared " + to_string(seq.monotonicity) + " order");
      }
      result.last_delta = distance(cur, prev);
    }
    result.value = cur;
    if (up && (cur.is_pos_inf() || cur > ceiling)) {
      result.value = ExtendedReal<S>::pos_inf();
      result.status = EvalStatus::converged;
      return result;
    }
    if (n > 0) {
      if (*result.last_delta <= slack) {
        result.status = EvalStatus::converged;
        return result;
      }
      // Convex tail: one strict increase past the tail index forces divergence.
      if (up && seq.tail_index && n - 1 >= *seq.tail_index) {
        result.value = ExtendedReal<S>::pos_inf();
        result.status = EvalStatus::converged;
        return result;
      }
    }
    prev = cur;
  }
  result.status = EvalStatus::budget_exhausted;
  result.bound = up ? BoundDirection::lower : BoundDirection::upper;
  return result;
}

template <class S>
ExtendedReal<S> certificate_bound(const TreeModel<S>& tree, const Process<S>& m, const FinitaryVariable<S>& f,
                                  const Situation& s, const S& tol) {
  if (!m.terminal_cut()) fail(ErrorCode::NotTerminal, "certificate needs a terminal process");
  auto verdict = check_supermartingale(tree, m, tol);
  if (!verdict.is_supermartingale) {
    std::string where = verdict.worst_violation ? format_situation(verdict.worst_violation->situation, tree.space())
                                                : std::string("(unbounded below)");
    fail(ErrorCode::NotASupermartingale, "certificate violates the supermartingale condition at '" + where + "'");
  }
  const ExtendedReal<S> slack(tol);
  for (const auto& u : m.terminal_cut()->members()) {
    Situation region;
    if (precedes_or_equal(s, u)) {
      region = u;
    } else if (precedes_or_equal(u, s)) {
      region = s;
    } else {
      continue;
    }
    ExtendedReal<S> target = sup_on(f, region);
    if (!(target <= add(m.at(u), slack))) {
      fail(ErrorCode::DominanceFailed, "tail value " + to_string(m.at(u)) + " at '" +
                                           format_situation(u, tree.space()) + "' is below sup f = " +
                                           to_string(target));
    }
  }
  return m.at(s);
}

template <class S>
ModelComparison<S> compare_models(const TreeModel<S>& a, const TreeModel<S>& b, const FinitaryVariable<S>& f,
                                  const Situation& s, const S& tol) {
  if (!(a.space() == b.space())) fail(ErrorCode::SpaceMismatch, "trees use different state spaces");
  ModelComparison<S> out;
  out.value_a = eval_finitary(a, f, s);
  out.value_b = eval_finitary(b, f, s);
  if (s.depth() < f.depth()) {
    Process<S> vb = eval_process(b, f);
    const ExtendedReal<S> slack(tol);
    for_each_extension(s, f.arity(), f.depth() - 1, [&](const Situation& u) {
      if (!out.locally_dominated) return;
      auto next = vb.children(u);
      if (!(a.upper(u, next) <= add(vb.at(u), slack))) {
        out.locally_dominated = false;
        out.witness = u;
      }
    });
  }
  out.ordered = out.value_a <= add(out.value_b, ExtendedReal<S>(tol));
  return out;
}

}  // namespace gtue
