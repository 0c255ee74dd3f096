#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtue/errors.hpp"
#include "gtue/event_tree.hpp"
#include "gtue/global_eval.hpp"
#include "gtue/process.hpp"
#include "gtue/tree_model.hpp"
#include "gtue/xreal.hpp"

namespace gtue {

/// Alternating first-hitting cuts V_1 ⊏ U_1 ⊏ V_2 ⊏ ... below a root, truncated
/// at the horizon. pairs[k-1] = (V_k, U_k); U_k may be empty.
struct CutSystem {
  Situation root;
  std::vector<std::pair<Cut, Cut>> pairs;

  std::size_t size() const { return pairs.size(); }
  const Cut& v(std::size_t k) const { return pairs.at(k - 1).first; }
  const Cut& u(std::size_t k) const { return pairs.at(k - 1).second; }

  friend bool operator==(const CutSystem&, const CutSystem&) = default;
};

/// One realized bound check at a situation that has completed k >= 1 cycles.
template <class S>
struct BoundCheck {
  Situation situation;
  std::size_t k = 0;
  /// Doob: T(s) - T(t). Levy: T(s).
  ExtendedReal<S> observed;
  /// Doob: Σ_{l<=k} M(u_l) - M(v_l). Levy: Π_{l<=k} P(u_l) / P(v_l).
  ExtendedReal<S> expected;
  /// Doob: k(b - a). Levy: (b/a)^k.
  S bound;
  bool identity_holds = false;
  bool bound_holds = false;
};

enum class TransformKind { doob, levy };

template <class S>
struct Transform {
  TransformKind kind = TransformKind::doob;
  Process<S> process;
  CutSystem cuts;
  S a;
  S b;
  std::vector<BoundCheck<S>> checks;

  bool checks_pass() const {
    for (const auto& c : checks)
      if (!c.identity_holds || !c.bound_holds) return false;
    return true;
  }
};

struct DoobOptions {
  /// Shift and scale the input so it is non-negative with value 1 at the root.
  bool normalize = false;
};

/// Doob upcrossing transform M^{a,b} of a supermartingale below `t`.
/// Throws BadWindow, NonFiniteRoot, NotASupermartingale.
template <class S>
Transform<S> doob_transform(const TreeModel<S>& tree, const Process<S>& m, const Situation& t, const S& a,
                            const S& b, const DoobOptions& options = {});

/// Σ w_i M^{a_i,b_i} over the normalized input; a t-test supermartingale.
template <class S>
Process<S> doob_mixture(const TreeModel<S>& tree, const Process<S>& m, const Situation& t,
                        const std::vector<std::pair<S, S>>& windows, const std::vector<S>& weights);

/// Number of completed upcrossings on the chain up to `prefix`.
std::size_t upcrossings(const CutSystem& cuts, const Situation& prefix);

/// Recomputes the Doob cut system of `m` for (a, b) then counts.
template <class S>
std::size_t upcrossings(const Process<S>& m, const Situation& prefix, const S& a, const S& b, const Situation& t = {});

/// Levy multiplicative test supermartingale T^{a,b} for the gamble f below s',
/// built from the E_V-process of f' = f - inf f + delta.
/// Throws BadWindow, WindowOutsideRange.
template <class S>
Transform<S> levy_transform(const TreeModel<S>& tree, const FinitaryVariable<S>& f, const Situation& s_prime,
                            const S& a, const S& b, const S& delta);

// ---------------------------------------------------------------------------

namespace detail {

struct NodePhase {
  bool visited = false;
  bool active = false;     // the step to the children mirrors the base process
  bool in_v = false;       // member of V_{completed+1}
  bool in_u = false;       // member of U_{completed}
  std::size_t completed = 0;  // U members at or before the node
};

/// First-hitting walk below `root`. With `test_root` false the root opens the
/// search for V_1 without being tested itself.
inline CutSystem walk_cuts(const Situation& root, std::size_t arity, std::size_t horizon, bool test_root,
                           const std::function<bool(const Situation&)>& v_test,
                           const std::function<bool(const Situation&)>& u_test, const SituationIndex& index,
                           std::vector<NodePhase>& phases) {
  phases.assign(index.total(), NodePhase{});
  std::vector<std::vector<Situation>> v_members, u_members;
  struct Frame {
    Situation s;
    bool seeking_u;
    std::size_t completed;
  };
  std::vector<Frame> stack{{root, false, 0}};
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    NodePhase& ph = phases[index.index(fr.s)];
    ph.visited = true;
    bool seeking_u = fr.seeking_u;
    std::size_t completed = fr.completed;
    const bool tested = test_root || fr.s.depth() > root.depth();
    if (tested) {
      if (!seeking_u && v_test(fr.s)) {
        if (v_members.size() <= completed) v_members.resize(completed + 1);
        v_members[completed].push_back(fr.s);
        ph.in_v = true;
        seeking_u = true;
      } else if (seeking_u && u_test(fr.s)) {
        if (u_members.size() <= completed) u_members.resize(completed + 1);
        u_members[completed].push_back(fr.s);
        ph.in_u = true;
        seeking_u = false;
        ++completed;
      }
    }
    ph.active = seeking_u;
    ph.completed = completed;
    if (fr.s.depth() < horizon) {
      for (std::size_t x = arity; x-- > 0;) stack.push_back({fr.s.child(x), seeking_u, completed});
    }
  }
  CutSystem cuts;
  cuts.root = root;
  u_members.resize(v_members.size());
  for (std::size_t k = 0; k < v_members.size(); ++k) {
    cuts.pairs.emplace_back(Cut(std::move(v_members[k])), Cut(std::move(u_members[k])));
  }
  return cuts;
}

/// Situations with k >= 1 completed cycles and no later V member strictly before them.
inline bool post_upcrossing(const NodePhase& ph) { return ph.completed >= 1 && (!ph.active || ph.in_v); }

template <class S>
void check_window(const S& a, const S& b) {
  if (!(S(0) < a) || !(a < b)) {
    fail(ErrorCode::BadWindow, "window needs 0 < a < b, got a = " + ScalarTraits<S>::format(a) +
                                   ", b = " + ScalarTraits<S>::format(b));
  }
}

template <class S>
bool close_enough(const ExtendedReal<S>& x, const ExtendedReal<S>& y) {
  if constexpr (ScalarTraits<S>::exact) {
    return x == y;
  } else {
    const double scale = std::max({1.0, std::abs(x.to_double()), std::abs(y.to_double())});
    return near(x, y, S(1e-9 * scale));
  }
}

template <class S>
S power(const S& base, std::size_t k) {
  S r(1);
  for (std::size_t i = 0; i < k; ++i) r *= base;
  return r;
}

/// Shift to non-negative values (and to a positive root) and scale the root to 1.
template <class S>
Process<S> normalize_at(const Process<S>& m, const Situation& t) {
  ExtendedReal<S> lowest = *std::min_element(m.values().begin(), m.values().end());
  S c(0);
  if (lowest < ExtendedReal<S>(0)) c = -lowest.finite();
  ExtendedReal<S> root = add(m.at(t), ExtendedReal<S>(c));
  if (root.is_pos_inf()) fail(ErrorCode::NonFiniteRoot, "process is +inf at the root situation");
  if (root == ExtendedReal<S>(0)) {
    c += S(1);
    root = ExtendedReal<S>(S(1));
  }
  return scale(S(S(1) / root.finite()), shift(m, ExtendedReal<S>(c)));
}

}  // namespace detail

template <class S>
Transform<S> doob_transform(const TreeModel<S>& tree, const Process<S>& input, const Situation& t, const S& a,
                            const S& b, const DoobOptions& options) {
  detail::check_window(a, b);
  if (t.depth() > input.horizon()) fail(ErrorCode::DepthExceeded, "root situation beyond the process horizon");
  if (input.at(t).is_pos_inf()) fail(ErrorCode::NonFiniteRoot, "process is +inf at the root situation");
  auto verdict = check_supermartingale(tree, input, ScalarTraits<S>::default_tol());
  if (!verdict.is_supermartingale) fail(ErrorCode::NotASupermartingale, "Doob transform needs a supermartingale");

  Process<S> m = input;
  if (options.normalize) {
    m = detail::normalize_at(input, t);
  } else {
    ExtendedReal<S> lowest = *std::min_element(m.values().begin(), m.values().end());
    if (lowest < ExtendedReal<S>(0)) m = shift(m, neg(lowest));
  }

  const SituationIndex& index = m.index();
  std::vector<detail::NodePhase> phases;
  const ExtendedReal<S> xa(a), xb(b);
  CutSystem cuts = detail::walk_cuts(
      t, m.arity(), m.horizon(), true, [&](const Situation& s) { return m.at(s) < xa; },
      [&](const Situation& s) { return xb < m.at(s); }, index, phases);

  const ExtendedReal<S> root = m.at(t);
  std::vector<ExtendedReal<S>> values(index.total(), root);
  for_each_extension(t, m.arity(), m.horizon(), [&](const Situation& s) {
    if (s.depth() == t.depth()) return;
    Situation parent = s.prefix(s.depth() - 1);
    const auto& here = values[index.index(parent)];
    values[index.index(s)] =
        phases[index.index(parent)].active ? add(here, sub(m.at(s), m.at(parent))) : here;
  });

  Transform<S> out{TransformKind::doob, Process<S>(m.arity(), m.horizon(), std::move(values), m.terminal_cut()),
                   std::move(cuts), a, b, {}};
  for_each_extension(t, m.arity(), m.horizon(), [&](const Situation& s) {
    const auto& ph = phases[index.index(s)];
    if (!detail::post_upcrossing(ph)) return;
    BoundCheck<S> c;
    c.situation = s;
    c.k = ph.completed;
    c.observed = sub(out.process.at(s), root);
    c.bound = S(static_cast<long long>(c.k)) * S(b - a);
    ExtendedReal<S> sum(0);
    bool each_exceeds = true;
    for (std::size_t l = 1; l <= c.k; ++l) {
      auto u = out.cuts.u(l).member_at_or_before(s);
      auto v = out.cuts.v(l).member_at_or_before(s);
      ExtendedReal<S> gain = sub(m.at(*u), m.at(*v));
      if (!(ExtendedReal<S>(S(b - a)) < gain)) each_exceeds = false;
      sum = add(sum, gain);
    }
    c.expected = sum;
    c.identity_holds = detail::close_enough(c.observed, c.expected);
    c.bound_holds = each_exceeds && ExtendedReal<S>(c.bound) <= c.expected;
    out.checks.push_back(std::move(c));
  });
  return out;
}

template <class S>
Process<S> doob_mixture(const TreeModel<S>& tree, const Process<S>& m, const Situation& t,
                        const std::vector<std::pair<S, S>>& windows, const std::vector<S>& weights) {
  if (windows.empty()) fail(ErrorCode::InvalidArgument, "mixture needs at least one window");
  if (windows.size() != weights.size()) fail(ErrorCode::InvalidArgument, "one weight per window required");
  S total(0);
  for (const auto& w : weights) {
    if (w < S(0)) fail(ErrorCode::NegativeWeight, "mixture weight " + ScalarTraits<S>::format(w) + " is negative");
    if (w == S(0)) fail(ErrorCode::InvalidArgument, "mixture weights must be positive");
    total += w;
  }
  const S tol = ScalarTraits<S>::exact ? S(0) : S(1e-12);
  if (abs_value(S(total - S(1))) > tol) {
    fail(ErrorCode::WeightSumMismatch, "weights sum to " + ScalarTraits<S>::format(total) + ", not 1");
  }
  for (const auto& [a, b] : windows) detail::check_window(a, b);
  if (m.at(t).is_pos_inf()) fail(ErrorCode::NonFiniteRoot, "process is +inf at the root situation");
  Process<S> normalized = detail::normalize_at(m, t);
  std::vector<Process<S>> parts;
  for (const auto& [a, b] : windows) parts.push_back(doob_transform(tree, normalized, t, a, b).process);
  return mix(parts, weights);
}

template <class S>
std::size_t upcrossings(const Process<S>& m, const Situation& prefix, const S& a, const S& b, const Situation& t) {
  detail::check_window(a, b);
  std::vector<detail::NodePhase> phases;
  const ExtendedReal<S> xa(a), xb(b);
  CutSystem cuts = detail::walk_cuts(
      t, m.arity(), m.horizon(), true, [&](const Situation& s) { return m.at(s) < xa; },
      [&](const Situation& s) { return xb < m.at(s); }, m.index(), phases);
  return upcrossings(cuts, prefix);
}

template <class S>
Transform<S> levy_transform(const TreeModel<S>& tree, const FinitaryVariable<S>& f, const Situation& s_prime,
                            const S& a, const S& b, const S& delta) {
  detail::check_window(a, b);
  if (!(S(0) < delta)) fail(ErrorCode::InvalidArgument, "delta must be positive");
  for (const auto& v : f.values()) {
    if (!v.is_finite()) fail(ErrorCode::InvalidArgument, "Levy transform needs a gamble (finite values)");
  }
  const FinitaryVariable<S> shifted_f = shifted(f, ExtendedReal<S>(S(delta - inf_on(f).finite())));
  const ExtendedReal<S> lo = inf_on(shifted_f, s_prime), hi = sup_on(shifted_f, s_prime);
  const ExtendedReal<S> xa(a), xb(b);
  if (lo < hi && (xa <= lo || hi <= xb)) {
    fail(ErrorCode::WindowOutsideRange, "window (" + ScalarTraits<S>::format(a) + ", " + ScalarTraits<S>::format(b) +
                                            ") cannot be crossed by f' with range [" + to_string(lo) + ", " +
                                            to_string(hi) + "] below the root");
  }
  const Process<S> p = eval_process(tree, shifted_f);
  const std::size_t horizon = std::max(f.depth(), s_prime.depth());
  SituationIndex index(f.arity(), horizon);
  std::vector<detail::NodePhase> phases;
  CutSystem cuts = detail::walk_cuts(
      s_prime, f.arity(), horizon, false, [&](const Situation& s) { return p.at(s) < xa; },
      [&](const Situation& s) { return xb < p.at(s); }, index, phases);

  std::vector<ExtendedReal<S>> values(index.total(), ExtendedReal<S>(1));
  for_each_extension(s_prime, f.arity(), horizon, [&](const Situation& s) {
    if (s.depth() == s_prime.depth()) return;
    Situation parent = s.prefix(s.depth() - 1);
    const auto& here = values[index.index(parent)];
    values[index.index(s)] =
        phases[index.index(parent)].active ? ExtendedReal<S>(S(p.at(s).finite() * here.finite() / p.at(parent).finite()))
                                           : here;
  });

  Transform<S> out{TransformKind::levy, Process<S>(f.arity(), horizon, std::move(values), Cut::level(f.arity(), horizon)),
                   std::move(cuts), a, b, {}};
  const S ratio = b / a;
  for_each_extension(s_prime, f.arity(), horizon, [&](const Situation& s) {
    const auto& ph = phases[index.index(s)];
    if (!detail::post_upcrossing(ph)) return;
    BoundCheck<S> c;
    c.situation = s;
    c.k = ph.completed;
    c.observed = out.process.at(s);
    c.bound = detail::power(ratio, c.k);
    S product(1);
    for (std::size_t l = 1; l <= c.k; ++l) {
      auto u = out.cuts.u(l).member_at_or_before(s);
      auto v = out.cuts.v(l).member_at_or_before(s);
      product *= p.at(*u).finite() / p.at(*v).finite();
    }
    c.expected = ExtendedReal<S>(product);
    c.identity_holds = detail::close_enough(c.observed, c.expected);
    c.bound_holds = ExtendedReal<S>(c.bound) < c.observed;
    out.checks.push_back(std::move(c));
  });
  return out;
}

}  // namespace gtue
