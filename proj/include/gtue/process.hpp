#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtue/errors.hpp"
#include "gtue/situation.hpp"
#include "gtue/tree_model.hpp"
#include "gtue/xreal.hpp"

namespace gtue {

/// Extended-real map on all situations up to a horizon. With a terminal cut the
/// process is constant on Γ(u) for every member u, so path limits are known.
template <class S>
class Process {
 public:
  using Value = ExtendedReal<S>;

  /// `values` is indexed by SituationIndex(arity, horizon). Throws
  /// NotBoundedBelow on a -inf value and InvalidArgument when the terminal cut is
  /// incomplete, reaches past the horizon, or the process is not constant below it.
  Process(std::size_t arity, std::size_t horizon, std::vector<Value> values, std::optional<Cut> terminal_cut = {});

  static Process constant(std::size_t arity, std::size_t horizon, Value c, bool terminal = true);
  static Process from_function(std::size_t arity, std::size_t horizon, const std::function<Value(const Situation&)>& fn,
                               std::optional<Cut> terminal_cut = {});

  std::size_t arity() const { return index_.arity(); }
  std::size_t horizon() const { return index_.horizon(); }
  const SituationIndex& index() const { return index_; }
  const std::vector<Value>& values() const { return values_; }
  const std::optional<Cut>& terminal_cut() const { return terminal_cut_; }
  bool is_terminal() const { return terminal_cut_.has_value(); }

  /// Value at `s`. Beyond the horizon defined only through the terminal cut.
  const Value& at(const Situation& s) const;
  /// M(s·) as a local variable.
  std::vector<Value> children(const Situation& s) const;

  friend bool operator==(const Process&, const Process&) = default;

 private:
  SituationIndex index_;
  std::vector<Value> values_;
  std::optional<Cut> terminal_cut_;
};

template <class S>
struct Violation {
  Situation situation;
  ExtendedReal<S> gap;  // Q_s(M(s·)) - M(s)
};

template <class S>
struct SupermartingaleVerdict {
  bool is_supermartingale = true;
  bool is_bounded_below = true;
  std::optional<Violation<S>> worst_violation;
  std::size_t nodes_checked = 0;
};

/// Checks Q_s(M(s·)) <= M(s) + tol at every non-terminal node of depth < horizon.
/// Throws HorizonMismatch when the tree cannot resolve local models up to the
/// process horizon.
template <class S>
SupermartingaleVerdict<S> check_supermartingale(const TreeModel<S>& tree, const Process<S>& m, const S& tol);

/// min{M, B}.
template <class S>
Process<S> truncate(const Process<S>& m, const S& bound);

/// M + c.
template <class S>
Process<S> shift(const Process<S>& m, const ExtendedReal<S>& c);

/// lambda M for lambda >= 0.
template <class S>
Process<S> scale(const S& lambda, const Process<S>& m);

/// Σ w_i M_i. Throws NegativeWeight, HorizonMismatch.
template <class S>
Process<S> mix(const std::vector<Process<S>>& processes, const std::vector<S>& weights);

/// Tail value on the paths through `prefix`; throws NotTerminal without a
/// terminal cut and InvalidArgument when `prefix` does not reach it.
template <class S>
ExtendedReal<S> path_liminf(const Process<S>& m, const Situation& prefix);

/// Minimum tail value over the terminal members comparable with `s`: the
/// infimum of the path limits on Γ(s).
template <class S>
ExtendedReal<S> tail_infimum(const Process<S>& m, const Situation& s);

/// Smallest cut below which every input cut has a member.
Cut join_cuts(const std::vector<Cut>& cuts, std::size_t arity);

// ---------------------------------------------------------------------------

template <class S>
Process<S>::Process(std::size_t arity, std::size_t horizon, std::vector<Value> values, std::optional<Cut> terminal_cut)
    : index_(arity, horizon), values_(std::move(values)), terminal_cut_(std::move(terminal_cut)) {
  if (values_.size() != index_.total()) {
    fail(ErrorCode::InvalidArgument, "process table needs " + std::to_string(index_.total()) + " values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].is_neg_inf()) fail(ErrorCode::NotBoundedBelow, "process takes the value -inf");
  }
  if (!terminal_cut_) return;
  if (terminal_cut_->max_depth() > horizon) fail(ErrorCode::InvalidArgument, "terminal cut reaches past the horizon");
  if (!is_complete(*terminal_cut_, arity)) fail(ErrorCode::InvalidArgument, "terminal cut is not complete");
  for (const auto& u : terminal_cut_->members()) {
    const Value& tail = values_[index_.index(u)];
    bool constant = true;
    for_each_extension(u, arity, horizon, [&](const Situation& s) {
      if (!(values_[index_.index(s)] == tail)) constant = false;
    });
    if (!constant) fail(ErrorCode::InvalidArgument, "process is not constant below a terminal cut member");
  }
}

template <class S>
Process<S> Process<S>::constant(std::size_t arity, std::size_t horizon, Value c, bool terminal) {
  SituationIndex idx(arity, horizon);
  std::optional<Cut> cut;
  if (terminal) cut = Cut(std::vector<Situation>{Situation{}});
  return Process(arity, horizon, std::vector<Value>(idx.total(), c), std::move(cut));
}

template <class S>
Process<S> Process<S>::from_function(std::size_t arity, std::size_t horizon,
                                     const std::function<Value(const Situation&)>& fn,
                                     std::optional<Cut> terminal_cut) {
  SituationIndex idx(arity, horizon);
  std::vector<Value> v(idx.total());
  for_each_extension(Situation{}, arity, horizon, [&](const Situation& s) { v[idx.index(s)] = fn(s); });
  return Process(arity, horizon, std::move(v), std::move(terminal_cut));
}

template <class S>
const typename Process<S>::Value& Process<S>::at(const Situation& s) const {
  if (s.depth() <= horizon()) return values_[index_.index(s)];
  if (terminal_cut_) {
    if (auto u = terminal_cut_->member_at_or_before(s)) return values_[index_.index(*u)];
  }
  fail(ErrorCode::DepthExceeded, "process undefined beyond its horizon");
}

template <class S>
std::vector<typename Process<S>::Value> Process<S>::children(const Situation& s) const {
  std::vector<Value> out(arity());
  for (std::size_t x = 0; x < arity(); ++x) out[x] = at(s.child(x));
  return out;
}

template <class S>
SupermartingaleVerdict<S> check_supermartingale(const TreeModel<S>& tree, const Process<S>& m, const S& tol) {
  if (tree.arity() != m.arity()) fail(ErrorCode::SpaceMismatch, "process and tree use different state spaces");
  if (m.horizon() > tree.max_depth()) {
    fail(ErrorCode::HorizonMismatch, "process horizon " + std::to_string(m.horizon()) + " exceeds tree max_depth " +
                                         std::to_string(tree.max_depth()));
  }
  SupermartingaleVerdict<S> verdict;
  for (const auto& v : m.values()) {
    if (v.is_neg_inf()) verdict.is_bounded_below = false;
  }
  if (m.horizon() == 0) {
    verdict.is_supermartingale = verdict.is_bounded_below;
    return verdict;
  }
  const ExtendedReal<S> slack(tol);
  for_each_extension(Situation{}, m.arity(), m.horizon() - 1, [&](const Situation& s) {
    // Below a terminal member the process is constant and E1 settles the node.
    if (m.terminal_cut() && m.terminal_cut()->member_at_or_before(s)) return;
    ++verdict.nodes_checked;
    auto next = m.children(s);
    ExtendedReal<S> q = tree.upper(s, next);
    const auto& here = m.at(s);
    if (q <= add(here, slack)) return;
    verdict.is_supermartingale = false;
    ExtendedReal<S> gap = here.is_pos_inf() ? ExtendedReal<S>(0) : sub(q, here);
    if (!verdict.worst_violation || verdict.worst_violation->gap < gap) verdict.worst_violation = Violation<S>{s, gap};
  });
  if (!verdict.is_bounded_below) verdict.is_supermartingale = false;
  return verdict;
}

template <class S>
Process<S> truncate(const Process<S>& m, const S& bound) {
  std::vector<ExtendedReal<S>> v(m.values().size());
  const ExtendedReal<S> b(bound);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = min(m.values()[i], b);
  return Process<S>(m.arity(), m.horizon(), std::move(v), m.terminal_cut());
}

template <class S>
Process<S> shift(const Process<S>& m, const ExtendedReal<S>& c) {
  std::vector<ExtendedReal<S>> v(m.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = add(m.values()[i], c);
  return Process<S>(m.arity(), m.horizon(), std::move(v), m.terminal_cut());
}

template <class S>
Process<S> scale(const S& lambda, const Process<S>& m) {
  if (lambda < S(0)) fail(ErrorCode::NegativeWeight, "negative scale factor");
  std::vector<ExtendedReal<S>> v(m.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scale(ExtendedReal<S>(lambda), m.values()[i]);
  return Process<S>(m.arity(), m.horizon(), std::move(v), m.terminal_cut());
}

template <class S>
Process<S> mix(const std::vector<Process<S>>& processes, const std::vector<S>& weights) {
  if (processes.empty()) fail(ErrorCode::InvalidArgument, "mix needs at least one process");
  if (processes.size() != weights.size()) fail(ErrorCode::InvalidArgument, "one weight per process required");
  for (const auto& w : weights) {
    if (w < S(0)) fail(ErrorCode::NegativeWeight, "mixture weight " + ScalarTraits<S>::format(w) + " is negative");
  }
  const auto& first = processes.front();
  std::vector<Cut> cuts;
  bool terminal = true;
  for (const auto& p : processes) {
    if (p.arity() != first.arity()) fail(ErrorCode::SpaceMismatch, "mixed processes use different state spaces");
    if (p.horizon() != first.horizon()) fail(ErrorCode::HorizonMismatch, "mixed processes have different horizons");
    if (p.terminal_cut()) {
      cuts.push_back(*p.terminal_cut());
    } else {
      terminal = false;
    }
  }
  std::vector<ExtendedReal<S>> v(first.values().size(), ExtendedReal<S>(0));
  for (std::size_t k = 0; k < processes.size(); ++k) {
    const ExtendedReal<S> w(weights[k]);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = add(v[i], scale(w, processes[k].values()[i]));
  }
  std::optional<Cut> cut;
  if (terminal) cut = join_cuts(cuts, first.arity());
  return Process<S>(first.arity(), first.horizon(), std::move(v), std::move(cut));
}

template <class S>
ExtendedReal<S> path_liminf(const Process<S>& m, const Situation& prefix) {
  if (!m.terminal_cut()) fail(ErrorCode::NotTerminal, "process has no terminal cut; its path limit is undecidable");
  auto u = m.terminal_cut()->member_at_or_before(prefix);
  if (!u) fail(ErrorCode::InvalidArgument, "situation does not reach the terminal cut");
  return m.at(*u);
}

template <class S>
ExtendedReal<S> tail_infimum(const Process<S>& m, const Situation& s) {
  if (!m.terminal_cut()) fail(ErrorCode::NotTerminal, "process has no terminal cut");
  if (auto u = m.terminal_cut()->member_at_or_before(s)) return m.at(*u);
  ExtendedReal<S> best = ExtendedReal<S>::pos_inf();
  for (const auto& u : m.terminal_cut()->members()) {
    if (precedes_or_equal(s, u)) best = min(best, m.at(u));
  }
  return best;
}

}  // namespace gtue
