#pragma once

#include <map>
#include <random>
#include <vector>

#include "gtue/event_tree.hpp"
#include "gtue/local_model.hpp"
#include "gtue/process.hpp"
#include "gtue/tree_model.hpp"

/// Random instance generators for property tests. All values are small-denominator
/// rationals so that rational-mode runs stay fast and float runs stay exact.
namespace gtue::random {

using Rng = std::mt19937_64;

inline long long uniform_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// k / denom with k uniform in [lo * denom, hi * denom].
template <class S>
S grid_value(Rng& rng, long long lo, long long hi, long long denom) {
  return S(uniform_int(rng, lo * denom, hi * denom)) / S(denom);
}

/// PMF with masses w_i / Σ w, w_i uniform in {0, ..., granularity}.
template <class S>
Pmf<S> pmf(Rng& rng, std::size_t n, long long granularity = 10) {
  std::vector<long long> w(n);
  long long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) total += (x = uniform_int(rng, 0, granularity));
  }
  Pmf<S> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = S(w[i]) / S(total);
  return p;
}

template <class S>
CredalSet<S> credal_set(Rng& rng, std::size_t n, std::size_t max_points) {
  std::vector<Pmf<S>> points;
  const auto count = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long long>(max_points)));
  for (std::size_t i = 0; i < count; ++i) points.push_back(pmf<S>(rng, n));
  return CredalSet<S>(std::move(points));
}

/// Table model with an independent credal set at every situation.
template <class S>
TreeModel<S> tree(Rng& rng, const StateSpace& space, std::size_t depth, std::size_t max_points) {
  std::map<Situation, CredalSet<S>> nodes;
  if (depth > 0) {
    for_each_extension(Situation{}, space.size(), depth - 1,
                       [&](const Situation& s) { nodes.emplace(s, credal_set<S>(rng, space.size(), max_points)); });
  }
  return TreeModel<S>::table(space, nodes, depth);
}

/// Depth-n variable with entries on the grid [lo, hi] / 4 and +inf at rate `inf_rate`.
template <class S>
FinitaryVariable<S> variable(Rng& rng, std::size_t arity, std::size_t depth, double inf_rate = 0.0, long long lo = -5,
                             long long hi = 5) {
  std::vector<ExtendedReal<S>> v(table_size(arity, depth));
  for (auto& x : v) x = coin(rng, inf_rate) ? ExtendedReal<S>::pos_inf() : ExtendedReal<S>(grid_value<S>(rng, lo, hi, 4));
  return FinitaryVariable<S>(arity, depth, std::move(v));
}

/// Leaves on the grid [0, leaf_max] / 4, internal nodes Q_s(M(s·)) plus a slack
/// in [0, 1] / 8; terminal at the horizon level.
template <class S>
Process<S> supermartingale(Rng& rng, const TreeModel<S>& tree, std::size_t horizon, long long leaf_max = 4) {
  SituationIndex idx(tree.arity(), horizon);
  std::vector<ExtendedReal<S>> v(idx.total());
  for (std::size_t i = 0; i < idx.count(horizon); ++i) {
    v[idx.offset(horizon) + i] = ExtendedReal<S>(grid_value<S>(rng, 0, leaf_max, 4));
  }
  for (std::size_t d = horizon; d-- > 0;) {
    for (std::size_t i = 0; i < idx.count(d); ++i) {
      Situation s = idx.situation(d, i);
      std::vector<ExtendedReal<S>> next(tree.arity());
      for (std::size_t x = 0; x < tree.arity(); ++x) next[x] = v[idx.index(s.child(x))];
      v[idx.index(s)] = add(tree.upper(s, next), ExtendedReal<S>(grid_value<S>(rng, 0, 1, 8)));
    }
  }
  return Process<S>(tree.arity(), horizon, std::move(v), Cut::level(tree.arity(), horizon));
}

}  // namespace gtue::random
