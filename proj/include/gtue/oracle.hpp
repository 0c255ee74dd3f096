#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "gtue/errors.hpp"
#include "gtue/event_tree.hpp"
#include "gtue/tree_model.hpp"
#include "gtue/xreal.hpp"

namespace gtue {

using BigInt = boost::multiprecision::cpp_int;

/// Number of ways to pick one extreme point at every situation u with
/// s ⊑ u and depth(u) < n.
template <class S>
BigInt selection_count(const TreeModel<S>& tree, std::size_t n, const Situation& s = {}) {
  BigInt count = 1;
  if (s.depth() >= n) return count;
  for_each_extension(s, tree.arity(), n - 1, [&](const Situation& u) { count *= tree.local(u).size(); });
  return count;
}

/// Max over all selections of the precise expectation of f from s, computed
/// from the product of path probabilities over the leaves. Ground truth for
/// eval_finitary; throws CapExceeded above `cap` selections.
///
/// Only extreme points are enumerated: the expectation is linear in every node's
/// PMF separately, so its maximum over the credal sets is attained at vertices.
template <class S>
ExtendedReal<S> brute_force_upper(const TreeModel<S>& tree, const FinitaryVariable<S>& f, const Situation& s = {},
                                  const BigInt& cap = BigInt(10'000'000)) {
  if (f.arity() != tree.arity()) fail(ErrorCode::SpaceMismatch, "variable and tree use different state spaces");
  if (!f.bounded_below()) fail(ErrorCode::NotBoundedBelow, "variable takes the value -inf");
  if (s.depth() >= f.depth()) return f.at(s);
  if (f.depth() > tree.max_depth()) fail(ErrorCode::DepthExceeded, "variable deeper than the tree");
  const BigInt total = selection_count(tree, f.depth(), s);
  if (total > cap) fail(ErrorCode::CapExceeded, "selection count " + total.str() + " exceeds cap " + cap.str());

  // Internal nodes of Γ(s) in preorder.
  std::vector<Situation> nodes;
  for_each_extension(s, tree.arity(), f.depth() - 1, [&](const Situation& u) { nodes.push_back(u); });
  std::vector<const CredalSet<S>*> sets;
  for (const auto& u : nodes) sets.push_back(&tree.local(u));
  const std::size_t arity = tree.arity();
  const std::size_t rel_depth = f.depth() - s.depth();
  SituationIndex rel(arity, rel_depth);
  auto node_of = [&](const Situation& u) {
    // Preorder position of the node for relative path u.
    std::size_t pos = 0;
    for (std::size_t i = 0; i < u.depth(); ++i) {
      // Each earlier sibling subtree at level i+1 holds (|X|^(h-i-1) - 1)/(|X|-1) internal nodes.
      std::size_t subtree = 0, width = 1;
      for (std::size_t k = i + 1; k < rel_depth; ++k) {
        subtree += width;
        width *= arity;
      }
      pos += 1 + u.states[i] * subtree;
    }
    return pos;
  };
  auto leaves = block_on(f, s);
  std::vector<std::vector<std::size_t>> leaf_path(leaves.size());
  std::vector<Situation> leaf_states(leaves.size());
  for (std::size_t j = 0; j < leaves.size(); ++j) {
    leaf_states[j] = rel.situation(rel_depth, j);
    for (std::size_t k = 0; k < rel_depth; ++k) leaf_path[j].push_back(node_of(leaf_states[j].prefix(k)));
  }

  std::vector<std::size_t> choice(nodes.size(), 0);
  ExtendedReal<S> best = ExtendedReal<S>::neg_inf();
  while (true) {
    ExtendedReal<S> value(0);
    for (std::size_t j = 0; j < leaves.size(); ++j) {
      const Situation& r = leaf_states[j];
      S prob(1);
      for (std::size_t k = 0; k < rel_depth && prob != S(0); ++k) {
        std::size_t node = leaf_path[j][k];
        prob *= sets[node]->point(choice[node])[r.states[k]];
      }
      value = add(value, scale(ExtendedReal<S>(prob), leaves[j]));
    }
    best = max(best, value);
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == sets[i]->size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return best;
}

}  // namespace gtue
