#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtue/errors.hpp"
#include "gtue/local_model.hpp"
#include "gtue/situation.hpp"
#include "gtue/state_space.hpp"

namespace gtue {

/// Imprecise probability tree: a credal set for every situation of depth < max_depth.
template <class S>
class TreeModel {
 public:
  enum class Kind { stationary, by_depth, table };

  static TreeModel stationary(StateSpace space, CredalSet<S> model, std::size_t max_depth);
  /// levels[d] is used at every situation of depth d; needs max_depth levels.
  static TreeModel by_depth(StateSpace space, std::vector<CredalSet<S>> levels, std::size_t max_depth);
  /// One credal set per situation of depth < max_depth.
  static TreeModel table(StateSpace space, const std::map<Situation, CredalSet<S>>& nodes, std::size_t max_depth);

  Kind kind() const { return kind_; }
  const StateSpace& space() const { return space_; }
  std::size_t arity() const { return space_.size(); }
  std::size_t max_depth() const { return max_depth_; }

  /// Credal set at `s`; throws DepthExceeded when depth(s) >= max_depth.
  const CredalSet<S>& local(const Situation& s) const;
  /// Q_s(h).
  ExtendedReal<S> upper(const Situation& s, std::span<const ExtendedReal<S>> h) const {
    return local_upper(local(s), h);
  }

  /// Copy with every stored credal set replaced by `fn(s, set)`, where `s` is a
  /// situation the set is used at.
  template <class Fn>
  TreeModel transformed(Fn fn) const;

  /// Stored credal sets: one (stationary), one per level (by_depth) or one per
  /// situation in lexicographic depth order (table).
  const std::vector<CredalSet<S>>& stored() const { return sets_; }

  friend bool operator==(const TreeModel& a, const TreeModel& b) {
    return a.kind_ == b.kind_ && a.space_ == b.space_ && a.max_depth_ == b.max_depth_ && a.sets_ == b.sets_;
  }

 private:
  TreeModel(StateSpace space, Kind kind, std::size_t max_depth)
      : space_(std::move(space)), kind_(kind), max_depth_(max_depth) {}

  StateSpace space_;
  Kind kind_;
  std::size_t max_depth_;
  std::vector<CredalSet<S>> sets_;
  std::optional<SituationIndex> index_;
};

template <class S>
TreeModel<S> TreeModel<S>::stationary(StateSpace space, CredalSet<S> model, std::size_t max_depth) {
  if (model.dimension() != space.size()) fail(ErrorCode::SpaceMismatch, "credal set dimension differs from |X|");
  TreeModel t(std::move(space), Kind::stationary, max_depth);
  t.sets_.push_back(std::move(model));
  return t;
}

template <class S>
TreeModel<S> TreeModel<S>::by_depth(StateSpace space, std::vector<CredalSet<S>> levels, std::size_t max_depth) {
  if (levels.size() < max_depth) {
    fail(ErrorCode::InvalidArgument, "by_depth model needs " + std::to_string(max_depth) + " levels, got " +
                                         std::to_string(levels.size()));
  }
  for (const auto& l : levels) {
    if (l.dimension() != space.size()) fail(ErrorCode::SpaceMismatch, "credal set dimension differs from |X|");
  }
  TreeModel t(std::move(space), Kind::by_depth, max_depth);
  t.sets_ = std::move(levels);
  return t;
}

template <class S>
TreeModel<S> TreeModel<S>::table(StateSpace space, const std::map<Situation, CredalSet<S>>& nodes,
                                 std::size_t max_depth) {
  TreeModel t(std::move(space), Kind::table, max_depth);
  if (max_depth == 0) return t;
  SituationIndex idx(t.arity(), max_depth - 1);
  t.index_ = idx;
  for (std::size_t d = 0; d < max_depth; ++d) {
    for (std::size_t i = 0; i < idx.count(d); ++i) {
      Situation s = idx.situation(d, i);
      auto it = nodes.find(s);
      if (it == nodes.end()) {
        fail(ErrorCode::InvalidArgument, "table model lacks a credal set at '" + format_situation(s, t.space_) + "'");
      }
      if (it->second.dimension() != t.arity()) fail(ErrorCode::SpaceMismatch, "credal set dimension differs from |X|");
      t.sets_.push_back(it->second);
    }
  }
  return t;
}

template <class S>
const CredalSet<S>& TreeModel<S>::local(const Situation& s) const {
  if (s.depth() >= max_depth_) {
    fail(ErrorCode::DepthExceeded, "no local model at depth " + std::to_string(s.depth()) + " (max_depth " +
                                       std::to_string(max_depth_) + ")");
  }
  switch (kind_) {
    case Kind::stationary: return sets_.front();
    case Kind::by_depth: return sets_[s.depth()];
    case Kind::table: break;
  }
  return sets_[index_->index(s)];
}

template <class S>
template <class Fn>
TreeModel<S> TreeModel<S>::transformed(Fn fn) const {
  TreeModel t = *this;
  if (kind_ == Kind::table) {
    const SituationIndex& idx = *index_;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      std::size_t d = 0;
      while (idx.offset(d) + idx.count(d) <= i) ++d;
      t.sets_[i] = fn(idx.situation(d, i - idx.offset(d)), sets_[i]);
    }
  } else {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      Situation s;
      if (kind_ == Kind::by_depth) s.states.assign(i, 0);
      t.sets_[i] = fn(s, sets_[i]);
    }
  }
  return t;
}

}  // namespace gtue
