#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtue/state_space.hpp"

namespace gtue {

/// Finite string of state indices; the empty string is the initial situation.
struct Situation {
  std::vector<std::size_t> states;

  Situation() = default;
  explicit Situation(std::vector<std::size_t> s) : states(std::move(s)) {}

  std::size_t depth() const { return states.size(); }
  bool is_initial() const { return states.empty(); }

  /// The situation followed by state `x`.
  Situation child(std::size_t x) const;
  /// First `n` states.
  Situation prefix(std::size_t n) const;

  friend auto operator<=>(const Situation&, const Situation&) = default;
};

enum class Relation { precedes, follows, equal, incomparable };

/// precedes: s is a proper prefix of t; follows: t is a proper prefix of s.
Relation relate(const Situation& s, const Situation& t);

/// s ⊑ t.
bool precedes_or_equal(const Situation& s, const Situation& t);
/// s ⊏ t.
bool strictly_precedes(const Situation& s, const Situation& t);

/// Dot-separated labels; "" is the initial situation.
std::string format_situation(const Situation& s, const StateSpace& space);
Situation parse_situation(const std::string& text, const StateSpace& space);

/// Lexicographic addressing of all situations up to a horizon for an alphabet of
/// size `arity`: depth-d situations occupy [offset(d), offset(d) + count(d)).
class SituationIndex {
 public:
  SituationIndex(std::size_t arity, std::size_t horizon);

  std::size_t arity() const { return arity_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t count(std::size_t depth) const { return counts_.at(depth); }
  std::size_t offset(std::size_t depth) const { return offsets_.at(depth); }
  std::size_t total() const { return offsets_.back() + counts_.back(); }

  std::size_t index(const Situation& s) const;
  Situation situation(std::size_t depth, std::size_t lex) const;

  friend bool operator==(const SituationIndex&, const SituationIndex&) = default;

 private:
  std::size_t arity_;
  std::size_t horizon_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> offsets_;
};

/// Lexicographic rank of `s` among situations of the same depth.
std::size_t lex_index(const Situation& s, std::size_t arity);
/// |X|^n, throwing when the table would not fit in memory.
std::size_t table_size(std::size_t arity, std::size_t depth);

/// Set of pairwise incomparable situations.
class Cut {
 public:
  Cut() = default;
  /// Throws InvalidArgument when two members are comparable.
  explicit Cut(std::vector<Situation> members);

  /// All situations of the given depth.
  static Cut level(std::size_t arity, std::size_t depth);

  const std::vector<Situation>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool contains(const Situation& s) const;
  /// The member u with u ⊑ s, if any (unique by incomparability).
  std::optional<Situation> member_at_or_before(const Situation& s) const;
  /// The member u with u ⊏ s, if any.
  std::optional<Situation> member_before(const Situation& s) const;
  std::size_t max_depth() const;

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::vector<Situation> members_;
};

/// True iff every path goes through the cut: the Kraft sum of the members,
/// Σ |X|^-depth, equals one exactly.
bool is_complete(const Cut& cut, const StateSpace& space);
bool is_complete(const Cut& cut, std::size_t arity);

/// Visits every extension of `root` up to `horizon` in depth-first preorder.
void for_each_extension(const Situation& root, std::size_t arity, std::size_t horizon,
                        const std::function<void(const Situation&)>& visit);

}  // namespace gtue
