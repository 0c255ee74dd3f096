#include "gtue/situation.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "gtue/errors.hpp"
#include "gtue/scalar.hpp"

namespace gtue {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) fail(ErrorCode::InvalidArgument, "state space must be non-empty");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.find('.') != std::string::npos) {
      fail(ErrorCode::InvalidArgument, "state label '" + l + "' contains '.'");
    }
    if (!seen.insert(l).second) fail(ErrorCode::InvalidArgument, "duplicate state label '" + l + "'");
  }
}

StateSpace StateSpace::numbered(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return StateSpace(std::move(labels));
}

std::size_t StateSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) fail(ErrorCode::InvalidArgument, "unknown state label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Situation Situation::child(std::size_t x) const {
  Situation c = *this;
  c.states.push_back(x);
  return c;
}

Situation Situation::prefix(std::size_t n) const {
  if (n > depth()) fail(ErrorCode::InvalidArgument, "prefix longer than situation");
  return Situation(std::vector<std::size_t>(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool precedes_or_equal(const Situation& s, const Situation& t) {
  return s.depth() <= t.depth() && std::equal(s.states.begin(), s.states.end(), t.states.begin());
}

bool strictly_precedes(const Situation& s, const Situation& t) {
  return s.depth() < t.depth() && precedes_or_equal(s, t);
}

Relation relate(const Situation& s, const Situation& t) {
  if (s.depth() == t.depth()) return s.states == t.states ? Relation::equal : Relation::incomparable;
  if (s.depth() < t.depth()) return precedes_or_equal(s, t) ? Relation::precedes : Relation::incomparable;
  return precedes_or_equal(t, s) ? Relation::follows : Relation::incomparable;
}

std::string format_situation(const Situation& s, const StateSpace& space) {
  std::string out;
  for (std::size_t i = 0; i < s.depth(); ++i) {
    if (i) out += '.';
    out += space.label(s.states[i]);
  }
  return out;
}

Situation parse_situation(const std::string& text, const StateSpace& space) {
  Situation s;
  if (text.empty()) return s;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    s.states.push_back(space.index_of(text.substr(start, dot - start)));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return s;
}

std::size_t table_size(std::size_t arity, std::size_t depth) {
  constexpr std::size_t limit = std::size_t{1} << 32;
  std::size_t n = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    if (n > limit / std::max<std::size_t>(arity, 1)) {
      fail(ErrorCode::DepthExceeded, "table for depth " + std::to_string(depth) + " is too large");
    }
    n *= arity;
  }
  return n;
}

std::size_t lex_index(const Situation& s, std::size_t arity) {
  std::size_t idx = 0;
  for (auto x : s.states) {
    if (x >= arity) fail(ErrorCode::InvalidArgument, "state index out of range");
    idx = idx * arity + x;
  }
  return idx;
}

SituationIndex::SituationIndex(std::size_t arity, std::size_t horizon)
    : arity_(arity), horizon_(horizon) {
  if (arity == 0) fail(ErrorCode::InvalidArgument, "empty state space");
  std::size_t offset = 0;
  for (std::size_t d = 0; d <= horizon; ++d) {
    counts_.push_back(table_size(arity, d));
    offsets_.push_back(offset);
    offset += counts_.back();
  }
}

std::size_t SituationIndex::index(const Situation& s) const {
  if (s.depth() > horizon_) fail(ErrorCode::DepthExceeded, "situation beyond horizon");
  return offsets_[s.depth()] + lex_index(s, arity_);
}

Situation SituationIndex::situation(std::size_t depth, std::size_t lex) const {
  Situation s;
  s.states.assign(depth, 0);
  for (std::size_t i = depth; i-- > 0;) {
    s.states[i] = lex % arity_;
    lex /= arity_;
  }
  return s;
}

Cut::Cut(std::vector<Situation> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      if (relate(members_[i], members_[j]) != Relation::incomparable) {
        fail(ErrorCode::InvalidArgument, "cut members must be pairwise incomparable");
      }
    }
  }
}

Cut Cut::level(std::size_t arity, std::size_t depth) {
  SituationIndex idx(arity, depth);
  std::vector<Situation> members;
  members.reserve(idx.count(depth));
  for (std::size_t i = 0; i < idx.count(depth); ++i) members.push_back(idx.situation(depth, i));
  Cut c;
  c.members_ = std::move(members);
  return c;
}

bool Cut::contains(const Situation& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

std::optional<Situation> Cut::member_at_or_before(const Situation& s) const {
  for (std::size_t n = 0; n <= s.depth(); ++n) {
    Situation p = s.prefix(n);
    if (contains(p)) return p;
  }
  return std::nullopt;
}

std::optional<Situation> Cut::member_before(const Situation& s) const {
  if (s.is_initial()) return std::nullopt;
  return member_at_or_before(s.prefix(s.depth() - 1));
}

std::size_t Cut::max_depth() const {
  std::size_t d = 0;
  for (const auto& m : members_) d = std::max(d, m.depth());
  return d;
}

bool is_complete(const Cut& cut, std::size_t arity) {
  Rational total = 0;
  for (const auto& m : cut.members()) {
    Rational w = 1;
    for (std::size_t i = 0; i < m.depth(); ++i) w /= arity;
    total += w;
  }
  return total == 1;
}

bool is_complete(const Cut& cut, const StateSpace& space) { return is_complete(cut, space.size()); }

void for_each_extension(const Situation& root, std::size_t arity, std::size_t horizon,
                        const std::function<void(const Situation&)>& visit) {
  if (root.depth() > horizon) return;
  Situation s = root;
  // Iterative preorder walk.
  while (true) {
    visit(s);
    if (s.depth() < horizon) {
      s.states.push_back(0);
      continue;
    }
    while (s.depth() > root.depth() && s.states.back() + 1 == arity) s.states.pop_back();
    if (s.depth() == root.depth()) return;
    ++s.states.back();
  }
}

}  // namespace gtue
