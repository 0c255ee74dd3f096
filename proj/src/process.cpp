#include "gtue/process.hpp"

#include <algorithm>

namespace gtue {

Cut join_cuts(const std::vector<Cut>& cuts, std::size_t arity) {
  if (cuts.empty()) return Cut(std::vector<Situation>{Situation{}});
  std::size_t depth = 0;
  for (const auto& c : cuts) depth = std::max(depth, c.max_depth());
  std::vector<Situation> members;
  // A situation joins the cut once every input has a member at or before it.
  std::vector<Situation> stack{Situation{}};
  while (!stack.empty()) {
    Situation s = std::move(stack.back());
    stack.pop_back();
    bool covered = std::all_of(cuts.begin(), cuts.end(), [&](const Cut& c) { return c.member_at_or_before(s).has_value(); });
    if (covered || s.depth() >= depth) {
      members.push_back(std::move(s));
      continue;
    }
    for (std::size_t x = arity; x-- > 0;) stack.push_back(s.child(x));
  }
  return Cut(std::move(members));
}

}  // namespace gtue
