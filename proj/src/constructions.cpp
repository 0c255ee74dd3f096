#include "gtue/constructions.hpp"

namespace gtue {

std::size_t upcrossings(const CutSystem& cuts, const Situation& prefix) {
  std::size_t k = 0;
  while (k < cuts.size() && cuts.u(k + 1).member_at_or_before(prefix)) ++k;
  return k;
}

}  // namespace gtue
