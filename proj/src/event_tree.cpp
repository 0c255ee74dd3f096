#include "gtue/event_tree.hpp"

namespace gtue {

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::non_decreasing: return "non_decreasing";
    case Monotonicity::non_increasing: return "non_increasing";
    case Monotonicity::none: return "none";
  }
  return "none";
}

Monotonicity parse_monotonicity(const std::string& text) {
  if (text == "non_decreasing" || text == "non-decreasing") return Monotonicity::non_decreasing;
  if (text == "non_increasing" || text == "non-increasing") return Monotonicity::non_increasing;
  if (text == "none") return Monotonicity::none;
  fail(ErrorCode::Schema, "unknown monotonicity '" + text + "'");
}

}  // namespace gtue
