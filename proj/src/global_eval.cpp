#include "gtue/global_eval.hpp"

namespace gtue {

std::string to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::exact: return "exact";
    case EvalStatus::converged: return "converged";
    case EvalStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

std::string to_string(BoundDirection d) { return d == BoundDirection::lower ? "lower" : "upper"; }

}  // namespace gtue
