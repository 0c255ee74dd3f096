#pragma once

#include <string>

#include "gtue/event_tree.hpp"
#include "gtue/process.hpp"
#include "gtue/tree_model.hpp"

namespace fixtures {

using namespace gtue;

template <class S>
S q(long long num, long long den = 1) {
  return S(num) / S(den);
}

template <class S>
ExtendedReal<S> x(long long num, long long den = 1) {
  return ExtendedReal<S>(q<S>(num, den));
}

inline const StateSpace& binary() {
  static const StateSpace space = StateSpace::numbered(2);
  return space;
}

inline Situation sit(const std::string& text) { return parse_situation(text, binary()); }

/// Two-point model {(0.7, 0.3), (0.3, 0.7)}.
template <class S>
CredalSet<S> model_a_set() {
  return CredalSet<S>({{q<S>(7, 10), q<S>(3, 10)}, {q<S>(3, 10), q<S>(7, 10)}});
}

template <class S>
TreeModel<S> model_a(std::size_t depth = 4) {
  return TreeModel<S>::stationary(binary(), model_a_set<S>(), depth);
}

/// Precise model that always moves to state 0.
template <class S>
TreeModel<S> model_b(std::size_t depth = 4) {
  return TreeModel<S>::stationary(binary(), CredalSet<S>::precise({S(1), S(0)}), depth);
}

template <class S>
TreeModel<S> precise(long long p0_num, long long den, std::size_t depth) {
  return TreeModel<S>::stationary(binary(), CredalSet<S>::precise({q<S>(p0_num, den), q<S>(den - p0_num, den)}),
                                  depth);
}

/// 1 on the event X1 = 1 and X2 = 1.
template <class S>
FinitaryVariable<S> and_indicator() {
  return indicator<S>(2, 2, [](const Situation& s) { return s.states[0] == 1 && s.states[1] == 1; });
}

/// Three-node Doob fixture under the precise (0.1, 0.9) model.
template <class S>
Process<S> doob_fixture() {
  return Process<S>::from_function(
      2, 2,
      [](const Situation& s) -> ExtendedReal<S> {
        if (s.depth() == 0) return x<S>(3, 2);
        if (s.states[0] == 1) return x<S>(3, 2);
        if (s.depth() == 1) return x<S>(1, 2);
        return s.states[1] == 0 ? x<S>(5, 2) : x<S>(0);
      },
      Cut({sit("1"), sit("0.0"), sit("0.1")}));
}

/// Oscillating fixture under the precise (0.9, 0.1) model: the path 0.1.0.1
/// crosses (1, 2) twice.
template <class S>
Process<S> oscillating_fixture() {
  return Process<S>::from_function(
      2, 6,
      [](const Situation& s) -> ExtendedReal<S> {
        const std::string t = format_situation(s.prefix(std::min<std::size_t>(s.depth(), 4)), binary());
        if (t.empty()) return x<S>(1);
        if (t == "0") return x<S>(1, 2);
        if (t == "1" || t.rfind("1.", 0) == 0) return x<S>(11, 2);
        if (t.rfind("0.0", 0) == 0) return x<S>(5, 18);
        if (t == "0.1") return x<S>(5, 2);
        if (t == "0.1.0") return x<S>(1, 2);
        if (t.rfind("0.1.1", 0) == 0) return x<S>(41, 2);
        if (t.rfind("0.1.0.0", 0) == 0) return x<S>(5, 18);
        return x<S>(5, 2);
      },
      Cut({sit("1"), sit("0.0"), sit("0.1.1"), sit("0.1.0.0"), sit("0.1.0.1")}));
}

}  // namespace fixtures
