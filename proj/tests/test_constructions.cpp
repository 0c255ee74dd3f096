#include <doctest.h>

#include "fixtures.hpp"
#include "gtue/constructions.hpp"
#include "gtue/random.hpp"

using namespace gtue;
using fixtures::q;
using fixtures::sit;
using fixtures::x;

namespace {

template <class S>
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

template <class S>
TreeModel<S> doob_tree() {
  return fixtures::precise<S>(1, 10, 2);
}

template <class S>
TreeModel<S> oscillating_tree() {
  return fixtures::precise<S>(9, 10, 6);
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("three-node Doob fixture") {
  using S = Rational;
  const auto tree = doob_tree<S>();
  auto t = doob_transform(tree, fixtures::doob_fixture<S>(), Situation{}, S(1), S(2));
  REQUIRE(t.cuts.size() == 1);
  CHECK(t.cuts.v(1) == Cut({sit("0")}));
  CHECK(t.cuts.u(1) == Cut({sit("0.0")}));
  CHECK(t.process.at(sit("0.0")) == x<S>(7, 2));
  CHECK(t.process.at(sit("0.1")) == x<S>(1));
  CHECK(t.process.at(sit("1")) == x<S>(3, 2));
  REQUIRE(t.checks.size() == 1);
  CHECK(t.checks[0].situation == sit("0.0"));
  CHECK(t.checks[0].observed == x<S>(2));
  CHECK(t.checks_pass());
  CHECK(check_supermartingale(tree, t.process, S(0)).is_supermartingale);
  CHECK(upcrossings(fixtures::doob_fixture<S>(), sit("0.0"), S(1), S(2)) == 1);
  CHECK(upcrossings(fixtures::doob_fixture<S>(), sit(""), S(1), S(2)) == 0);
  CHECK(upcrossings(t.cuts, sit("0")) == 0);
}

TEST_CASE_TEMPLATE("constant process", S, double, Rational) {
  const auto tree = fixtures::model_a<S>(3);
  auto c = Process<S>::constant(2, 3, x<S>(3, 2));
  auto t = doob_transform(tree, c, Situation{}, S(1), S(2));
  CHECK(t.process == c);
  CHECK(t.cuts.size() == 0);
  CHECK(upcrossings(c, sit("0.1.1"), S(1), S(2)) == 0);
  auto mixed = doob_mixture(tree, c, Situation{}, {{S(1), S(2)}, {q<S>(1, 2), q<S>(3, 2)}}, {q<S>(1, 2), q<S>(1, 2)});
  CHECK(mixed == Process<S>::constant(2, 3, x<S>(1)));
}

TEST_CASE("oscillating fixture crosses twice") {
  using S = Rational;
  const auto tree = oscillating_tree<S>();
  const auto m = fixtures::oscillating_fixture<S>();
  REQUIRE(check_supermartingale(tree, m, S(0)).is_supermartingale);
  auto t = doob_transform(tree, m, Situation{}, S(1), S(2));
  CHECK(t.cuts.size() == 2);
  CHECK(upcrossings(t.cuts, sit("0.1.0.1")) == 2);
  CHECK(upcrossings(m, sit("0.1.0.1.1.0"), S(1), S(2)) == 2);
  CHECK(t.process.at(sit("0.1")) == x<S>(3));
  CHECK(t.process.at(sit("0.1.0")) == x<S>(3));
  CHECK(t.process.at(sit("0.1.0.1")) == x<S>(5));
  CHECK(t.checks_pass());
  CHECK(check_supermartingale(tree, t.process, S(0)).is_supermartingale);

  const S w = q<S>(1, 2);
  auto mixed = doob_mixture(tree, m, Situation{}, {{S(1), S(2)}, {q<S>(1, 2), q<S>(3, 2)}}, {w, S(1) - w});
  CHECK(mixed.at(sit("")) == x<S>(1));
  CHECK(mixed.at(sit("0.1.0.1")) >= ExtendedReal<S>(S(w * (S(1) + S(2) * (S(2) - S(1))))));
  CHECK(check_supermartingale(tree, mixed, S(0)).is_supermartingale);
  CHECK(doob_mixture(tree, m, Situation{}, {{S(1), S(2)}}, {S(1)}) == t.process);
}

TEST_CASE("transform below a later root") {
  using S = Rational;
  const auto tree = oscillating_tree<S>();
  const auto m = fixtures::oscillating_fixture<S>();
  auto t = doob_transform(tree, m, sit("0"), S(1), S(2));
  // M(0) = 1/2 < a, so the root itself opens V_1.
  CHECK(t.cuts.v(1) == Cut({sit("0")}));
  CHECK(t.process.at(sit("1")) == m.at(sit("0")));
  CHECK(t.process.at(sit("0.1")) == x<S>(5, 2));
  CHECK(t.checks_pass());
}

TEST_CASE_TEMPLATE("doob errors", S, double, Rational) {
  const auto tree = fixtures::model_a<S>(3);
  auto c = Process<S>::constant(2, 3, x<S>(1));
  CHECK(code_of<S>([&] { doob_transform(tree, c, Situation{}, S(2), S(1)); }) == ErrorCode::BadWindow);
  CHECK(code_of<S>([&] { doob_transform(tree, c, Situation{}, S(0), S(1)); }) == ErrorCode::BadWindow);
  CHECK(code_of<S>([&] { doob_transform(tree, Process<S>::constant(2, 3, ExtendedReal<S>::pos_inf()), Situation{}, S(1), S(2)); }) ==
        ErrorCode::NonFiniteRoot);
  auto bad = Process<S>::from_function(
      2, 1, [](const Situation& s) { return s.is_initial() ? x<S>(0) : x<S>(1); }, Cut::level(2, 1));
  CHECK(code_of<S>([&] { doob_transform(tree, bad, Situation{}, S(1), S(2)); }) == ErrorCode::NotASupermartingale);
  CHECK(code_of<S>([&] { doob_mixture(tree, c, Situation{}, {{S(1), S(2)}}, {q<S>(1, 2)}); }) ==
        ErrorCode::WeightSumMismatch);
  CHECK(code_of<S>([&] { doob_mixture(tree, c, Situation{}, {{S(1), S(2)}, {S(1), S(3)}}, {S(2), S(-1)}); }) ==
        ErrorCode::NegativeWeight);
}

TEST_CASE_TEMPLATE("normalization", S, double, Rational) {
  const auto tree = fixtures::model_a<S>(3);
  auto below_zero = Process<S>::constant(2, 3, x<S>(-2));
  // Shifted to 0 everywhere, then lifted to a positive root before scaling.
  CHECK(doob_transform(tree, below_zero, Situation{}, S(1), S(2), DoobOptions{true}).process ==
        Process<S>::constant(2, 3, x<S>(1)));
  CHECK(doob_transform(tree, below_zero, Situation{}, S(1), S(2)).process == Process<S>::constant(2, 3, x<S>(0)));
  auto scaled_root = doob_transform(tree, Process<S>::constant(2, 3, x<S>(4)), Situation{}, S(1), S(2), DoobOptions{true});
  CHECK(scaled_root.process.at(sit("")) == x<S>(1));
}

TEST_CASE("model A Levy example") {
  using S = Rational;
  const auto tree = fixtures::model_a<S>(2);
  // f' = f + 1 for f = 1_{X1=1, X2=1}, since inf f = 0 and delta = 1.
  auto t = levy_transform(tree, fixtures::and_indicator<S>(), Situation{}, q<S>(6, 5), q<S>(8, 5), S(1));
  REQUIRE(t.cuts.size() == 1);
  // P(0) = 1 and P(1.0) = 1 are both below a.
  CHECK(t.cuts.v(1) == Cut({sit("0"), sit("1.0")}));
  CHECK(t.cuts.u(1).empty());
  for (const auto& v : t.process.values()) CHECK(v == x<S>(1));
  CHECK(check_supermartingale(tree, t.process, S(0)).is_supermartingale);
  CHECK(t.checks.empty());
}

TEST_CASE("Levy transform without an upcrossing") {
  using S = Rational;
  // Fair coin, f' = 1 + 1_{X1=1, X2=1}: P = 5/4 at the root, 1 at (0) and (1.0).
  const auto tree = fixtures::precise<S>(1, 2, 2);
  FinitaryVariable<S> f(2, 2, {0, 0, 0, 1});
  auto t = levy_transform(tree, f, Situation{}, q<S>(6, 5), q<S>(8, 5), S(1));
  CHECK(t.cuts.v(1) == Cut({sit("0"), sit("1.0")}));
  CHECK(t.cuts.u(1).empty());
  for (const auto& v : t.process.values()) CHECK(v == x<S>(1));

  // Depth 3, f' = 5 on the cylinder of (1.1) and 1 elsewhere.
  const auto deep_tree = fixtures::precise<S>(1, 2, 3);
  FinitaryVariable<S> g(2, 3, {0, 0, 0, 0, 0, 0, 4, 4});
  auto u = levy_transform(deep_tree, g, sit("1"), q<S>(3, 2), S(4), S(1));
  CHECK(u.cuts.v(1) == Cut({sit("1.0")}));
  CHECK(u.cuts.u(1).empty());
  CHECK(u.process.at(sit("1")) == x<S>(1));
  CHECK(u.process.at(sit("0")) == x<S>(1));
  CHECK(check_supermartingale(deep_tree, u.process, S(0)).is_supermartingale);
}

TEST_CASE("Levy multiplicative bound on an oscillating gamble") {
  using S = Rational;
  const auto tree = fixtures::precise<S>(1, 2, 4);
  // f' = f + 1 dips below a at (0) and rises above b at (0.1).
  FinitaryVariable<S> f = FinitaryVariable<S>::from_function(2, 4, [](const Situation& s) {
    if (s.states[0] == 1) return x<S>(1);
    if (s.states[1] == 0) return x<S>(0);
    return s.states[2] == 0 && s.states[3] == 0 ? x<S>(0) : x<S>(8, 3);
  });
  const auto p = eval_process(tree, shifted(f, x<S>(1)));
  // P(0) = 2 and P(0.1) = 3.
  REQUIRE(p.at(sit("0")) < x<S>(11, 5));
  REQUIRE(p.at(sit("0.1")) > x<S>(5, 2));
  auto t = levy_transform(tree, f, Situation{}, q<S>(11, 5), q<S>(5, 2), S(1));
  REQUIRE(t.cuts.size() >= 1);
  CHECK(t.cuts.u(1).contains(sit("0.1")));
  CHECK(t.process.at(sit("0.1")) == ExtendedReal<S>(S(p.at(sit("0.1")).finite() / p.at(sit("0")).finite())));
  CHECK(t.process.at(sit("0.1")) == x<S>(3, 2));
  CHECK(t.process.at(sit("0.1")) > ExtendedReal<S>(S(q<S>(5, 2) / q<S>(11, 5))));
  CHECK(t.process.at(sit("0.0")) == x<S>(1, 2));
  CHECK(t.checks_pass());
  CHECK_FALSE(t.checks.empty());
  CHECK(check_supermartingale(tree, t.process, S(0)).is_supermartingale);
}

TEST_CASE_TEMPLATE("Levy edge cases", S, double, Rational) {
  const auto tree = fixtures::model_a<S>(2);
  auto c = levy_transform(tree, FinitaryVariable<S>::constant(2, x<S>(3)), Situation{}, S(1), S(2), S(1));
  for (const auto& v : c.process.values()) CHECK(v == x<S>(1));
  CHECK(code_of<S>([&] { levy_transform(tree, fixtures::and_indicator<S>(), Situation{}, S(2), S(1), S(1)); }) ==
        ErrorCode::BadWindow);
  CHECK(code_of<S>([&] { levy_transform(tree, fixtures::and_indicator<S>(), Situation{}, q<S>(1, 2), q<S>(3, 2), S(1)); }) ==
        ErrorCode::WindowOutsideRange);
  CHECK(code_of<S>([&] { levy_transform(tree, fixtures::and_indicator<S>(), Situation{}, q<S>(6, 5), S(3), S(1)); }) ==
        ErrorCode::WindowOutsideRange);
}

TEST_CASE("random Doob transforms") {
  using S = Rational;
  random::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto tree = random::tree<S>(rng, fixtures::binary(), 5, 2);
    auto m = random::supermartingale<S>(rng, tree, 5);
    for (auto [a, b] : std::vector<std::pair<S, S>>{{S(1), S(2)}, {q<S>(1, 2), q<S>(3, 2)}}) {
      auto t = doob_transform(tree, m, Situation{}, a, b);
      CHECK(t.checks_pass());
      CHECK(check_supermartingale(tree, t.process, S(0)).is_supermartingale);
      for (const auto& v : t.process.values()) CHECK(v >= x<S>(0));
    }
  }
}

}  // TEST_SUITE
