#include <doctest.h>

#include "fixtures.hpp"
#include "gtue/process.hpp"
#include "gtue/random.hpp"

using namespace gtue;
using fixtures::sit;
using fixtures::x;

TEST_SUITE("process") {

TEST_CASE_TEMPLATE("supermartingale verdicts", S, double, Rational) {
  const auto tree = fixtures::model_a<S>(3);
  CHECK(check_supermartingale(tree, Process<S>::constant(2, 3, x<S>(4)), S(0)).is_supermartingale);
  CHECK(check_supermartingale(tree, Process<S>::constant(2, 3, x<S>(4), false), S(0)).is_supermartingale);

  auto gap = Process<S>::from_function(
      2, 1, [](const Situation& s) { return s.is_initial() ? x<S>(1) : x<S>(2); }, Cut::level(2, 1));
  auto v = check_supermartingale(tree, gap, S(0));
  CHECK_FALSE(v.is_supermartingale);
  REQUIRE(v.worst_violation);
  CHECK(v.worst_violation->situation == sit(""));
  CHECK(v.worst_violation->gap == x<S>(1));

  CHECK_THROWS_AS(check_supermartingale(tree, Process<S>::constant(2, 5, x<S>(1)), S(0)), Error);
  try {
    check_supermartingale(tree, Process<S>::constant(2, 5, x<S>(1)), S(0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HorizonMismatch);
  }
}

TEST_CASE_TEMPLATE("process construction", S, double, Rational) {
  using X = ExtendedReal<S>;
  CHECK_THROWS_AS(Process<S>(2, 1, {X(0), X::neg_inf(), X(0)}, std::nullopt), Error);
  CHECK_THROWS_AS(Process<S>(2, 1, {X(0), X(1), X(0)}, Cut({sit("")})), Error);
  CHECK_THROWS_AS(Process<S>(2, 1, {X(0), X(0), X(0)}, Cut({sit("0")})), Error);
  Process<S> p(2, 1, {X(0), X(1), X(2)}, Cut::level(2, 1));
  CHECK(p.at(sit("1.0.1")) == X(2));
  CHECK_THROWS_AS(Process<S>(2, 1, {X(0), X(1), X(2)}, std::nullopt).at(sit("1.0")), Error);
}

TEST_CASE_TEMPLATE("truncation", S, double, Rational) {
  using X = ExtendedReal<S>;
  auto inf = Process<S>::constant(2, 2, X::pos_inf());
  CHECK(truncate(inf, S(5)) == Process<S>::constant(2, 2, x<S>(5)));
  random::Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto tree = random::tree<S>(rng, fixtures::binary(), 4, 3);
    auto m = random::supermartingale<S>(rng, tree, 4);
    const S b = random::grid_value<S>(rng, 0, 5, 4);
    auto t = truncate(m, b);
    CHECK(check_supermartingale(tree, t, ScalarTraits<S>::default_tol()).is_supermartingale);
    CHECK(truncate(m, S(1000)) == m);
    for_each_extension(Situation{}, 2, 4, [&](const Situation& s) {
      if (s.depth() == 4) CHECK(min(X(b), path_liminf(m, s)) == path_liminf(t, s));
    });
  }
}

TEST_CASE_TEMPLATE("mixtures", S, double, Rational) {
  auto one = Process<S>::constant(2, 2, x<S>(1)), three = Process<S>::constant(2, 2, x<S>(3));
  CHECK(mix<S>({one, three}, {fixtures::q<S>(1, 4), fixtures::q<S>(3, 4)}) == Process<S>::constant(2, 2, x<S>(5, 2)));
  CHECK(mix<S>({one}, {S(1)}) == one);
  CHECK_THROWS_AS(mix<S>({one}, {S(-1)}), Error);
  CHECK_THROWS_AS(mix<S>({one, Process<S>::constant(2, 3, x<S>(1))}, {S(1), S(1)}), Error);

  random::Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto tree = random::tree<S>(rng, fixtures::binary(), 3, 3);
    auto a = random::supermartingale<S>(rng, tree, 3), b = random::supermartingale<S>(rng, tree, 3);
    auto m = mix<S>({a, b}, {fixtures::q<S>(1, 2), fixtures::q<S>(1, 2)});
    CHECK(check_supermartingale(tree, m, ScalarTraits<S>::default_tol()).is_supermartingale);
    CHECK(m.is_terminal());
  }
}

TEST_CASE_TEMPLATE("path limits", S, double, Rational) {
  auto m = fixtures::doob_fixture<S>();
  CHECK(path_liminf(m, sit("0.0")) == x<S>(5, 2));
  CHECK(path_liminf(m, sit("1")) == x<S>(3, 2));
  CHECK(path_liminf(Process<S>::constant(2, 2, x<S>(4)), sit("1.1")) == x<S>(4));
  CHECK_THROWS_AS(path_liminf(Process<S>::constant(2, 2, x<S>(4), false), sit("1.1")), Error);
  CHECK(tail_infimum(m, sit("")) == x<S>(0));
  CHECK(tail_infimum(m, sit("0")) == x<S>(0));

  random::Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto tree = random::tree<S>(rng, fixtures::binary(), 4, 2);
    auto sm = random::supermartingale<S>(rng, tree, 4);
    for_each_extension(Situation{}, 2, 4, [&](const Situation& s) { CHECK(tail_infimum(sm, s) <= sm.at(s)); });
  }
}

TEST_CASE("join of terminal cuts") {
  Cut a({sit("0"), sit("1.0"), sit("1.1")}), b({sit("0.0"), sit("0.1"), sit("1")});
  Cut j = join_cuts({a, b}, 2);
  CHECK(j == Cut({sit("0.0"), sit("0.1"), sit("1.0"), sit("1.1")}));
}

}  // TEST_SUITE
