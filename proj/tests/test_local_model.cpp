#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "gtue/axioms.hpp"
#include "gtue/local_model.hpp"
#include "gtue/random.hpp"

using namespace gtue;
using fixtures::q;
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

}  // namespace

TEST_SUITE("local_model") {

TEST_CASE_TEMPLATE("local upper and lower on model A", S, double, Rational) {
  using X = ExtendedReal<S>;
  const auto a = fixtures::model_a_set<S>();
  std::vector<X> h{X(0), X(1)};
  CHECK(near(local_upper(a, std::span<const X>(h)), x<S>(7, 10), ScalarTraits<S>::default_tol()));
  CHECK(near(local_lower(a, std::span<const X>(h)), x<S>(3, 10), ScalarTraits<S>::default_tol()));
  std::vector<X> c{x<S>(5, 4), x<S>(5, 4)};
  CHECK(local_upper(a, std::span<const X>(c)) == x<S>(5, 4));
  CHECK(local_lower(a, std::span<const X>(c)) == x<S>(5, 4));
}

TEST_CASE_TEMPLATE("zero mass on an infinite cell", S, double, Rational) {
  using X = ExtendedReal<S>;
  const auto b = CredalSet<S>::precise({S(1), S(0)});
  std::vector<X> up{X(0), X::pos_inf()}, down{X(0), X::neg_inf()};
  CHECK(local_upper(b, std::span<const X>(up)) == X(0));
  CHECK(local_lower(b, std::span<const X>(down)) == X(0));
  CHECK(code_of<S>([&] { local_upper(b, std::span<const X>(down)); }) == ErrorCode::UnboundedBelowInput);
  CHECK(code_of<S>([&] { local_lower(b, std::span<const X>(up)); }) == ErrorCode::UnboundedAboveInput);
  std::vector<X> wrong{X(0)};
  CHECK(code_of<S>([&] { local_upper(b, std::span<const X>(wrong)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE_TEMPLATE("credal set validation", S, double, Rational) {
  CHECK_THROWS_AS(CredalSet<S>(std::vector<Pmf<S>>{}), Error);
  CHECK_THROWS_AS(CredalSet<S>({{q<S>(1, 2), q<S>(1, 3)}}), Error);
  CHECK_THROWS_AS(CredalSet<S>({{q<S>(3, 2), q<S>(-1, 2)}}), Error);
  CHECK_THROWS_AS(CredalSet<S>({{S(1), S(0)}, {S(1)}}), Error);
  CHECK(CredalSet<S>::vacuous(3).size() == 3);
}

TEST_CASE_TEMPLATE("natural extension", S, double, Rational) {
  const StateSpace space = StateSpace::numbered(2);
  AssessmentSet<S> a{{{S(0), S(1)}, q<S>(7, 10)}, {{S(0), S(-1)}, q<S>(-3, 10)}};
  auto set = natural_extension(space, a);
  REQUIRE(set.size() == 2);
  auto pts = set.points();
  std::sort(pts.begin(), pts.end());
  const S tol = ScalarTraits<S>::exact ? S(0) : S(1e-12);
  CHECK(abs_value(S(pts[0][0] - q<S>(3, 10))) <= tol);
  CHECK(abs_value(S(pts[1][0] - q<S>(7, 10))) <= tol);

  auto vacuous = natural_extension(space, AssessmentSet<S>{});
  CHECK(vacuous.size() == 2);

  AssessmentSet<S> sure_loss{{{S(0), S(1)}, q<S>(-1, 10)}};
  CHECK(code_of<S>([&] { natural_extension(space, sure_loss); }) == ErrorCode::SureLoss);
  CHECK(code_of<S>([&] { natural_extension(StateSpace::numbered(7), AssessmentSet<S>{}); }) ==
        ErrorCode::DimensionCapExceeded);
}

TEST_CASE_TEMPLATE("natural extension reproduces the LP optimum", S, double, Rational) {
  using X = ExtendedReal<S>;
  random::Rng rng(11);
  const StateSpace space = StateSpace::numbered(3);
  for (int trial = 0; trial < 30; ++trial) {
    AssessmentSet<S> a;
    // Assessments that the uniform PMF satisfies, so the polytope is non-empty.
    for (int k = 0; k < 2; ++k) {
      std::vector<S> g(3);
      S mean(0);
      for (auto& v : g) mean += (v = random::grid_value<S>(rng, -2, 2, 2));
      a.push_back({g, S(mean / S(3) + random::grid_value<S>(rng, 0, 1, 4))});
    }
    auto set = natural_extension(space, a);
    for (int k = 0; k < 20; ++k) {
      auto p = random::pmf<S>(rng, 3, 12);
      bool feasible = std::all_of(a.begin(), a.end(), [&](const Assessment<S>& as) {
        S lhs(0);
        for (int i = 0; i < 3; ++i) lhs += as.gamble[i] * p[i];
        return lhs <= as.upper;
      });
      if (!feasible) continue;
      std::vector<X> f{X(random::grid_value<S>(rng, -3, 3, 4)), X(random::grid_value<S>(rng, -3, 3, 4)),
                       X(random::grid_value<S>(rng, -3, 3, 4))};
      CHECK(leq_tol(expectation(p, std::span<const X>(f)), local_upper(set, std::span<const X>(f)),
                    ScalarTraits<S>::default_tol()));
    }
  }
}

TEST_CASE_TEMPLATE("audit of a credal set passes", S, double, Rational) {
  const auto a = fixtures::model_a_set<S>();
  auto report = audit_axioms<S>([&](const LocalVariable<S>& h) { return local_upper(a, std::span<const ExtendedReal<S>>(h)); },
                                fixtures::binary(), 100, 3, ScalarTraits<S>::default_tol());
  for (const auto& r : report.results) CHECK_MESSAGE(r.passed, r.name << ": " << r.counterexample.value_or(""));
  CHECK(report.results.size() == audited_axioms().size());
}

TEST_CASE("audit flags the broken functionals") {
  using X = XReal;
  auto sup_plus_one = [](const LocalVariable<double>& h) { return add(*std::max_element(h.begin(), h.end()), X(1)); };
  auto report = audit_axioms<double>(sup_plus_one, fixtures::binary(), 50, 5, 1e-9);
  CHECK_FALSE(report.at("E5").passed);
  REQUIRE(report.at("E5").counterexample);
  CHECK(report.at("E5").counterexample->find("h = (0, 0)") != std::string::npos);

  const auto a = fixtures::model_a_set<double>();
  // Pointwise minimum of p·h over the extreme points, defined on +inf cells too.
  auto lower_envelope = [&](const LocalVariable<double>& h) {
    X best = X::pos_inf();
    for (const auto& p : a.points()) best = std::min(best, expectation(p, std::span<const X>(h)));
    return best;
  };
  auto broken = audit_axioms<double>(lower_envelope, fixtures::binary(), 50, 5, 1e-9);
  CHECK_FALSE(broken.at("E2").passed);

  auto sup = [](const LocalVariable<double>& h) { return *std::max_element(h.begin(), h.end()); };
  auto vacuous = audit_axioms<double>(sup, fixtures::binary(), 100, 5, 1e-9);
  for (const char* name : {"E1", "E2", "E3", "E4"}) CHECK(vacuous.at(name).passed);
}

}  // TEST_SUITE
