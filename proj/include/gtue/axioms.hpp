#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gtue/local_model.hpp"
#include "gtue/state_space.hpp"
#include "gtue/xreal.hpp"

namespace gtue {

template <class S>
using LocalFunctional = std::function<ExtendedReal<S>(const LocalVariable<S>&)>;

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::optional<std::string> counterexample;
};

struct AuditReport {
  std::vector<AxiomResult> results;

  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
  const AxiomResult& at(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return r;
    fail(ErrorCode::InvalidArgument, "no audit entry named " + name);
  }
};

/// Names in report order.
inline const std::vector<std::string>& audited_axioms() {
  static const std::vector<std::string> names{"E1", "E2", "E3", "E4", "E5",  "E6",  "E7",  "E8",         "E9",
                                              "E10", "E10'", "C1", "C2", "C3", "countable-subadditivity", "alt"};
  return names;
}

/// Randomized property check of the upper-expectation axioms and their
/// consequences on `functional`. Failures are recorded, never thrown.
template <class S>
AuditReport audit_axioms(const LocalFunctional<S>& functional, const StateSpace& space, std::size_t trials,
                         std::uint64_t seed, const S& tol);

// ---------------------------------------------------------------------------

namespace detail {

template <class S>
class AuditProbe {
 public:
  AuditProbe(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {}

  S real(double lo, double hi) {
    double v = std::uniform_real_distribution<double>(lo, hi)(rng_);
    if constexpr (ScalarTraits<S>::exact) {
      return ScalarTraits<S>::parse(ScalarTraits<double>::format(std::round(v * 1000) / 1000));
    } else {
      return v;
    }
  }

  LocalVariable<S> gamble() {
    LocalVariable<S> h(n_);
    for (auto& v : h) v = ExtendedReal<S>(real(-10, 10));
    return h;
  }

  /// Gamble entries with +inf injected at rate 0.1.
  LocalVariable<S> bounded_below() {
    LocalVariable<S> h = gamble();
    for (auto& v : h)
      if (coin(0.1)) v = ExtendedReal<S>::pos_inf();
    return h;
  }

  LocalVariable<S> non_negative() {
    LocalVariable<S> h = bounded_below();
    for (auto& v : h)
      if (v < ExtendedReal<S>(0)) v = neg(v);
    return h;
  }

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  std::size_t n_;
  std::mt19937_64 rng_;
};

template <class S>
std::string describe(const LocalVariable<S>& h) {
  std::string out = "(";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) out += ", ";
    out += to_string(h[i]);
  }
  return out + ")";
}

template <class S>
LocalVariable<S> pointwise(const LocalVariable<S>& f, const LocalVariable<S>& g,
                           const std::function<ExtendedReal<S>(const ExtendedReal<S>&, const ExtendedReal<S>&)>& op) {
  LocalVariable<S> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(f[i], g[i]);
  return out;
}

template <class S>
LocalVariable<S> each(const LocalVariable<S>& f, const std::function<ExtendedReal<S>(const ExtendedReal<S>&)>& op) {
  LocalVariable<S> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(f[i]);
  return out;
}

}  // namespace detail

template <class S>
AuditReport audit_axioms(const LocalFunctional<S>& q, const StateSpace& space, std::size_t trials, std::uint64_t seed,
                         const S& tol) {
  using X = ExtendedReal<S>;
  using V = LocalVariable<S>;
  if (trials < 1) fail(ErrorCode::InvalidArgument, "audit needs at least one trial");
  const std::size_t n = space.size();
  detail::AuditProbe<S> probe(n, seed);
  const X slack(tol);
  AuditReport report;
  for (const auto& name : audited_axioms()) report.results.push_back({name, true, 0, std::nullopt});
  auto entry = [&](const std::string& name) -> AxiomResult& {
    for (auto& r : report.results)
      if (r.name == name) return r;
    fail(ErrorCode::InvalidArgument, name);
  };
  auto record = [&](const std::string& name, bool ok, const std::function<std::string()>& witness) {
    AxiomResult& r = entry(name);
    ++r.checks;
    if (!ok && r.passed) {
      r.passed = false;
      r.counterexample = witness();
    }
  };
  auto leq = [&](const X& a, const X& b) { return a <= add(b, slack); };
  auto eq = [&](const X& a, const X& b) { return near(a, b, tol); };
  auto lower = [&](const V& h) { return neg(q(detail::each<S>(h, [](const X& v) { return neg(v); }))); };
  auto sup_of = [](const V& h) { return *std::max_element(h.begin(), h.end()); };
  auto inf_of = [](const V& h) { return *std::min_element(h.begin(), h.end()); };
  auto plus = [](const X& a, const X& b) { return add(a, b); };

  // Planted probes first, so counterexamples are canonical.
  {
    V zero(n, X(0));
    X v = q(zero);
    record("E5", leq(inf_of(zero), v) && leq(v, sup_of(zero)), [&] { return "h = " + detail::describe(zero); });
    V first(n, X(0)), rest(n, X(1));
    first[0] = X(1);
    rest[0] = X(0);
    V both = detail::pointwise<S>(first, rest, plus);
    record("E2", leq(q(both), add(q(first), q(rest))),
           [&] { return "f = " + detail::describe(first) + ", g = " + detail::describe(rest); });
  }

  for (std::size_t trial = 0; trial < trials; ++trial) {
    // E1.
    {
      X c(probe.real(-10, 10));
      V h(n, c);
      X v = q(h);
      record("E1", eq(v, c), [&] { return "c = " + to_string(c) + ", value " + to_string(v); });
    }
    // E2.
    {
      V f = probe.bounded_below(), g = probe.bounded_below();
      V fg = detail::pointwise<S>(f, g, plus);
      record("E2", leq(q(fg), add(q(f), q(g))),
             [&] { return "f = " + detail::describe(f) + ", g = " + detail::describe(g); });
    }
    // E3: lambda in (0, +inf].
    {
      V f = probe.non_negative();
      const X lambdas[] = {X(S(1) / S(2)), X(S(2)), X(probe.real(0.001, 10)), X::pos_inf()};
      for (const auto& lambda : lambdas) {
        V lf = detail::each<S>(f, [&](const X& v) { return scale(lambda, v); });
        X lhs = q(lf), rhs = scale(lambda, q(f));
        record("E3", eq(lhs, rhs), [&] { return "lambda = " + to_string(lambda) + ", f = " + detail::describe(f); });
      }
    }
    // E4.
    {
      V f = probe.bounded_below();
      V g = detail::pointwise<S>(f, probe.non_negative(), plus);
      record("E4", leq(q(f), q(g)), [&] { return "f = " + detail::describe(f) + ", g = " + detail::describe(g); });
    }
    // E5.
    {
      V h = probe.bounded_below();
      X v = q(h);
      record("E5", leq(inf_of(h), v) && leq(v, sup_of(h)), [&] { return "h = " + detail::describe(h); });
    }
    // E6: mu real or +inf.
    {
      V f = probe.bounded_below();
      const X mus[] = {X(probe.real(-10, 10)), X::pos_inf()};
      for (const auto& mu : mus) {
        V fm = detail::each<S>(f, [&](const X& v) { return add(v, mu); });
        record("E6", eq(q(fm), add(q(f), mu)),
               [&] { return "mu = " + to_string(mu) + ", f = " + detail::describe(f); });
      }
    }
    // E7: lambda >= 0 real.
    {
      V f = probe.bounded_below();
      const X lambdas[] = {X(0), X(S(1) / S(2)), X(S(2)), X(probe.real(0, 10))};
      for (const auto& lambda : lambdas) {
        V lf = detail::each<S>(f, [&](const X& v) { return scale(lambda, v); });
        record("E7", eq(q(lf), scale(lambda, q(f))),
               [&] { return "lambda = " + to_string(lambda) + ", f = " + detail::describe(f); });
      }
    }
    // E8 on gambles.
    {
      V f = probe.gamble(), g = probe.gamble();
      V fg = detail::pointwise<S>(f, g, plus);
      X mid = add(q(f), lower(g));
      record("E8", leq(lower(fg), mid) && leq(mid, q(fg)),
             [&] { return "f = " + detail::describe(f) + ", g = " + detail::describe(g); });
    }
    // E9: f_n = f + 2^-n u converges uniformly to f.
    {
      V f = probe.gamble(), u = probe.gamble();
      X qf = q(f), lf = lower(f);
      bool ok = true;
      S eps(1);
      for (int k = 0; k <= 20 && ok; ++k) {
        V fk = detail::pointwise<S>(f, u, [&](const X& a, const X& b) { return add(a, scale(X(eps), b)); });
        X bound = X(S(eps * S(10)));
        ok = leq(distance(q(fk), qf), bound) && leq(distance(lower(fk), lf), bound);
        eps /= S(2);
      }
      record("E9", ok, [&] { return "f = " + detail::describe(f) + ", u = " + detail::describe(u); });
    }
    // E10: min{h, n} increases to h, with h carrying +inf entries.
    {
      V h = probe.bounded_below();
      h[probe.pick(n)] = X::pos_inf();
      X target = q(h);
      X prev = X::neg_inf();
      bool monotone = true, reached = false;
      const X ceiling(ScalarTraits<S>::from_double(1e12));
      S cap(1);
      for (int k = 0; k <= 60; ++k) {
        X v = q(detail::each<S>(h, [&](const X& x) { return min(x, X(cap)); }));
        if (!leq(prev, v)) monotone = false;
        prev = v;
        if (target.is_pos_inf() ? ceiling < v : (S(16) < cap && eq(v, target))) {
          reached = true;
          break;
        }
        cap *= S(2);
      }
      record("E10", monotone && reached, [&] { return "h = " + detail::describe(h); });
    }
    // E10' and C1-C3 on gambles.
    {
      V f = probe.gamble(), u = probe.non_negative();
      for (auto& v : u)
        if (v.is_pos_inf()) v = X(1);
      X target = q(f), prev = X::neg_inf();
      bool ok = true;
      S eps(1), last(1);
      for (int k = 0; k <= 40; ++k) {
        X v = q(detail::pointwise<S>(f, u, [&](const X& a, const X& b) { return sub(a, scale(X(eps), b)); }));
        if (!leq(prev, v)) ok = false;
        prev = v;
        last = eps;
        eps /= S(2);
      }
      // |E(f) - E(f_n)| <= sup (f - f_n) = eps sup u.
      ok = ok && leq(distance(prev, target), scale(X(last), sup_of(u)));
      record("E10'", ok, [&] { return "f = " + detail::describe(f) + ", u = " + detail::describe(u); });

      record("C1", leq(q(f), sup_of(f)), [&] { return "f = " + detail::describe(f); });
      V g = probe.gamble();
      V fg = detail::pointwise<S>(f, g, plus);
      record("C2", leq(q(fg), add(q(f), q(g))),
             [&] { return "f = " + detail::describe(f) + ", g = " + detail::describe(g); });
      X lambda(probe.real(0.001, 10));
      V lf = detail::each<S>(f, [&](const X& v) { return scale(lambda, v); });
      record("C3", eq(q(lf), scale(lambda, q(f))),
             [&] { return "lambda = " + to_string(lambda) + ", f = " + detail::describe(f); });
    }
    // Countable sub-additivity on a finite prefix of non-negative variables.
    {
      const std::size_t count = 2 + probe.pick(7);
      V total(n, X(0));
      X sum(0);
      std::vector<V> parts;
      for (std::size_t i = 0; i < count; ++i) {
        parts.push_back(probe.non_negative());
        total = detail::pointwise<S>(total, parts.back(), plus);
        sum = add(sum, q(parts.back()));
      }
      record("countable-subadditivity", leq(q(total), add(sum, X(S(tol * S(static_cast<long long>(count)))))), [&] {
        std::string out;
        for (const auto& p : parts) out += (out.empty() ? "" : ", ") + detail::describe(p);
        return "f_1..f_N = " + out;
      });
    }
  }

  // The alternative characterisation: C1-C3 with E10' must imply E1-E4.
  const bool premise = entry("C1").passed && entry("C2").passed && entry("C3").passed && entry("E10'").passed;
  const bool conclusion = entry("E1").passed && entry("E2").passed && entry("E3").passed && entry("E4").passed;
  record("alt", !premise || conclusion, [] { return std::string("C1-C3 and E10' hold but E1-E4 fail"); });
  return report;
}

}  // namespace gtue
