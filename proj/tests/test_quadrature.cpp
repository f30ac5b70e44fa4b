#include <doctest.h>

#include <limits>

#include "krivine/constants.hpp"
#include "krivine/errors.hpp"
#include "krivine/quadrature.hpp"

using krivine::BigReal;
using krivine::PrecisionContext;

TEST_SUITE("quadrature") {
  TEST_CASE("int_0^1 ln(1/x) dx = 1 despite the endpoint singularity") {
    const PrecisionContext ctx(30);
    const auto r = krivine::integrate(
        [](const BigReal& x) { return -krivine::log(x); }, ctx.zero(),
        ctx.real(1), ctx);
    CHECK(krivine::abs(r.value - 1L) < ctx.tolerance());
    CHECK(r.error_estimate < ctx.tolerance());
    CHECK(r.evaluations > 0);
    CHECK(r.levels >= 3);
  }

  TEST_CASE("int_0^{pi/2} sin = 1 and int_0^1 4/(1+x^2) = pi") {
    const PrecisionContext ctx(40);
    const BigReal pi = krivine::const_pi(ctx);
    const auto s = krivine::integrate(
        [](const BigReal& x) { return krivine::sin(x); }, ctx.zero(), pi / 2,
        ctx);
    CHECK(krivine::abs(s.value - 1L) < ctx.tolerance());
    const auto a = krivine::integrate(
        [](const BigReal& x) { return 4L / (1L + krivine::square(x)); },
        ctx.zero(), ctx.real(1), ctx);
    CHECK(krivine::abs(a.value - pi) < ctx.tolerance());
  }

  TEST_CASE("1/sqrt(1-x) uses the endpoint distance") {
    const PrecisionContext ctx(30);
    const auto r = krivine::integrate(
        [](const BigReal&, const BigReal&, const BigReal& to_end) {
          return 1L / krivine::sqrt(to_end);
        },
        ctx.zero(), ctx.real(1), ctx);
    CHECK(krivine::abs(r.value - 2L) < ctx.tolerance());
  }

  TEST_CASE("semi-infinite range") {
    const PrecisionContext ctx(30);
    const auto r = krivine::integrate_to_infinity(
        [](const BigReal& x) { return krivine::exp(-x); }, ctx.real(2), ctx);
    CHECK(krivine::abs(r.value - krivine::exp(ctx.real(-2))) <
          ctx.tolerance());
    const auto g = krivine::integrate_to_infinity(
        [](const BigReal& x) { return krivine::exp(-krivine::square(x)); },
        ctx.zero(), ctx);
    const BigReal half_root_pi = krivine::sqrt(krivine::const_pi(ctx)) / 2;
    CHECK(krivine::abs(g.value - half_root_pi) < ctx.tolerance());
  }

  TEST_CASE("linearity") {
    const PrecisionContext ctx(25);
    auto f = [](const BigReal& x) { return krivine::exp(x); };
    auto g = [](const BigReal& x) { return krivine::cos(3 * x); };
    const BigReal a = ctx.zero();
    const BigReal b = ctx.real(2);
    const auto sum = krivine::integrate(
        [&](const BigReal& x) { return 3 * f(x) - 2 * g(x); }, a, b, ctx);
    const auto fi = krivine::integrate(f, a, b, ctx);
    const auto gi = krivine::integrate(g, a, b, ctx);
    CHECK(krivine::abs(sum.value - (3 * fi.value - 2 * gi.value)) <
          ctx.tolerance());
  }

  TEST_CASE("additivity over adjacent intervals") {
    const PrecisionContext ctx(25);
    auto f = [](const BigReal& x) { return 1L / (1L + x); };
    const auto whole = krivine::integrate(f, ctx.zero(), ctx.real(3), ctx);
    const auto left = krivine::integrate(f, ctx.zero(), ctx.real(1), ctx);
    const auto right = krivine::integrate(f, ctx.real(1), ctx.real(3), ctx);
    CHECK(krivine::abs(whole.value - left.value - right.value) <
          ctx.tolerance());
    CHECK(krivine::abs(whole.value - krivine::log(ctx.real(4))) <
          ctx.tolerance());
  }

  TEST_CASE("empty or reversed interval is a domain error") {
    const PrecisionContext ctx(20);
    auto f = [](const BigReal& x) { return x; };
    CHECK_THROWS_AS(krivine::integrate(f, ctx.real(1), ctx.real(1), ctx),
                    krivine::DomainError);
    CHECK_THROWS_AS(krivine::integrate(f, ctx.real(2), ctx.real(1), ctx),
                    krivine::DomainError);
  }

  TEST_CASE("non-finite integrand values are reported") {
    const PrecisionContext ctx(20);
    CHECK_THROWS_AS(
        krivine::integrate(
            [&](const BigReal&) {
              return BigReal(std::numeric_limits<double>::infinity(),
                             ctx.bits());
            },
            ctx.zero(), ctx.real(1), ctx),
        krivine::NonFiniteEvaluation);
  }

  TEST_CASE("a level cap below what the integrand needs fails loudly") {
    const PrecisionContext ctx(30);
    krivine::QuadratureOptions options;
    options.max_level = 3;
    CHECK_THROWS_AS(
        krivine::integrate(
            [](const BigReal& x) { return krivine::cos(40 * x); }, ctx.zero(),
            ctx.real(3), ctx, options),
        krivine::NoConvergence);
  }
}
