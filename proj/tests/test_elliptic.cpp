#include <doctest.h>

#include "krivine/constants.hpp"
#include "krivine/elliptic.hpp"
#include "krivine/errors.hpp"
#include "oracle.hpp"

using krivine::BigReal;
using krivine::PrecisionContext;
using testing::big;
using testing::near;

TEST_SUITE("elliptic") {
  TEST_CASE("frozen oracle values reproduce") {
    const PrecisionContext ctx(45);
    using oracle::Real;
    const Real r2 = sqrt(Real(2));
    const Real k = boost::math::ellint_1(1 / r2);
    const Real e = boost::math::ellint_2(1 / r2);
    CHECK(near(big(k / r2, ctx), big(frozen::kKi, ctx), 44));
    CHECK(near(big(e * r2, ctx), big(frozen::kEi, ctx), 44));
    CHECK(near(big(1 / (2 * k / r2 - e * r2), ctx), big(frozen::kHaagerup, ctx),
               44));
    CHECK(near(big(boost::math::ellint_1(Real("0.999")), ctx),
               big(frozen::kK0999, ctx), 44));
    CHECK(near(big(boost::math::ellint_2(Real("0.999")), ctx),
               big(frozen::kE0999, ctx), 44));
    CHECK(near(big(oracle::x0(), ctx), big(frozen::kX0, ctx), 44));
  }

  TEST_CASE("special moduli are exact") {
    const PrecisionContext ctx(30);
    const BigReal half_pi = krivine::const_pi(ctx) / 2;
    CHECK(krivine::ellip_K(ctx.zero(), ctx) == half_pi);
    CHECK(krivine::ellip_E(ctx.zero(), ctx) == half_pi);
    CHECK(krivine::ellip_E(ctx.real(1), ctx) == 1L);
  }

  TEST_CASE("domain") {
    const PrecisionContext ctx(20);
    CHECK_THROWS_AS(krivine::ellip_K(ctx.real(1), ctx), krivine::DomainError);
    CHECK_THROWS_AS(krivine::ellip_K(-ctx.parse("0.5"), ctx),
                    krivine::DomainError);
    CHECK_THROWS_AS(krivine::ellip_E(ctx.parse("1.01"), ctx),
                    krivine::DomainError);
    for (const char* bad : {"0", "1", "-0.2", "1.5"}) {
      CHECK_THROWS_AS(krivine::krivine_middle(ctx.parse(bad), ctx),
                      krivine::DomainError);
      CHECK_THROWS_AS(krivine::krivine_complex_f(ctx.parse(bad), ctx),
                      krivine::DomainError);
    }
  }

  TEST_CASE("K and E against the oracle") {
    const PrecisionContext ctx(40);
    CHECK(near(krivine::ellip_K(ctx.parse("0.5"), ctx), big(frozen::kK05, ctx),
               40));
    CHECK(near(krivine::ellip_E(ctx.parse("0.5"), ctx), big(frozen::kE05, ctx),
               40));
    CHECK(near(krivine::ellip_K(ctx.parse("0.999"), ctx),
               big(frozen::kK0999, ctx), 39));
    CHECK(near(krivine::ellip_E(ctx.parse("0.999"), ctx),
               big(frozen::kE0999, ctx), 40));
  }

  TEST_CASE("E close to k = 1 switches to quadrature and stays continuous") {
    const PrecisionContext ctx(30);
    const BigReal k = 1L - ctx.ten_to_minus(7);
    const BigReal e = krivine::ellip_E(k, ctx);
    CHECK(e > 1L);
    CHECK(e < krivine::ellip_E(ctx.parse("0.999"), ctx));
    // E(k) = 1 + (k'^2 / 2)(ln(4/k') - 1/2) + O(k'^4 ln k').
    const BigReal kc2 = (1L - k) * (1L + k);
    const BigReal kc = krivine::sqrt(kc2);
    const BigReal approx =
        1L + kc2 / 2 * (krivine::log(4L / kc) - BigReal(0.5, ctx.bits()));
    CHECK(krivine::abs(e - approx) < ctx.ten_to_minus(11));
  }

  TEST_CASE("Legendre relation on the certificate grid") {
    const PrecisionContext ctx(30);
    const BigReal half_pi = krivine::const_pi(ctx) / 2;
    for (const BigReal& k : krivine::certificate_moduli(ctx)) {
      const BigReal kc = krivine::sqrt((1L - k) * (1L + k));
      const BigReal big_k = krivine::ellip_K(k, ctx);
      const BigReal big_e = krivine::ellip_E(k, ctx);
      const BigReal big_kc = krivine::ellip_K(kc, ctx);
      const BigReal big_ec = krivine::ellip_E(kc, ctx);
      const BigReal lhs = big_e * big_kc + big_ec * big_k - big_k * big_kc;
      CHECK(krivine::abs(lhs - half_pi) < ctx.ten_to_minus(25));
    }
  }

  TEST_CASE("AGM against quadrature on the certificate grid") {
    const PrecisionContext ctx(30);
    for (const BigReal& k : krivine::certificate_moduli(ctx)) {
      const auto pair = krivine::elliptic_pair(k, ctx);
      CHECK_FALSE(pair.imaginary);
      CHECK(krivine::abs(pair.K - krivine::ellip_K_quadrature(k, ctx).value) <
            ctx.ten_to_minus(25));
      CHECK(krivine::abs(pair.E - krivine::ellip_E_quadrature(k, ctx).value) <
            ctx.ten_to_minus(25));
    }
  }

  TEST_CASE("K grows and E shrinks with the modulus") {
    const PrecisionContext ctx(20);
    const auto grid = krivine::certificate_moduli(ctx);
    for (size_t i = 1; i < grid.size(); ++i) {
      if (!(grid[i] > grid[i - 1])) continue;
      CHECK(krivine::ellip_K(grid[i], ctx) > krivine::ellip_K(grid[i - 1], ctx));
      CHECK(krivine::ellip_E(grid[i], ctx) < krivine::ellip_E(grid[i - 1], ctx));
    }
  }

  TEST_CASE("imaginary modulus and Haagerup's bound") {
    const PrecisionContext ctx(40);
    const auto p = krivine::elliptic_pair_imag(ctx);
    CHECK(p.imaginary);
    CHECK(near(p.K, big(frozen::kKi, ctx), 40));
    CHECK(near(p.E, big(frozen::kEi, ctx), 40));
    CHECK(near(krivine::ellip_K_imag(ctx), p.K, 40));
    CHECK(near(krivine::ellip_E_imag(ctx), p.E, 40));
    const BigReal h = krivine::haagerup_bound(ctx);
    CHECK(near(h, big(frozen::kHaagerup, ctx), 40));
    CHECK(krivine::abs(h - krivine::haagerup_bound_quadrature(ctx)) <
          ctx.ten_to_minus(25));
    // The complex constant lies below the real one.
    CHECK(h < krivine::const_KG(ctx));
  }

  TEST_CASE("Haagerup regression at 15 digits") {
    const PrecisionContext ctx(15);
    CHECK(krivine::haagerup_bound(ctx).to_string(15) == "1.40457593466374");
  }

  TEST_CASE("middle expression: elliptic form against its integral") {
    const PrecisionContext ctx(30);
    for (const char* x : {"0.1", "0.5", "0.9"}) {
      const BigReal v = ctx.parse(x);
      CHECK(krivine::abs(krivine::krivine_middle(v, ctx) -
                         krivine::krivine_middle_quadrature(v, ctx)) <
            ctx.ten_to_minus(25));
    }
  }

  TEST_CASE("complex root") {
    const PrecisionContext ctx(40);
    const auto r = krivine::solve_x0(ctx);
    CHECK(near(r.x0, big(frozen::kX0, ctx), 38));
    CHECK(krivine::abs(r.residual) < ctx.ten_to_minus(30));
    CHECK(krivine::abs(krivine::krivine_complex_f(r.x0, ctx)) <
          ctx.ten_to_minus(30));
    CHECK(near(r.kc_upper, big(frozen::kKcUpper, ctx), 38));
    CHECK(r.iterations >= 1);
    CHECK(r.bracket_low.to_string(3) == "0.0100");
    CHECK(r.bracket_high.to_string(2) == "0.99");
  }

  TEST_CASE("root is precision-monotone") {
    const PrecisionContext low(20);
    const PrecisionContext high(40);
    const BigReal a = krivine::solve_x0(low).x0;
    const BigReal b = krivine::solve_x0(high).x0;
    CHECK(krivine::abs(a - b) < low.tolerance());
  }

  TEST_CASE("bracket without a sign change") {
    const PrecisionContext ctx(20);
    krivine::RootOptions options;
    options.bracket_low = 0.1;
    options.bracket_high = 0.5;
    CHECK_THROWS_AS(krivine::solve_x0(ctx, options), krivine::BracketFailure);
  }

  TEST_CASE("iteration cap") {
    const PrecisionContext ctx(40);
    krivine::RootOptions options;
    options.max_iterations = 2;
    CHECK_THROWS_AS(krivine::solve_x0(ctx, options), krivine::NoConvergence);
  }
}
