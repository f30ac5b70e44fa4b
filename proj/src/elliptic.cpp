#include "krivine/elliptic.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "krivine/constants.hpp"
#include "krivine/errors.hpp"

namespace krivine {

namespace {

// Below this distance from 1 the AGM companion sum for E cancels badly.
constexpr double kNearOneForE = 1e-5;

void require_modulus(const BigReal& k, bool allow_one, const char* what) {
  if (!k.is_finite() || k.sign() < 0 || (allow_one ? k > 1L : k >= 1L)) {
    throw DomainError(std::string(what) + ": modulus out of range, k = " +
                      k.to_string(20));
  }
}

// 1 - k^2 sin^2 θ written as k'^2 + k^2 cos^2 θ, with cos θ taken from the
// distance to pi/2 so the peak near pi/2 keeps full relative accuracy.
BigReal delta_squared(const BigReal& k, const BigReal& theta,
                      const BigReal& to_half_pi) {
  const BigReal kk = square(k);
  const BigReal one_minus_kk = (1L - k) * (1L + k);
  if (theta < to_half_pi) return 1L - kk * square(sin(theta));
  return one_minus_kk + kk * square(sin(to_half_pi));
}

BigReal half_pi(const PrecisionContext& ctx) {
  return ldexp(const_pi(ctx), -1);
}

}  // namespace

EllipticPair elliptic_pair(const BigReal& k, const PrecisionContext& ctx) {
  require_modulus(k, false, "elliptic_pair");
  const Bits prec = ctx.bits();
  const BigReal kw = k.with_precision(prec);
  const BigReal eps = ldexp(BigReal(1L, prec), -prec.value);

  // a_0 = 1, b_0 = k', c_0 = k;  E/K = 1 - sum_n 2^(n-1) c_n^2.
  BigReal a(1L, prec);
  BigReal b = sqrt((1L - kw) * (1L + kw));
  BigReal c = kw;
  BigReal weight(0.5, prec);
  CompensatedSum sum(prec);
  sum.add(weight * square(c));
  for (int i = 0; i < 64 && abs(c) > eps * a; ++i) {
    c = ldexp(a - b, -1);
    BigReal next_a = ldexp(a + b, -1);
    b = sqrt(a * b);
    a = std::move(next_a);
    weight *= 2L;
    sum.add(weight * square(c));
  }
  BigReal big_k = const_pi(ctx) / (2 * a);
  BigReal big_e = big_k * (1L - sum.value());
  return EllipticPair{kw, false, std::move(big_k), std::move(big_e)};
}

BigReal ellip_K(const BigReal& k, const PrecisionContext& ctx) {
  require_modulus(k, false, "ellip_K");
  if (k.is_zero()) return half_pi(ctx);
  return elliptic_pair(k, ctx).K;
}

BigReal ellip_E(const BigReal& k, const PrecisionContext& ctx) {
  require_modulus(k, true, "ellip_E");
  if (k.is_zero()) return half_pi(ctx);
  if (k == 1L) return ctx.real(1);
  if (1L - k < BigReal(kNearOneForE, ctx.bits())) {
    return ellip_E_quadrature(k, ctx).value;
  }
  return elliptic_pair(k, ctx).E;
}

QuadratureResult ellip_K_quadrature(const BigReal& k,
                                    const PrecisionContext& ctx) {
  require_modulus(k, false, "ellip_K_quadrature");
  const BigReal kw = k.with_precision(ctx.bits());
  return integrate(
      [&](const BigReal& theta, const BigReal&, const BigReal& to_end) {
        return 1L / sqrt(delta_squared(kw, theta, to_end));
      },
      ctx.zero(), half_pi(ctx), ctx);
}

QuadratureResult ellip_E_quadrature(const BigReal& k,
                                    const PrecisionContext& ctx) {
  require_modulus(k, true, "ellip_E_quadrature");
  const BigReal kw = k.with_precision(ctx.bits());
  return integrate(
      [&](const BigReal& theta, const BigReal&, const BigReal& to_end) {
        return sqrt(delta_squared(kw, theta, to_end));
      },
      ctx.zero(), half_pi(ctx), ctx);
}

std::vector<BigReal> certificate_moduli(const PrecisionContext& ctx) {
  std::vector<BigReal> grid;
  for (const char* k : {"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8",
                        "0.9"}) {
    grid.push_back(ctx.parse(k));
  }
  grid.push_back(1L / const_sqrt2(ctx));
  grid.push_back(ctx.parse("0.99"));
  grid.push_back(ctx.parse("0.999"));
  return grid;
}

EllipticPair elliptic_pair_imag(const PrecisionContext& ctx) {
  const BigReal root2 = const_sqrt2(ctx);
  EllipticPair reduced = elliptic_pair(1L / root2, ctx);
  return EllipticPair{ctx.real(1), true, reduced.K / root2,
                      reduced.E * root2};
}

BigReal ellip_K_imag(const PrecisionContext& ctx) {
  return elliptic_pair_imag(ctx).K;
}

BigReal ellip_E_imag(const PrecisionContext& ctx) {
  return elliptic_pair_imag(ctx).E;
}

BigReal haagerup_bound(const PrecisionContext& ctx) {
  const EllipticPair p = elliptic_pair_imag(ctx);
  return 1L / (2 * p.K - p.E);
}

BigReal haagerup_bound_quadrature(const PrecisionContext& ctx) {
  QuadratureResult r = integrate(
      [](const BigReal& theta) {
        const BigReal s = sin(theta);
        return square(cos(theta)) / sqrt(1L + square(s));
      },
      ctx.zero(), half_pi(ctx), ctx);
  return 1L / r.value;
}

BigReal krivine_middle(const BigReal& x, const PrecisionContext& ctx) {
  if (!(x > 0L && x < 1L)) {
    throw DomainError("krivine_middle: x must lie in (0, 1)");
  }
  const EllipticPair p = elliptic_pair(x, ctx);
  const BigReal xw = x.with_precision(ctx.bits());
  return (p.E - (1L - square(xw)) * p.K) / xw;
}

BigReal krivine_middle_quadrature(const BigReal& x,
                                  const PrecisionContext& ctx) {
  if (!(x > 0L && x < 1L)) {
    throw DomainError("krivine_middle_quadrature: x must lie in (0, 1)");
  }
  const BigReal xw = x.with_precision(ctx.bits());
  QuadratureResult r = integrate(
      [&](const BigReal& theta, const BigReal&, const BigReal& to_end) {
        const BigReal c = theta < to_end ? cos(theta) : sin(to_end);
        return square(c) / sqrt(delta_squared(xw, theta, to_end));
      },
      ctx.zero(), half_pi(ctx), ctx);
  return xw * r.value;
}

BigReal krivine_complex_f(const BigReal& x, const PrecisionContext& ctx) {
  if (!(x > 0L && x < 1L)) {
    throw DomainError("krivine_complex_f: x must lie in (0, 1)");
  }
  const BigReal xw = x.with_precision(ctx.bits());
  return krivine_middle(xw, ctx) - const_pi(ctx) * (xw + 1L) / 8;
}

RootResult solve_x0(const PrecisionContext& ctx, const RootOptions& options) {
  const Bits prec = ctx.bits();
  auto f = [&](const BigReal& x) { return krivine_complex_f(x, ctx); };

  const BigReal low(options.bracket_low, prec);
  const BigReal high(options.bracket_high, prec);
  BigReal a = low;
  BigReal b = high;
  BigReal fa = f(a);
  BigReal fb = f(b);
  if (fa.sign() * fb.sign() > 0) {
    throw BracketFailure("solve_x0: no sign change on [" + a.to_string(6) +
                         ", " + b.to_string(6) + "]");
  }

  // Brent's zeroin: inverse quadratic / secant steps guarded by bisection.
  const BigReal eps = ldexp(BigReal(1L, prec), 1 - prec.value);
  const BigReal xtol = ctx.ten_to_minus(ctx.working_digits());
  BigReal c = a;
  BigReal fc = fa;
  BigReal d = b - a;
  BigReal e = d;
  int iterations = 0;
  for (; iterations < options.max_iterations; ++iterations) {
    if (fb.sign() * fc.sign() > 0) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (abs(fc) < abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const BigReal tol1 = 2 * eps * abs(b) + ldexp(xtol, -1);
    const BigReal xm = ldexp(c - b, -1);
    if (abs(xm) <= tol1 || fb.is_zero()) break;

    if (abs(e) >= tol1 && abs(fa) > abs(fb)) {
      const BigReal s = fb / fa;
      BigReal p(prec);
      BigReal q(prec);
      if (a == c) {
        p = 2 * xm * s;
        q = 1L - s;
      } else {
        const BigReal qa = fa / fc;
        const BigReal r = fb / fc;
        p = s * (2 * xm * qa * (qa - r) - (b - a) * (r - 1L));
        q = (qa - 1L) * (r - 1L) * (s - 1L);
      }
      if (p.sign() > 0) q = -q;
      p = abs(p);
      const BigReal min1 = 3 * xm * q - abs(tol1 * q);
      const BigReal min2 = abs(e * q);
      if (2 * p < min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (abs(d) > tol1) {
      b += d;
    } else {
      b += xm.sign() > 0 ? tol1 : -tol1;
    }
    fb = f(b);
  }

  if (!(abs(fb) < ctx.tolerance())) {
    throw NoConvergence("solve_x0: residual " + abs(fb).to_string(3) +
                        " after " + std::to_string(iterations) +
                        " iterations");
  }
  BigReal kc = 8L / (const_pi(ctx) * (b + 1L));
  return RootResult{b, fb, std::max(iterations, 1), low, high, std::move(kc)};
}

}  // namespace krivine
