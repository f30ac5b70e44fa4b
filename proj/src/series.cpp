#include "krivine/series.hpp"

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "krivine/constants.hpp"
#include "krivine/errors.hpp"

namespace krivine {

namespace {

// B_{2j} / (2j)! for j = 0..count-1, by the Akiyama-Tanigawa recurrence.
std::vector<mpq_class> bernoulli_over_factorial(int count) {
  const int top = 2 * (count - 1);
  std::vector<mpq_class> row(static_cast<size_t>(top) + 1);
  std::vector<mpq_class> bernoulli(static_cast<size_t>(top) + 1);
  for (int m = 0; m <= top; ++m) {
    row[m] = mpq_class(1, m + 1);
    for (int j = m; j >= 1; --j) {
      row[j - 1] = j * (row[j - 1] - row[j]);
      row[j - 1].canonicalize();
    }
    bernoulli[m] = row[0];
  }
  std::vector<mpq_class> out;
  mpz_class factorial = 1;
  for (int j = 0; j < count; ++j) {
    if (j > 0) factorial *= (2 * j - 1) * (2 * j);
    mpq_class q = bernoulli[2 * j] / mpq_class(factorial);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

BigReal to_big(const mpq_class& q, Bits prec) {
  BigReal r(prec);
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

// A^-p - (A+2)^-p without cancellation for large A.
BigReal gap_power(const BigReal& a, int p) {
  if (p == 1) return 2L / (a * (a + 2L));
  BigReal ratio_log = log1p(-2L / (a + 2L));
  return -pow(a, -p) * expm1(ratio_log * p);
}

BigReal factor_8sqrt2_over_pi(const PrecisionContext& ctx) {
  return 8 * const_sqrt2(ctx) / const_pi(ctx);
}

struct Tail {
  BigReal value;
  BigReal bound;
  long corrections;
};

// sum_{n>=n0} g(n)^2 by Euler-Maclaurin.  h = g^2 is completely monotone, so
// the remainder after any number of correction terms is bounded by the first
// omitted one.
Tail euler_maclaurin_tail(long n0, const PrecisionContext& ctx,
                          const BigReal& target) {
  const Bits prec = ctx.bits();
  const BigReal x0(n0, prec);

  std::vector<BigReal> derivs;
  BigReal derivative_error(prec);
  auto g_at = [&](int order) -> const BigReal& {
    while (static_cast<int>(derivs.size()) <= order) {
      AcceleratedSum s =
          tail_envelope(x0, static_cast<int>(derivs.size()), ctx);
      derivative_error = max(derivative_error, abs(s.error_bound / s.value));
      derivs.push_back(std::move(s.value));
    }
    return derivs[static_cast<size_t>(order)];
  };
  // Leibniz rule for (g^2)^(m).
  auto h_deriv = [&](int m) {
    BigReal total(prec);
    BigReal binom(1L, prec);
    for (int i = 0; i <= m; ++i) {
      total += binom * g_at(i) * g_at(m - i);
      binom *= (m - i);
      binom /= (i + 1);
    }
    return total;
  };

  // integral_{n0}^inf g(x)^2 dx with x = n0/u.
  const PrecisionContext quad_ctx = ctx.with_tolerance(target);
  QuadratureResult integral = integrate(
      [&](const BigReal&, const BigReal& u, const BigReal&) {
        const BigReal x = x0 / u;
        const BigReal g = tail_envelope(x, 0, ctx).value;
        return square(g) * x0 / square(u);
      },
      BigReal(prec), BigReal(1L, prec), quad_ctx);

  BigReal sum = integral.value + ldexp(h_deriv(0), -1);

  // The smallest correction is reached near 2j ~ 2 pi n0; n0 is chosen far
  // above what the target needs, so the loop ends long before that.
  constexpr int kMaxCorrections = 200;
  std::vector<mpq_class> coeff = bernoulli_over_factorial(kMaxCorrections + 2);
  for (int j = 1; j <= kMaxCorrections; ++j) {
    BigReal term = to_big(coeff[static_cast<size_t>(j)], prec) * h_deriv(2 * j - 1);
    if (abs(term) < target) {
      BigReal bound = abs(term) + integral.error_estimate +
                      4 * derivative_error * abs(sum);
      return Tail{sum, bound, j - 1};
    }
    sum -= term;
  }
  throw NoConvergence("double_series: Euler-Maclaurin corrections for N0=" +
                      std::to_string(n0) + " did not reach the target");
}

struct OuterPlan {
  bool truncate;
  long terms;
};

OuterPlan plan_outer(const PrecisionContext& ctx,
                     const DoubleSeriesOptions& options) {
  const long n_trunc = truncation_terms(ctx.tolerance());
  switch (options.mode) {
    case OuterTail::Truncate:
      if (n_trunc > options.max_terms) {
        throw MaxTermsExceeded(
            "double_series: truncation needs " + std::to_string(n_trunc) +
            " outer terms, cap is " + std::to_string(options.max_terms));
      }
      return {true, n_trunc};
    case OuterTail::EulerMaclaurin:
      break;
    case OuterTail::Auto:
      if (n_trunc <= std::min(options.max_terms,
                              DoubleSeriesOptions::kTruncationLimit)) {
        return {true, n_trunc};
      }
      break;
  }
  const long n0 = 2L * ctx.working_digits() + 16;
  if (n0 > options.max_terms) {
    throw MaxTermsExceeded("double_series: cap " +
                           std::to_string(options.max_terms) +
                           " is below the explicit range " +
                           std::to_string(n0));
  }
  return {false, n0};
}

void require_increasing(std::span<const long> checkpoints, long first,
                        const char* what) {
  long previous = first;
  for (long c : checkpoints) {
    if (c < previous) {
      throw DomainError(std::string(what) +
                        ": checkpoints must be increasing and >= " +
                        std::to_string(first));
    }
    previous = c;
  }
}

// Running sums of (scale * T_n)^2, T_n = S - S_n, read off at each
// checkpoint.
std::vector<BigReal> squares_at(std::span<const long> checkpoints,
                                const BigReal& scale,
                                const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const BigReal s = limit_S(ctx);
  CompensatedSum partial(prec);
  CompensatedSum squares(prec);
  std::vector<BigReal> out;
  out.reserve(checkpoints.size());
  long n = 1;
  for (long target : checkpoints) {
    for (; n <= target; ++n) {
      partial.add(inner_term(n, ctx));
      squares.add(square(scale * (s - partial.value())));
    }
    out.push_back(squares.value());
  }
  return out;
}

BigReal explicit_squares(long count, const BigReal& scale,
                         const PrecisionContext& ctx) {
  const long checkpoint[] = {count};
  return squares_at(checkpoint, scale, ctx).front();
}

SeriesResult outer_sum(const PrecisionContext& ctx,
                       const DoubleSeriesOptions& options,
                       const BigReal& scale) {
  const BigReal scale2 = square(scale);
  // Truncation and tail targets refer to the unscaled sum of T_n^2.
  const PrecisionContext raw_ctx =
      ctx.with_tolerance(ctx.tolerance() / max(scale2, ctx.real(1)));
  const OuterPlan plan = plan_outer(raw_ctx, options);
  if (plan.truncate) {
    BigReal value = explicit_squares(plan.terms, scale, ctx);
    BigReal bound = scale2 / (3 * pow(ctx.real(4 * plan.terms + 1), 3));
    const bool ok = bound < ctx.tolerance();
    return SeriesResult{value, plan.terms, bound, ok};
  }
  BigReal value = explicit_squares(plan.terms - 1, scale, ctx);
  // Pieces are resolved a thousand times below the overall tolerance.
  const BigReal target = raw_ctx.tolerance() / 1000;
  Tail tail = euler_maclaurin_tail(plan.terms, ctx, target);
  value += scale2 * tail.value;
  BigReal bound = scale2 * tail.bound;
  const bool ok = bound < ctx.tolerance();
  return SeriesResult{value, plan.terms - 1, bound, ok};
}

}  // namespace

BigReal inner_term(long k, const PrecisionContext& ctx) {
  if (k < 1) throw DomainError("inner_term: index starts at 1");
  // (1/(4k-1) - 1/(4k-3)) = -2 / ((4k-3)(4k-1)).
  BigReal magnitude = ctx.real(2) / ((4 * k - 3) * ctx.real(4 * k - 1));
  return k % 2 == 0 ? -magnitude : magnitude;
}

BigReal partial_sum_S(long n, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("partial_sum_S: n must be >= 0");
  CompensatedSum sum(ctx.bits());
  for (long k = 1; k <= n; ++k) sum.add(inner_term(k, ctx));
  return sum.value();
}

std::vector<BigReal> partial_sums_S(std::span<const long> checkpoints,
                                    const PrecisionContext& ctx) {
  require_increasing(checkpoints, 0, "partial_sums_S");
  CompensatedSum sum(ctx.bits());
  std::vector<BigReal> out;
  out.reserve(checkpoints.size());
  long k = 1;
  for (long target : checkpoints) {
    for (; k <= target; ++k) sum.add(inner_term(k, ctx));
    out.push_back(sum.value());
  }
  return out;
}

BigReal limit_S(const PrecisionContext& ctx) {
  return ldexp(const_sqrt2(ctx) * const_L(ctx), -1);
}

AcceleratedSum tail_envelope(const BigReal& x, int order,
                             const PrecisionContext& ctx) {
  if (order < 0) throw DomainError("tail_envelope: negative order");
  const Bits prec = ctx.bits();
  const BigReal base = 4 * x.with_precision(prec) + 1L;
  AcceleratedSum s = alternating_sum(
      [&](long j) { return gap_power(base + 4 * j, order + 1); },
      ctx.ten_to_minus(ctx.working_digits()));
  if (order > 0) {
    // d^i/dx^i (4x + c)^-1 = (-4)^i i! (4x + c)^-(i+1).
    BigReal scale(1L, prec);
    for (int i = 1; i <= order; ++i) scale *= -4L * i;
    s.value *= scale;
    s.error_bound *= abs(scale);
  }
  return s;
}

SeriesResult inner_tail(long n, const PrecisionContext& ctx,
                        TailRoute route) {
  if (n < 0) throw DomainError("inner_tail: n must be >= 0");
  if (route == TailRoute::Closed) {
    return SeriesResult{limit_S(ctx) - partial_sum_S(n, ctx), std::max(n, 1L),
                        ctx.zero(), true};
  }
  AcceleratedSum g = tail_envelope(ctx.real(n), 0, ctx);
  BigReal value = n % 2 == 0 ? g.value : -g.value;
  const bool ok = g.error_bound < ctx.tolerance();
  return SeriesResult{std::move(value), g.terms, std::move(g.error_bound), ok};
}

FourierCoefficient fourier_a(long n, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("fourier_a: n must be >= 0");
  if (n == 0) {
    return FourierCoefficient{0, 8 * const_L(ctx) / const_pi(ctx)};
  }
  return FourierCoefficient{
      n, factor_8sqrt2_over_pi(ctx) * inner_tail(n, ctx).value};
}

QuadratureResult fourier_a_quadrature(long n, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("fourier_a_quadrature: n must be >= 0");
  const BigReal quarter_pi = ldexp(const_pi(ctx), -2);
  const BigReal scale = 8L / const_pi(ctx);
  const PrecisionContext quad_ctx = ctx.with_tolerance(ctx.tolerance() / scale);
  QuadratureResult r = integrate(
      [n](const BigReal& t) { return cos(t * (4 * n)) / cos(t); },
      BigReal(ctx.bits()), quarter_pi, quad_ctx);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

BigReal recurrence_check(long n, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("recurrence_check: n must be >= 1");
  const BigReal diff = fourier_a(n, ctx).value - fourier_a(n - 1, ctx).value;
  BigReal step = factor_8sqrt2_over_pi(ctx) *
                 (1L / ctx.real(4 * n - 3) - 1L / ctx.real(4 * n - 1));
  if (n % 2 != 0) step = -step;
  return abs(diff - step);
}

long truncation_terms(const BigReal& tolerance) {
  if (tolerance.sign() <= 0) throw DomainError("tolerance must be positive");
  const Bits prec = tolerance.precision();
  // 1/(3 (4N+1)^3) < tol  <=>  4N + 1 > (3 tol)^(-1/3).
  const BigReal root = exp(-log(3 * tolerance) / 3);
  const BigReal limit(static_cast<double>(std::numeric_limits<long>::max() / 8),
                      prec);
  if (root > limit) return std::numeric_limits<long>::max() / 8;
  long n = std::max(1L, static_cast<long>(std::ceil((root.to_double() - 1) / 4)));
  auto bound = [&](long m) {
    return 1L / (3 * pow(BigReal(4 * m + 1, prec), 3));
  };
  while (n > 1 && bound(n - 1) < tolerance) --n;
  while (!(bound(n) < tolerance)) ++n;
  return n;
}

SeriesResult double_series(const PrecisionContext& ctx,
                           const DoubleSeriesOptions& options) {
  return outer_sum(ctx, options, ctx.real(1));
}

std::vector<BigReal> double_series_partials(std::span<const long> checkpoints,
                                            const PrecisionContext& ctx) {
  require_increasing(checkpoints, 0, "double_series_partials");
  return squares_at(checkpoints, ctx.real(1), ctx);
}

SeriesResult parseval_closure(const PrecisionContext& ctx,
                              const DoubleSeriesOptions& options) {
  SeriesResult r = outer_sum(ctx, options, factor_8sqrt2_over_pi(ctx));
  r.value += ldexp(square(fourier_a(0, ctx).value), -1);
  return r;
}

}  // namespace krivine
