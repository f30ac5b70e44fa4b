#include "krivine/khintchine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krivine/errors.hpp"
#include "krivine/quadrature.hpp"

namespace krivine {

namespace {

// sum_{n=2}^{N} log2(n) * log1p(1/(n(n+2))) at each checkpoint N.
//
// The factors are formed in extended precision and accumulated with
// Neumaier compensation; the result is good to ~1e-18, well past what the
// one-term tail correction can deliver.
std::vector<BigReal> log_sums(std::span<const long> checkpoints,
                              const PrecisionContext& ctx) {
  constexpr long double kInvLn2 = 1.442695040888963407359924681001892137L;
  std::vector<BigReal> out;
  out.reserve(checkpoints.size());
  long double sum = 0.0L;
  long double carry = 0.0L;
  long n = 2;
  for (long target : checkpoints) {
    if (target < n - 1) {
      throw DomainError("khintchine: checkpoints must increase");
    }
    for (; n <= target; ++n) {
      const long double x = static_cast<long double>(n);
      const long double term =
          std::log(x) * kInvLn2 * std::log1p(1.0L / (x * (x + 2.0L)));
      const long double t = sum + term;
      carry += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term
                                                 : (term - t) + sum;
      sum = t;
    }
    BigReal total(ctx.bits());
    mpfr_set_ld(total.raw(), sum, MPFR_RNDN);
    BigReal correction(ctx.bits());
    mpfr_set_ld(correction.raw(), carry, MPFR_RNDN);
    out.push_back(total + correction);
  }
  return out;
}

// Euler-Maclaurin estimate of sum_{n>N} phi(n), phi(x) = ln x/(ln 2 x(x+2)):
//   int_N^inf phi - phi(N)/2 - phi'(N)/12.
BigReal tail_correction(long n, const PrecisionContext& ctx) {
  const Bits prec = ctx.bits();
  const BigReal l2 = ln2(prec);
  const BigReal x(n, prec);
  const BigReal lnx = log(x);

  // x = N/u turns the integral into int_0^1 (ln N - ln u) / (ln 2 (N + 2u)).
  const QuadratureResult integral = integrate(
      [&](const BigReal& u) { return (lnx - log(u)) / (x + 2 * u); }, ctx.zero(),
      ctx.real(1), ctx.with_tolerance(ctx.tolerance() / (x * 100)));
  const BigReal phi = lnx / (x * (x + 2L));
  const BigReal dphi =
      ((x + 2L) - 2 * (x + 1L) * lnx) / square(x * (x + 2L));
  return (integral.value - ldexp(phi, -1) - dphi / 12) / l2;
}

ProductResult accelerated_from(long n, const BigReal& log_sum,
                               const PrecisionContext& ctx) {
  BigReal tail = tail_correction(n, ctx);
  return ProductResult{exp(log_sum + tail), n, std::move(tail), true};
}

}  // namespace

BigReal khintchine_tail_bound(long n, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("khintchine_tail_bound: N must be >= 1");
  const BigReal x = ctx.real(n);
  return (log(x) + 1L) / (x * ln2(ctx.bits()));
}

std::vector<ProductResult> khintchine_partials(std::span<const long> checkpoints,
                                               const PrecisionContext& ctx) {
  for (long c : checkpoints) {
    if (c < 1) throw DomainError("khintchine_partial: N must be >= 1");
  }
  std::vector<BigReal> sums = log_sums(checkpoints, ctx);
  std::vector<ProductResult> out;
  out.reserve(sums.size());
  for (size_t i = 0; i < sums.size(); ++i) {
    out.push_back(ProductResult{exp(sums[i]), checkpoints[i],
                                khintchine_tail_bound(checkpoints[i], ctx),
                                false});
  }
  return out;
}

ProductResult khintchine_partial(long n, const PrecisionContext& ctx) {
  const long checkpoint[] = {n};
  return khintchine_partials(checkpoint, ctx).front();
}

KhintchineStability khintchine_stability(const PrecisionContext& ctx,
                                         const KhintchineOptions& options) {
  const long n = options.base_terms;
  if (n < 2) throw DomainError("khintchine: base_terms must be >= 2");
  const long checkpoints[] = {n, 2 * n};
  std::vector<BigReal> sums = log_sums(checkpoints, ctx);
  return KhintchineStability{accelerated_from(n, sums[0], ctx),
                             accelerated_from(2 * n, sums[1], ctx)};
}

ProductResult khintchine_accelerated(const PrecisionContext& ctx,
                                     int target_digits,
                                     const KhintchineOptions& options) {
  if (target_digits < 1 || target_digits > 8) {
    throw DomainError("khintchine_accelerated: target_digits must be in 1..8");
  }
  KhintchineStability s = khintchine_stability(ctx, options);
  const BigReal drift = abs(s.at_double.value - s.at_base.value);
  if (!(drift < ctx.ten_to_minus(target_digits))) {
    throw NoConvergence("khintchine_accelerated: value moved by " +
                        drift.to_string(3) + " when N doubled");
  }
  return std::move(s.at_double);
}

}  // namespace krivine
