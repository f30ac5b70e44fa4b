#ifndef KRIVINE_SERIES_HPP
#define KRIVINE_SERIES_HPP

#include <span>
#include <vector>

#include "krivine/alternating.hpp"
#include "krivine/big_real.hpp"
#include "krivine/precision.hpp"
#include "krivine/quadrature.hpp"

// The alternating series S_n = sum_{k=1}^n (-1)^(k-1) (1/(4k-3) - 1/(4k-1)),
// its limit S = ln(1 + sqrt 2) / sqrt 2, the inner tails
//   T_n = sum_{k>n} (-1)^k (1/(4k-1) - 1/(4k-3)) = S - S_n,
// the cosine coefficients a_n = (8 sqrt 2 / pi) T_n of 1/cos(x/4) on
// [-pi, pi], and the Parseval double series sum_{n>=1} T_n^2.

namespace krivine {

struct SeriesResult {
  BigReal value;
  long terms_used;
  // Rigorous bound on the truncation error.
  BigReal tail_bound;
  bool converged;
};

struct FourierCoefficient {
  long n;
  BigReal value;
};

/// (-1)^k (1/(4k-1) - 1/(4k-3)).  Throws DomainError for k < 1.
BigReal inner_term(long k, const PrecisionContext& ctx);

/// S_n, summed in ascending k with compensation; S_0 = 0.
BigReal partial_sum_S(long n, const PrecisionContext& ctx);

/// S_n at each of several increasing checkpoints, from one pass.
std::vector<BigReal> partial_sums_S(std::span<const long> checkpoints,
                                    const PrecisionContext& ctx);

/// S = (sqrt 2 / 2) ln(1 + sqrt 2).
BigReal limit_S(const PrecisionContext& ctx);

enum class TailRoute {
  // S - S_n; exact at working precision.
  Closed,
  // Accelerated summation of the tail terms themselves with the
  // alternating-series error bound.
  Direct,
};

/// T_n.  Throws DomainError for n < 0.
SeriesResult inner_tail(long n, const PrecisionContext& ctx,
                        TailRoute route = TailRoute::Closed);

/// g^(order)(x) for the smooth positive envelope
///   g(x) = sum_{j>=1} (-1)^(j+1) [1/(4x+4j-3) - 1/(4x+4j-1)],
/// so that T_n = (-1)^n g(n).  g is completely monotone on x > -1/4.
AcceleratedSum tail_envelope(const BigReal& x, int order,
                             const PrecisionContext& ctx);

/// a_n from the tail formula (a_0 from (8/pi) ln(1 + sqrt 2)).
FourierCoefficient fourier_a(long n, const PrecisionContext& ctx);

/// a_n = (8/pi) * integral_0^{pi/4} cos(4nt)/cos(t) dt by quadrature.
QuadratureResult fourier_a_quadrature(long n, const PrecisionContext& ctx);

/// |a_n - a_{n-1} - (8 sqrt 2/pi)(-1)^n (1/(4n-3) - 1/(4n-1))|.
BigReal recurrence_check(long n, const PrecisionContext& ctx);

enum class OuterTail {
  // Truncate when the closed-form bound allows it within
  // kTruncationLimit terms, Euler-Maclaurin otherwise.
  Auto,
  // Sum until 1/(3 (4N+1)^3) < tolerance.
  Truncate,
  // Explicit terms up to N0 - 1, then the Euler-Maclaurin expansion of
  // sum_{n>=N0} g(n)^2 with the first omitted term as the error bound.
  EulerMaclaurin,
};

struct DoubleSeriesOptions {
  static constexpr long kDefaultMaxTerms = 10'000'000;
  static constexpr long kTruncationLimit = 100'000;
  long max_terms = kDefaultMaxTerms;
  OuterTail mode = OuterTail::Auto;
};

/// Smallest N with sum_{n>N} [2/((4n+1)(4n+3))]^2 <= 1/(3 (4N+1)^3) below
/// `tolerance`.
long truncation_terms(const BigReal& tolerance);

/// sum_{n>=1} T_n^2.  Throws MaxTermsExceeded when truncation would need
/// more than options.max_terms terms.
SeriesResult double_series(const PrecisionContext& ctx,
                           const DoubleSeriesOptions& options = {});

/// sum_{n=1}^N T_n^2 with closed-route tails at each increasing checkpoint N.
std::vector<BigReal> double_series_partials(std::span<const long> checkpoints,
                                            const PrecisionContext& ctx);

/// a_0^2/2 + sum_{n>=1} a_n^2, which Parseval makes equal to 8/pi.
SeriesResult parseval_closure(const PrecisionContext& ctx,
                              const DoubleSeriesOptions& options = {});

}  // namespace krivine

#endif  // KRIVINE_SERIES_HPP
