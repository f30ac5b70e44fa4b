#ifndef KRIVINE_ELLIPTIC_HPP
#define KRIVINE_ELLIPTIC_HPP

#include <vector>

#include "krivine/big_real.hpp"
#include "krivine/precision.hpp"
#include "krivine/quadrature.hpp"

namespace krivine {

// Complete elliptic integrals in the modulus convention:
//   K(k) = int_0^{pi/2} dθ / sqrt(1 - k^2 sin^2 θ)
//   E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 θ) dθ
struct EllipticPair {
  BigReal k;
  // k = i when set (the `k` field then holds 1).
  bool imaginary;
  BigReal K;
  BigReal E;
};

/// K(k) = pi / (2 AGM(1, sqrt(1 - k^2))).  DomainError unless 0 <= k < 1.
BigReal ellip_K(const BigReal& k, const PrecisionContext& ctx);

/// E(k) from the AGM companion sequence; E(1) = 1 exactly and quadrature of
/// the defining integral when 1 - k < 1e-5.  DomainError unless 0 <= k <= 1.
BigReal ellip_E(const BigReal& k, const PrecisionContext& ctx);

/// Both integrals from a single AGM run (k < 1).
EllipticPair elliptic_pair(const BigReal& k, const PrecisionContext& ctx);

/// Defining integrals by quadrature; the independent route.
QuadratureResult ellip_K_quadrature(const BigReal& k,
                                    const PrecisionContext& ctx);
QuadratureResult ellip_E_quadrature(const BigReal& k,
                                    const PrecisionContext& ctx);

/// Sample moduli for the elliptic certificates: 0.1, 0.2, ..., 0.9,
/// 1/sqrt 2, 0.99 and 0.999.  k = 0 is left out because its complement is 1.
std::vector<BigReal> certificate_moduli(const PrecisionContext& ctx);

/// K(i) = K(1/sqrt 2)/sqrt 2 and E(i) = sqrt 2 E(1/sqrt 2), the values of the
/// defining integrals with k^2 = -1.
BigReal ellip_K_imag(const PrecisionContext& ctx);
BigReal ellip_E_imag(const PrecisionContext& ctx);
EllipticPair elliptic_pair_imag(const PrecisionContext& ctx);

/// 1 / (2 K(i) - E(i)).
BigReal haagerup_bound(const PrecisionContext& ctx);

/// 1 / int_0^{pi/2} cos^2 θ / sqrt(1 + sin^2 θ) dθ by quadrature.
BigReal haagerup_bound_quadrature(const PrecisionContext& ctx);

/// (1/x) [E(x) - (1 - x^2) K(x)].  DomainError outside (0, 1).
BigReal krivine_middle(const BigReal& x, const PrecisionContext& ctx);

/// x * int_0^{pi/2} cos^2 θ / sqrt(1 - x^2 sin^2 θ) dθ by quadrature.
BigReal krivine_middle_quadrature(const BigReal& x,
                                  const PrecisionContext& ctx);

/// f(x) = (1/x)[E(x) - (1 - x^2) K(x)] - pi (x + 1) / 8.
BigReal krivine_complex_f(const BigReal& x, const PrecisionContext& ctx);

struct RootResult {
  BigReal x0;
  // f(x0); |residual| < ctx.tolerance() on success.
  BigReal residual;
  int iterations;
  BigReal bracket_low;
  BigReal bracket_high;
  // 8 / (pi (x0 + 1)).
  BigReal kc_upper;
};

struct RootOptions {
  double bracket_low = 0.01;
  double bracket_high = 0.99;
  int max_iterations = 200;
};

/// Root of krivine_complex_f by Brent's method on the bracket.  Throws
/// BracketFailure if f has no sign change there, NoConvergence if the
/// residual cannot be brought under the tolerance.
RootResult solve_x0(const PrecisionContext& ctx,
                    const RootOptions& options = {});

}  // namespace krivine

#endif  // KRIVINE_ELLIPTIC_HPP
