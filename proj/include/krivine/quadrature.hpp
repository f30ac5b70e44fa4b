#ifndef KRIVINE_QUADRATURE_HPP
#define KRIVINE_QUADRATURE_HPP

#include <functional>

#include "krivine/big_real.hpp"
#include "krivine/precision.hpp"

namespace krivine {

struct QuadratureResult {
  BigReal value;
  BigReal error_estimate;
  long evaluations;
  int levels;
};

struct QuadratureOptions {
  // Refinement stops with NoConvergence after this many step halvings.
  int max_level = 12;
  // Levels always computed before the error estimate is trusted.
  int min_level = 3;
  // Multiplier on |I_L - I_{L-1}|.
  long safety_factor = 10;
};

using Integrand = std::function<BigReal(const BigReal&)>;

// Integrand that also receives the distances to both endpoints, x - a and
// b - x, each computed without cancellation.  Use it for integrands that are
// singular at an endpoint.
using EndpointIntegrand =
    std::function<BigReal(const BigReal& x, const BigReal& from_left,
                          const BigReal& from_right)>;

// Tanh-sinh (double exponential) quadrature of f over (a, b).
//
// Nodes cluster doubly exponentially toward both ends but never reach them,
// so integrable logarithmic endpoint singularities need no special handling.
// The step is halved per level; the reported error estimate is
// safety_factor * |I_L - I_{L-1}| and the result is returned once it falls
// below ctx.tolerance().
//
// Throws DomainError if !(a < b), NoConvergence when max_level is reached
// first and NonFiniteEvaluation if f returns a non-finite value.
QuadratureResult integrate(const Integrand& f, const BigReal& a,
                           const BigReal& b, const PrecisionContext& ctx,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const EndpointIntegrand& f, const BigReal& a,
                           const BigReal& b, const PrecisionContext& ctx,
                           const QuadratureOptions& options = {});

// Integral of f over (a, inf) for integrands with eventual exponential decay.
// The substitution x = a - ln(1 - u) maps the range onto u in (0, 1).
QuadratureResult integrate_to_infinity(const Integrand& f, const BigReal& a,
                                       const PrecisionContext& ctx,
                                       const QuadratureOptions& options = {});

}  // namespace krivine

#endif  // KRIVINE_QUADRATURE_HPP
