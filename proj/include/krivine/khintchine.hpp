#ifndef KRIVINE_KHINTCHINE_HPP
#define KRIVINE_KHINTCHINE_HPP

#include <span>
#include <vector>

#include "krivine/big_real.hpp"
#include "krivine/precision.hpp"

// Khintchine's constant as the product
//   K = prod_{n>=1} (1 + 1/(n(n+2)))^(ln n / ln 2),
// evaluated in log space.

namespace krivine {

struct ProductResult {
  BigReal value;
  long terms_used;
  // Log-space tail.  For a plain partial product it is the integral bound
  // (ln N + 1)/(N ln 2) on the omitted sum; for an accelerated result it is
  // the tail correction that was added.
  BigReal tail_estimate;
  bool accelerated;
};

/// prod_{n=1}^N of the factors.  DomainError for N < 1.
ProductResult khintchine_partial(long n, const PrecisionContext& ctx);

/// Partial products at several increasing checkpoints from one pass.
std::vector<ProductResult> khintchine_partials(std::span<const long> checkpoints,
                                               const PrecisionContext& ctx);

/// (ln N + 1) / (N ln 2).
BigReal khintchine_tail_bound(long n, const PrecisionContext& ctx);

struct KhintchineOptions {
  long base_terms = 1'000'000;
};

struct KhintchineStability {
  // Accelerated values at base_terms and 2 * base_terms.
  ProductResult at_base;
  ProductResult at_double;
};

/// Accelerated values at N and 2N, sharing one pass over the factors.
KhintchineStability khintchine_stability(const PrecisionContext& ctx,
                                         const KhintchineOptions& options = {});

/// Product with an Euler-Maclaurin tail correction (integral, half term and
/// first derivative term of ln n / (ln 2 n (n+2))).  Requires the value to be
/// stable to 10^-target_digits between N and 2N, otherwise NoConvergence.
/// DomainError unless 1 <= target_digits <= 8.
ProductResult khintchine_accelerated(const PrecisionContext& ctx,
                                     int target_digits,
                                     const KhintchineOptions& options = {});

}  // namespace krivine

#endif  // KRIVINE_KHINTCHINE_HPP
