#include "krivine/alternating.hpp"

#include <algorithm>
#include <cmath>

#include "krivine/errors.hpp"

namespace krivine {

AcceleratedSum alternating_sum(const std::function<BigReal(long)>& term,
                               const BigReal& relative_target) {
  const Bits prec = relative_target.precision();
  if (relative_target.sign() <= 0) {
    throw DomainError("alternating_sum: target must be positive");
  }

  // 2 / 5.828^n < target  =>  n > ln(2 / target) / ln(3 + sqrt 8).
  const double log_ratio = log(BigReal(2L, prec) / relative_target).to_double();
  const long n = std::max(1L, static_cast<long>(std::ceil(
                                  log_ratio / 1.7627471740390860504652)));

  const BigReal root = 3L + sqrt(BigReal(8L, prec));
  BigReal d = pow(root, n);
  d = ldexp(d + 1L / d, -1);

  BigReal b(-1L, prec);
  BigReal c = -d;
  BigReal s(prec);
  BigReal first(prec);
  for (long k = 0; k < n; ++k) {
    BigReal a = term(k);
    if (k == 0) first = abs(a);
    c = b - c;
    s += c * a;
    // b <- (k + n)(k - n) b / ((k + 1/2)(k + 1)), kept in integers.
    b *= (k + n) * (k - n) * 2;
    b /= (2 * k + 1) * (k + 1);
  }
  return AcceleratedSum{s / d, first / d, n};
}

}  // namespace krivine
