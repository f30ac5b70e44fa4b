#include "krivine/constants.hpp"

#include <algorithm>

namespace krivine {

BigReal const_pi(const PrecisionContext& ctx) { return pi(ctx.bits()); }

BigReal const_sqrt2(const PrecisionContext& ctx) {
  return sqrt(ctx.real(2));
}

BigReal const_L(const PrecisionContext& ctx) {
  // asinh(1) = ln(1 + sqrt 2) without forming 1 + sqrt 2 explicitly.
  return asinh(ctx.real(1));
}

BigReal const_KG(const PrecisionContext& ctx) {
  return const_pi(ctx) / (2 * const_L(ctx));
}

bool agree_to_digits(const BigReal& a, const BigReal& b, int digits) {
  const Bits prec{std::max(a.precision().value, b.precision().value)};
  BigReal scale = max(max(abs(a), abs(b)), BigReal(1L, prec));
  BigReal bound = pow(BigReal(10L, prec), -static_cast<long>(digits)) * scale;
  return abs(a - b) <= bound;
}

}  // namespace krivine
