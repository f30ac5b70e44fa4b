#ifndef KRIVINE_CONSTANTS_HPP
#define KRIVINE_CONSTANTS_HPP

#include "krivine/big_real.hpp"
#include "krivine/precision.hpp"

namespace krivine {

/// pi at the working precision of `ctx`.
BigReal const_pi(const PrecisionContext& ctx);

/// sqrt(2).
BigReal const_sqrt2(const PrecisionContext& ctx);

/// L = ln(1 + sqrt 2), equivalently asinh(1).
BigReal const_L(const PrecisionContext& ctx);

/// Krivine's value pi / (2 ln(1 + sqrt 2)) for the real Grothendieck constant.
BigReal const_KG(const PrecisionContext& ctx);

// |a - b| <= 10^-digits * max(|a|, |b|, 1): the two values agree to `digits`
// significant digits.
bool agree_to_digits(const BigReal& a, const BigReal& b, int digits);

}  // namespace krivine

#endif  // KRIVINE_CONSTANTS_HPP
