#include "krivine/precision.hpp"

#include <string>

#include "krivine/errors.hpp"

namespace krivine {

namespace {

BigReal default_tolerance(int digits, Bits bits) {
  BigReal t(10L, bits);
  return pow(t, -static_cast<long>(digits));
}

}  // namespace

PrecisionContext::PrecisionContext(int digits, int guard_digits,
                                   std::optional<BigReal> tolerance)
    : digits_(digits),
      guard_digits_(guard_digits),
      bits_(bits_for_digits(digits + guard_digits)),
      tolerance_(bits_) {
  if (digits < kMinDigits) {
    throw InvalidPrecision("digits must be >= " + std::to_string(kMinDigits) +
                           ", got " + std::to_string(digits));
  }
  if (guard_digits < kMinGuardDigits) {
    throw InvalidPrecision("guard_digits must be >= " +
                           std::to_string(kMinGuardDigits) + ", got " +
                           std::to_string(guard_digits));
  }
  if (tolerance) {
    if (!tolerance->is_finite() || tolerance->sign() <= 0) {
      throw InvalidPrecision("tolerance must be positive");
    }
    tolerance_ = tolerance->with_precision(bits_);
  } else {
    tolerance_ = default_tolerance(digits, bits_);
  }
}

BigReal PrecisionContext::ten_to_minus(int e) const {
  return default_tolerance(e, bits_);
}

PrecisionContext PrecisionContext::with_tolerance(
    const BigReal& tolerance) const {
  return PrecisionContext(digits_, guard_digits_, tolerance);
}

}  // namespace krivine
