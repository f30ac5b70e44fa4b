#ifndef KRIVINE_PRECISION_HPP
#define KRIVINE_PRECISION_HPP

#include <optional>

#include "krivine/big_real.hpp"

namespace krivine {

// Working precision and acceptance threshold for a computation.
//
// Every intermediate value is carried at `digits + guard_digits` decimal
// digits; results are reported at `digits`.  The tolerance defaults to
// 10^-digits and is what identity checks compare residuals against.
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 10;
  static constexpr int kMinGuardDigits = 10;
  static constexpr int kDefaultGuardDigits = 10;

  // Throws InvalidPrecision when digits < 10, guard_digits < 10 or the
  // tolerance override is not positive.
  explicit PrecisionContext(int digits, int guard_digits = kDefaultGuardDigits,
                            std::optional<BigReal> tolerance = std::nullopt);

  int digits() const { return digits_; }
  int guard_digits() const { return guard_digits_; }
  int working_digits() const { return digits_ + guard_digits_; }
  Bits bits() const { return bits_; }
  const BigReal& tolerance() const { return tolerance_; }

  // Zero / integer / parsed constants at working precision.
  BigReal zero() const { return BigReal(bits_); }
  BigReal real(long v) const { return BigReal(v, bits_); }
  BigReal parse(const char* decimal) const {
    return BigReal::from_string(decimal, bits_);
  }
  // 10^-e at working precision.
  BigReal ten_to_minus(int e) const;

  // Same working precision, different tolerance.
  PrecisionContext with_tolerance(const BigReal& tolerance) const;

 private:
  int digits_;
  int guard_digits_;
  Bits bits_;
  BigReal tolerance_;
};

}  // namespace krivine

#endif  // KRIVINE_PRECISION_HPP
