#ifndef KRIVINE_BIG_REAL_HPP
#define KRIVINE_BIG_REAL_HPP

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace krivine {

// Binary precision of a value, in bits.
struct Bits {
  mpfr_prec_t value;
};

Bits bits_for_digits(int decimal_digits);

// Arbitrary-precision real backed by an MPFR value.  Every value carries its
// own precision; binary operations produce a result at the larger of the two
// operand precisions.  All rounding is round-to-nearest.
class BigReal {
 public:
  explicit BigReal(Bits prec);
  BigReal(long value, Bits prec);
  BigReal(double value, Bits prec);
  static BigReal from_string(std::string_view decimal, Bits prec);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  Bits precision() const { return Bits{mpfr_get_prec(v_)}; }
  // Returns a copy rounded to `prec`.
  BigReal with_precision(Bits prec) const;

  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Decimal exponent e such that 10^(e-1) <= |x| < 10^e.  Zero maps to the
  // lowest representable exponent.
  long decimal_exponent() const;

  // Decimal rendering with exactly `significant` significant digits.  Fixed
  // notation for moderate magnitudes, scientific otherwise.
  std::string to_string(int significant) const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator-(const BigReal& x);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator+(long a, BigReal b) { return b += a; }
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a,
                                           const BigReal& b);
  friend bool operator==(const BigReal& a, long b);
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

  // Raw access for the elementary-function layer.
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

BigReal pi(Bits prec);
BigReal ln2(Bits prec);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal log_of(unsigned long n, Bits prec);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal asinh(const BigReal& x);
BigReal acosh(const BigReal& x);
BigReal atanh(const BigReal& x);
BigReal pow(const BigReal& x, long n);
BigReal ldexp(const BigReal& x, long e);
BigReal square(const BigReal& x);
BigReal max(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);

// Neumaier's variant of Kahan summation, carried out at the precision of the
// first operand.  Accumulation order is the call order.
class CompensatedSum {
 public:
  explicit CompensatedSum(Bits prec);
  void add(const BigReal& term);
  BigReal value() const;

 private:
  BigReal sum_;
  BigReal carry_;
  BigReal scratch_;
  BigReal error_;
};

}  // namespace krivine

#endif  // KRIVINE_BIG_REAL_HPP
