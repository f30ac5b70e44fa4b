#include "krivine/big_real.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace krivine {

namespace {

mpfr_prec_t wider(const BigReal& a, const BigReal& b) {
  return std::max(a.precision().value, b.precision().value);
}

template <typename Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal r(x.precision());
  fn(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

Bits bits_for_digits(int decimal_digits) {
  // log2(10) = 3.3219...; a few extra bits absorb conversion rounding.
  return Bits{static_cast<mpfr_prec_t>(
      std::ceil(decimal_digits * 3.321928094887362) + 8)};
}

BigReal::BigReal(Bits prec) {
  mpfr_init2(v_, prec.value);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long value, Bits prec) {
  mpfr_init2(v_, prec.value);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigReal::BigReal(double value, Bits prec) {
  mpfr_init2(v_, prec.value);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal BigReal::from_string(std::string_view decimal, Bits prec) {
  BigReal r(prec);
  std::string s(decimal);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: " + s);
  }
  return r;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::with_precision(Bits prec) const {
  BigReal r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long BigReal::decimal_exponent() const {
  if (is_zero() || !is_finite()) return mpfr_get_emin();
  BigReal a(Bits{64});
  mpfr_abs(a.v_, v_, MPFR_RNDN);
  mpfr_log10(a.v_, a.v_, MPFR_RNDN);
  mpfr_floor(a.v_, a.v_);
  return mpfr_get_si(a.v_, MPFR_RNDN) + 1;
}

std::string BigReal::to_string(int significant) const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  if (is_zero()) return "0";
  if (significant < 1) significant = 1;

  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(significant), v_,
                   MPFR_RNDN),
      mpfr_free_str);
  std::string digits(raw.get());
  std::string out;
  if (digits.front() == '-') {
    out.push_back('-');
    digits.erase(0, 1);
  }
  const long e = static_cast<long>(exp10);
  const long n = static_cast<long>(digits.size());

  if (e > 0 && e <= n) {
    out.append(digits, 0, static_cast<size_t>(e));
    if (e < n) {
      out.push_back('.');
      out.append(digits, static_cast<size_t>(e), std::string::npos);
    }
  } else if (e <= 0 && e >= -4) {
    out.append("0.");
    out.append(static_cast<size_t>(-e), '0');
    out.append(digits);
  } else {
    out.push_back(digits.front());
    if (n > 1) {
      out.push_back('.');
      out.append(digits, 1, std::string::npos);
    }
    out.push_back('e');
    out.append(std::to_string(e - 1));
  }
  return out;
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  if (mpfr_get_prec(rhs.v_) > mpfr_get_prec(v_)) {
    mpfr_prec_round(v_, mpfr_get_prec(rhs.v_), MPFR_RNDN);
  }
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  if (mpfr_get_prec(rhs.v_) > mpfr_get_prec(v_)) {
    mpfr_prec_round(v_, mpfr_get_prec(rhs.v_), MPFR_RNDN);
  }
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  if (mpfr_get_prec(rhs.v_) > mpfr_get_prec(v_)) {
    mpfr_prec_round(v_, mpfr_get_prec(rhs.v_), MPFR_RNDN);
  }
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (mpfr_get_prec(rhs.v_) > mpfr_get_prec(v_)) {
    mpfr_prec_round(v_, mpfr_get_prec(rhs.v_), MPFR_RNDN);
  }
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator+=(long rhs) {
  mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(long rhs) {
  mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigReal operator-(const BigReal& x) { return unary(x, mpfr_neg); }

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(Bits{wider(a, b)});
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(Bits{wider(a, b)});
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(Bits{wider(a, b)});
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(Bits{wider(a, b)});
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal r(b.precision());
  mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal r(b.precision());
  mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

bool operator==(const BigReal& a, const BigReal& b) {
  return mpfr_equal_p(a.v_, b.v_) != 0;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool operator==(const BigReal& a, long b) {
  return !mpfr_nan_p(a.v_) && mpfr_cmp_si(a.v_, b) == 0;
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.v_, b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigReal pi(Bits prec) {
  BigReal r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigReal ln2(Bits prec) {
  BigReal r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal expm1(const BigReal& x) { return unary(x, mpfr_expm1); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal log1p(const BigReal& x) { return unary(x, mpfr_log1p); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal tan(const BigReal& x) { return unary(x, mpfr_tan); }
BigReal sinh(const BigReal& x) { return unary(x, mpfr_sinh); }
BigReal cosh(const BigReal& x) { return unary(x, mpfr_cosh); }
BigReal tanh(const BigReal& x) { return unary(x, mpfr_tanh); }
BigReal asinh(const BigReal& x) { return unary(x, mpfr_asinh); }
BigReal acosh(const BigReal& x) { return unary(x, mpfr_acosh); }
BigReal atanh(const BigReal& x) { return unary(x, mpfr_atanh); }
BigReal square(const BigReal& x) { return unary(x, mpfr_sqr); }

BigReal log_of(unsigned long n, Bits prec) {
  BigReal r(prec);
  mpfr_log_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

CompensatedSum::CompensatedSum(Bits prec)
    : sum_(prec), carry_(prec), scratch_(prec), error_(prec) {}

void CompensatedSum::add(const BigReal& term) {
  // t = s + x; c += (s - t) + x  or  (x - t) + s, whichever is exact.
  mpfr_add(scratch_.raw(), sum_.raw(), term.raw(), MPFR_RNDN);
  if (mpfr_cmpabs(sum_.raw(), term.raw()) >= 0) {
    mpfr_sub(error_.raw(), sum_.raw(), scratch_.raw(), MPFR_RNDN);
    mpfr_add(error_.raw(), error_.raw(), term.raw(), MPFR_RNDN);
  } else {
    mpfr_sub(error_.raw(), term.raw(), scratch_.raw(), MPFR_RNDN);
    mpfr_add(error_.raw(), error_.raw(), sum_.raw(), MPFR_RNDN);
  }
  mpfr_add(carry_.raw(), carry_.raw(), error_.raw(), MPFR_RNDN);
  mpfr_swap(sum_.raw(), scratch_.raw());
}

BigReal CompensatedSum::value() const { return sum_ + carry_; }

}  // namespace krivine
