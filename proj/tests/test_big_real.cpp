#include <doctest.h>

#include <stdexcept>

#include "krivine/big_real.hpp"

using krivine::BigReal;
using krivine::Bits;

TEST_SUITE("big_real") {
  TEST_CASE("bits_for_digits covers the requested decimal digits") {
    CHECK(krivine::bits_for_digits(10).value >= 34);
    CHECK(krivine::bits_for_digits(50).value >= 167);
    CHECK(krivine::bits_for_digits(100).value > krivine::bits_for_digits(50).value);
  }

  TEST_CASE("mixed precision takes the wider operand") {
    const BigReal narrow(1L, Bits{64});
    const BigReal wide(3L, Bits{256});
    CHECK((narrow / wide).precision().value == 256);
    CHECK((wide - narrow).precision().value == 256);
    CHECK((narrow * 3L).precision().value == 64);
  }

  TEST_CASE("arithmetic at 200 bits") {
    const Bits p{200};
    const BigReal third = BigReal(1L, p) / 3L;
    CHECK(third * 3L == 1L);
    CHECK(1L - third * 3L == 0L);
    CHECK(krivine::square(krivine::sqrt(BigReal(2L, p))) - 2L <
          krivine::ldexp(BigReal(1L, p), -195));
    BigReal x(5L, p);
    x += 2L;
    x *= BigReal(2L, p);
    x -= 4L;
    x /= 5L;
    CHECK(x == 2L);
    CHECK(-x == -2L);
    CHECK((10L / x) == 5L);
  }

  TEST_CASE("comparisons and sign") {
    const Bits p{128};
    const BigReal a(1.5, p);
    const BigReal b(2L, p);
    CHECK(a < b);
    CHECK(b > 1L);
    CHECK(a != b);
    CHECK(a.sign() > 0);
    CHECK((-a).sign() < 0);
    CHECK(BigReal(p).is_zero());
    CHECK(krivine::max(a, b) == b);
    CHECK(krivine::min(a, b) == a);
    CHECK(krivine::abs(-a) == a);
  }

  TEST_CASE("elementary functions agree with their defining relations") {
    const Bits p{256};
    const BigReal x = BigReal::from_string("0.3", p);
    const BigReal eps = krivine::ldexp(BigReal(1L, p), -250);
    CHECK(krivine::abs(krivine::exp(krivine::log(x)) - x) < eps);
    CHECK(krivine::abs(krivine::expm1(x) + 1L - krivine::exp(x)) < eps);
    CHECK(krivine::abs(krivine::log1p(x) - krivine::log(x + 1L)) < eps);
    CHECK(krivine::abs(krivine::sinh(krivine::asinh(x)) - x) < eps);
    CHECK(krivine::abs(krivine::tanh(krivine::atanh(x)) - x) < eps);
    CHECK(krivine::abs(krivine::cosh(krivine::acosh(x + 1L)) - (x + 1L)) < eps);
    CHECK(krivine::abs(krivine::square(krivine::sin(x)) +
                       krivine::square(krivine::cos(x)) - 1L) < eps);
    CHECK(krivine::abs(krivine::tan(x) * krivine::cos(x) - krivine::sin(x)) <
          eps);
    CHECK(krivine::abs(krivine::log_of(8, p) - 3L * krivine::ln2(p)) < eps);
    CHECK(krivine::pow(BigReal(2L, p), -3) == BigReal(0.125, p));
  }

  TEST_CASE("to_string keeps exactly the requested significant digits") {
    const Bits p{200};
    CHECK(BigReal(p).to_string(5) == "0");
    CHECK(krivine::pi(p).to_string(10) == "3.141592654");
    CHECK(BigReal(1L, p).to_string(4) == "1.000");
    CHECK((BigReal(1L, p) / 8L).to_string(3) == "0.125");
    CHECK(BigReal::from_string("-0.00012345", p).to_string(3) == "-0.000123");
    CHECK(BigReal::from_string("1.5e-45", p).to_string(3) == "1.50e-45");
    CHECK(BigReal::from_string("123456", p).to_string(3) == "1.23e5");
    CHECK(BigReal::from_string("123456", p).to_string(6) == "123456");
  }

  TEST_CASE("decimal_exponent brackets the magnitude") {
    const Bits p{128};
    CHECK(BigReal(1L, p).decimal_exponent() == 1);
    CHECK(BigReal(999L, p).decimal_exponent() == 3);
    CHECK(BigReal::from_string("0.05", p).decimal_exponent() == -1);
  }

  TEST_CASE("from_string rejects non-numbers") {
    CHECK_THROWS_AS(BigReal::from_string("pi", Bits{64}),
                    std::invalid_argument);
  }

  TEST_CASE("moves and copies keep value and precision") {
    const Bits p{300};
    BigReal a = krivine::pi(p);
    BigReal b = a;
    BigReal c = std::move(a);
    CHECK(b == c);
    CHECK(c.precision().value == 300);
    a = c;
    CHECK(a == b);
    CHECK(a.with_precision(Bits{64}).precision().value == 64);
  }

  TEST_CASE("compensated sum recovers what plain summation loses") {
    const Bits p{64};
    krivine::CompensatedSum sum(p);
    BigReal plain(p);
    const BigReal big = krivine::ldexp(BigReal(1L, p), 70);
    const BigReal tiny(1L, p);
    sum.add(big);
    plain += big;
    for (int i = 0; i < 1000; ++i) {
      sum.add(tiny);
      plain += tiny;
    }
    sum.add(-big);
    plain -= big;
    CHECK(plain == 0L);
    CHECK(sum.value() == 1000L);
  }
}
