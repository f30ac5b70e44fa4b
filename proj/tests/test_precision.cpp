#include <doctest.h>

#include "krivine/errors.hpp"
#include "krivine/precision.hpp"

using krivine::PrecisionContext;

TEST_SUITE("precision") {
  TEST_CASE("defaults") {
    const PrecisionContext ctx(20);
    CHECK(ctx.digits() == 20);
    CHECK(ctx.guard_digits() == 10);
    CHECK(ctx.working_digits() == 30);
    CHECK(ctx.bits().value == krivine::bits_for_digits(30).value);
    CHECK(ctx.tolerance() == ctx.ten_to_minus(20));
    CHECK(ctx.tolerance().precision().value == ctx.bits().value);
  }

  TEST_CASE("invalid settings are rejected") {
    CHECK_THROWS_AS(PrecisionContext(9), krivine::InvalidPrecision);
    CHECK_THROWS_AS(PrecisionContext(0), krivine::InvalidPrecision);
    CHECK_THROWS_AS(PrecisionContext(20, 9), krivine::InvalidPrecision);
    const PrecisionContext ok(10);
    CHECK_THROWS_AS(PrecisionContext(20, 10, ok.zero()),
                    krivine::InvalidPrecision);
    CHECK_THROWS_AS(PrecisionContext(20, 10, -ok.real(1)),
                    krivine::InvalidPrecision);
  }

  TEST_CASE("tolerance override") {
    const PrecisionContext base(30);
    const PrecisionContext loose(30, 10, base.ten_to_minus(6));
    CHECK(loose.tolerance() == base.ten_to_minus(6));
    const PrecisionContext tight = base.with_tolerance(base.ten_to_minus(35));
    CHECK(tight.tolerance() == base.ten_to_minus(35));
    CHECK(tight.bits().value == base.bits().value);
  }

  TEST_CASE("more digits means more bits") {
    CHECK(PrecisionContext(40).bits().value > PrecisionContext(20).bits().value);
    CHECK(PrecisionContext(20, 30).bits().value ==
          PrecisionContext(40).bits().value);
  }

  TEST_CASE("constructed values carry the working precision") {
    const PrecisionContext ctx(25);
    CHECK(ctx.real(7).precision().value == ctx.bits().value);
    CHECK(ctx.parse("0.1").precision().value == ctx.bits().value);
    CHECK(ctx.zero().is_zero());
  }
}
