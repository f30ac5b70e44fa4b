#include <doctest.h>

#include "krivine/constants.hpp"
#include "oracle.hpp"

using krivine::PrecisionContext;
using testing::big;
using testing::near;

TEST_SUITE("constants") {
  TEST_CASE("frozen oracle values reproduce") {
    const PrecisionContext ctx(45);
    CHECK(near(big(oracle::pi(), ctx), big(frozen::kPi, ctx), 44));
    CHECK(near(big(oracle::L(), ctx), big(frozen::kL, ctx), 44));
  }

  TEST_CASE("pi and L at 40 digits") {
    const PrecisionContext ctx(40);
    CHECK(near(krivine::const_pi(ctx), big(frozen::kPi, ctx), 40));
    CHECK(near(krivine::const_L(ctx), big(frozen::kL, ctx), 40));
    CHECK(near(krivine::const_sqrt2(ctx), krivine::sqrt(ctx.real(2)), 40));
  }

  TEST_CASE("L = ln(1 + sqrt 2)") {
    const PrecisionContext ctx(30);
    const auto direct = krivine::log(1L + krivine::sqrt(ctx.real(2)));
    CHECK(near(krivine::const_L(ctx), direct, 30));
  }

  TEST_CASE("2 L K_G = pi") {
    for (int digits : {10, 20, 40, 80}) {
      const PrecisionContext ctx(digits);
      const auto lhs = 2 * krivine::const_L(ctx) * krivine::const_KG(ctx);
      CHECK(krivine::abs(lhs - krivine::const_pi(ctx)) < ctx.tolerance());
    }
  }

  TEST_CASE("K_G leading digits") {
    const PrecisionContext ctx(15);
    CHECK(krivine::const_KG(ctx).to_string(12) == "1.78221397819");
  }

  TEST_CASE("precision monotonicity") {
    const PrecisionContext low(20);
    const PrecisionContext high(60);
    CHECK(near(krivine::const_KG(high).with_precision(low.bits()),
               krivine::const_KG(low), 20));
  }

  TEST_CASE("agree_to_digits") {
    const PrecisionContext ctx(20);
    const auto a = ctx.parse("1.0000001");
    const auto b = ctx.parse("1.0000002");
    CHECK(krivine::agree_to_digits(a, b, 6));
    CHECK_FALSE(krivine::agree_to_digits(a, b, 8));
    CHECK(krivine::agree_to_digits(ctx.parse("1e-30"), ctx.zero(), 25));
  }
}
