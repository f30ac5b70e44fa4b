#include <doctest.h>

#include <vector>

#include "krivine/errors.hpp"
#include "krivine/khintchine.hpp"
#include "oracle.hpp"

using krivine::BigReal;
using krivine::PrecisionContext;
using testing::big;
using testing::near;

TEST_SUITE("khintchine") {
  TEST_CASE("frozen partial product reproduces") {
    const PrecisionContext ctx(45);
    oracle::Real p = 1;
    for (int n = 1; n <= 10; ++n) {
      p *= pow(1 + oracle::Real(1) / (n * (n + 2)),
               log(oracle::Real(n)) / log(oracle::Real(2)));
    }
    CHECK(near(big(p, ctx), big(frozen::kKhintchine10, ctx), 44));
  }

  TEST_CASE("small partial products") {
    const PrecisionContext ctx(20);
    const auto one = krivine::khintchine_partial(1, ctx);
    CHECK(one.value == 1L);
    CHECK_FALSE(one.accelerated);
    CHECK(near(krivine::khintchine_partial(10, ctx).value,
               big(frozen::kKhintchine10, ctx), 17));
  }

  TEST_CASE("domain") {
    const PrecisionContext ctx(20);
    CHECK_THROWS_AS(krivine::khintchine_partial(0, ctx), krivine::DomainError);
    CHECK_THROWS_AS(krivine::khintchine_tail_bound(0, ctx),
                    krivine::DomainError);
    const long decreasing[] = {10, 5};
    CHECK_THROWS_AS(krivine::khintchine_partials(decreasing, ctx),
                    krivine::DomainError);
    CHECK_THROWS_AS(krivine::khintchine_accelerated(ctx, 0),
                    krivine::DomainError);
    CHECK_THROWS_AS(krivine::khintchine_accelerated(ctx, 9),
                    krivine::DomainError);
    krivine::KhintchineOptions tiny;
    tiny.base_terms = 1;
    CHECK_THROWS_AS(krivine::khintchine_stability(ctx, tiny),
                    krivine::DomainError);
  }

  TEST_CASE("partial products increase and respect the tail bound") {
    const PrecisionContext ctx(20);
    const std::vector<long> points{1, 2, 3, 10, 100, 1000, 10000, 100000};
    const auto partials = krivine::khintchine_partials(points, ctx);
    const BigReal limit = big(frozen::kKhintchine, ctx);
    for (size_t i = 0; i < partials.size(); ++i) {
      CHECK(partials[i].terms_used == points[i]);
      CHECK(partials[i].value < limit);
      if (i > 0 && points[i] >= 3) {
        CHECK(partials[i].value > partials[i - 1].value);
      }
      // The omitted log-sum lies below its integral bound.
      const BigReal omitted = krivine::log(limit / partials[i].value);
      CHECK(omitted <= partials[i].tail_estimate);
    }
  }

  TEST_CASE("checkpoints agree with single evaluations") {
    const PrecisionContext ctx(20);
    const long points[] = {5, 50};
    const auto both = krivine::khintchine_partials(points, ctx);
    CHECK(both[1].value == krivine::khintchine_partial(50, ctx).value);
  }

  TEST_CASE("accelerated value") {
    const PrecisionContext ctx(20);
    const auto s = krivine::khintchine_stability(ctx);
    CHECK(s.at_base.accelerated);
    CHECK(s.at_base.terms_used == 1'000'000);
    CHECK(s.at_double.terms_used == 2'000'000);
    CHECK(krivine::abs(s.at_double.value - s.at_base.value) <
          ctx.ten_to_minus(6));
    CHECK(near(s.at_double.value, big(frozen::kKhintchine, ctx), 15));
    const auto r = krivine::khintchine_accelerated(ctx, 8);
    CHECK(r.value == s.at_double.value);
  }

  TEST_CASE("too few factors for the requested stability") {
    const PrecisionContext ctx(20);
    krivine::KhintchineOptions options;
    options.base_terms = 2;
    CHECK_THROWS_AS(krivine::khintchine_accelerated(ctx, 8, options),
                    krivine::NoConvergence);
  }
}
