#include "krivine/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krivine/errors.hpp"

namespace krivine {

namespace {

// One abscissa pair +-y(t) of the tanh-sinh rule on [-1, 1].  `complement`
// is 1 - |y|, `weight` is y'(t) (the step h is applied by the caller).
struct Node {
  BigReal complement;
  BigReal weight;
};

struct Level {
  // Level 0 carries the centre node separately.
  std::vector<Node> nodes;
  std::optional<BigReal> centre_weight;
};

// Nodes for step 2^-level at a given precision.  Built once, shared
// read-only afterwards.
class NodeCache {
 public:
  static NodeCache& instance() {
    static NodeCache cache;
    return cache;
  }

  std::shared_ptr<const Level> get(Bits prec, int level) {
    const auto key = std::make_pair(prec.value, level);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = levels_.find(key);
    if (it != levels_.end()) return it->second;
    auto built = std::make_shared<const Level>(build(prec, level));
    levels_.emplace(key, built);
    return built;
  }

 private:
  static Level build(Bits prec, int level) {
    Level out;
    const BigReal half_pi = ldexp(pi(prec), -1);
    // Weights decay like exp(-pi/2 e^t); stop well below the working epsilon.
    const BigReal cutoff = ldexp(BigReal(1L, prec), -2 * prec.value - 64);
    const BigReal step = ldexp(BigReal(1L, prec), -level);

    if (level == 0) out.centre_weight = half_pi;

    // Level 0 uses every integer t; deeper levels only the odd multiples.
    const long stride = level == 0 ? 1 : 2;
    for (long k = 1;; k += stride) {
      const BigReal t = step * k;
      const BigReal s = half_pi * sinh(t);
      const BigReal cs = cosh(s);
      BigReal weight = half_pi * cosh(t) / square(cs);
      if (weight < cutoff) break;
      BigReal complement = 1L / (exp(s) * cs);
      out.nodes.push_back(Node{std::move(complement), std::move(weight)});
    }
    return out;
  }

  std::mutex mutex_;
  std::map<std::pair<mpfr_prec_t, int>, std::shared_ptr<const Level>> levels_;
};

BigReal checked(BigReal v, const BigReal& x) {
  if (!v.is_finite()) {
    throw NonFiniteEvaluation("integrand is not finite at x = " +
                              x.to_string(20));
  }
  return v;
}

}  // namespace

QuadratureResult integrate(const EndpointIntegrand& f, const BigReal& a,
                           const BigReal& b, const PrecisionContext& ctx,
                           const QuadratureOptions& options) {
  if (!(a < b)) throw DomainError("integrate: requires a < b");
  const Bits prec = ctx.bits();
  const BigReal lo = a.with_precision(prec);
  const BigReal hi = b.with_precision(prec);
  const BigReal width = hi - lo;
  const BigReal half = ldexp(width, -1);

  long evaluations = 0;
  auto eval = [&](const BigReal& from_left, const BigReal& from_right,
                  bool left) {
    BigReal x = left ? lo + from_left : hi - from_right;
    ++evaluations;
    return checked(f(x, from_left, from_right), x);
  };

  BigReal estimate(prec);
  BigReal previous(prec);
  BigReal error(prec);
  for (int level = 0; level <= options.max_level; ++level) {
    const auto nodes = NodeCache::instance().get(prec, level);
    CompensatedSum sum(prec);
    if (nodes->centre_weight) {
      sum.add(*nodes->centre_weight * eval(half, half, true));
    }
    for (const Node& node : nodes->nodes) {
      const BigReal d = half * node.complement;
      const BigReal rest = width - d;
      sum.add(node.weight * (eval(d, rest, true) + eval(rest, d, false)));
    }
    const BigReal step = ldexp(BigReal(1L, prec), -level);
    BigReal contribution = sum.value() * step * half;
    previous = estimate;
    estimate = level == 0 ? contribution : ldexp(estimate, -1) + contribution;

    if (level == 0) continue;
    error = abs(estimate - previous) * options.safety_factor;
    if (level >= options.min_level && error < ctx.tolerance()) {
      return QuadratureResult{estimate, error, evaluations, level};
    }
  }
  throw NoConvergence("integrate: error estimate " + error.to_string(3) +
                      " above tolerance after " +
                      std::to_string(options.max_level) + " levels");
}

QuadratureResult integrate(const Integrand& f, const BigReal& a,
                           const BigReal& b, const PrecisionContext& ctx,
                           const QuadratureOptions& options) {
  const BigReal lo = a.with_precision(ctx.bits());
  const BigReal hi = b.with_precision(ctx.bits());
  // Nodes closer to an endpoint than its ulp collapse onto it; their weight
  // is far below epsilon, so they contribute nothing.
  return integrate(
      [&](const BigReal& x, const BigReal&, const BigReal&) {
        if (x == lo || x == hi) return BigReal(ctx.bits());
        return f(x);
      },
      a, b, ctx, options);
}

QuadratureResult integrate_to_infinity(const Integrand& f, const BigReal& a,
                                       const PrecisionContext& ctx,
                                       const QuadratureOptions& options) {
  const Bits prec = ctx.bits();
  const BigReal origin = a.with_precision(prec);
  auto mapped = [&](const BigReal&, const BigReal& u,
                    const BigReal& one_minus_u) {
    // x = a - ln(1 - u), dx = du / (1 - u).
    BigReal shift = u < BigReal(0.5, prec) ? -log1p(-u) : -log(one_minus_u);
    return f(origin + shift) / one_minus_u;
  };
  return integrate(mapped, BigReal(prec), BigReal(1L, prec), ctx, options);
}

}  // namespace krivine
