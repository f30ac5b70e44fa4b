#ifndef KRIVINE_ALTERNATING_HPP
#define KRIVINE_ALTERNATING_HPP

#include <functional>

#include "krivine/big_real.hpp"

namespace krivine {

struct AcceleratedSum {
  BigReal value;
  // |sum - value| <= error_bound whenever the terms form a moment sequence.
  BigReal error_bound;
  long terms;
};

// sum_{k>=0} (-1)^k a_k by the Cohen-Rodriguez Villegas-Zagier transform.
//
// When a_k = integral of t^k against a positive measure on [0, 1] (true for
// every alternating tail in this library) the error after n terms is at most
// a_0 / T_n(3) < 2 a_0 / 5.828^n.  The number of terms is chosen so that this
// bound is below relative_target * a_0.
AcceleratedSum alternating_sum(const std::function<BigReal(long)>& term,
                               const BigReal& relative_target);

}  // namespace krivine

#endif  // KRIVINE_ALTERNATING_HPP
