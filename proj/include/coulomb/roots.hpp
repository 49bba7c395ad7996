#pragma once

#include <functional>

namespace coulomb {

/// Bracketed scalar root finding, bisection with secant acceleration.
///
/// Requires f(lo) * f(hi) <= 0. Stops once the bracket width drops below
/// tol * max(1, |x|); hard cap of 200 iterations. Pure: identical inputs
/// give identical outputs.
///
/// Throws NoSignChange if the bracket does not straddle a root and
/// NonFinite if f evaluates to NaN/inf inside the bracket.
double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-12);

} // namespace coulomb
