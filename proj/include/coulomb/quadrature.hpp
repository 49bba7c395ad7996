#pragma once

#include <cstdint>
#include <functional>

namespace coulomb {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::uint64_t evaluations = 0;
};

/// Globally adaptive Simpson quadrature on a finite interval.
///
/// tol is relative: refinement of the worst panel continues until the
/// summed Richardson error estimate drops below tol * max(|value|, eps).
/// Throws MaxDepthExceeded once the refinement budget is exhausted and
/// NonFinite if the integrand misbehaves.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double tol = 1e-10);

/// Truncation point for an upper limit of +infinity: doubling search from
/// `start` until f falls below 1e-300 * peak_scale (decaying integrands).
double truncate_upper(const std::function<double(double)>& f, double start, double peak_scale);

} // namespace coulomb
