#include "coulomb/roots.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>

namespace coulomb {

namespace {

double eval_checked(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw NonFinite("find_root_bracketed: f non-finite at x=" + std::to_string(x));
    return y;
}

} // namespace

double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                           double tol) {
    if (!(tol > 0.0)) throw ParameterError("find_root_bracketed: tol must be positive");
    if (!(lo < hi)) throw ParameterError("find_root_bracketed: need lo < hi");

    double a = lo, b = hi;
    double fa = eval_checked(f, a);
    double fb = eval_checked(f, b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw NoSignChange("find_root_bracketed: f(lo) and f(hi) have the same sign");

    double width_prev = std::abs(b - a);
    for (int iter = 0; iter < 200; ++iter) {
        const double width = std::abs(b - a);
        const double best = std::abs(fa) < std::abs(fb) ? a : b;
        if (width <= tol * std::max(1.0, std::abs(best))) return best;

        // secant candidate; bisect when it leaves the bracket or when the
        // bracket failed to shrink enough last round (false-position stall)
        const double mid = 0.5 * (a + b);
        double x = mid;
        const double denom = fb - fa;
        if (denom != 0.0 && width <= 0.75 * width_prev) {
            const double s = b - fb * (b - a) / denom;
            if (s > std::min(a, b) && s < std::max(a, b)) x = s;
        }
        if (x == a || x == b) x = mid;
        width_prev = width;

        const double fx = eval_checked(f, x);
        if (fx == 0.0) return x;
        if (fa * fx < 0.0) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    return std::abs(fa) < std::abs(fb) ? a : b;
}

} // namespace coulomb
