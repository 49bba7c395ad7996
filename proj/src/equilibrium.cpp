#include "coulomb/equilibrium.hpp"

#include "coulomb/errors.hpp"
#include "coulomb/roots.hpp"

#include <algorithm>
#include <cmath>

namespace coulomb {

std::pair<double, double> support_radii(const Potential& p, double beta) {
    if (!(beta > 0.0)) throw ParameterError("support_radii: beta must be positive");

    const double lo = std::max(p.domain_min(), 1e-9);

    // expand until r V'(r) exceeds beta
    auto flux = [&](double r) { return r * p.d1(r); };
    double hi = std::max(1.0, 2.0 * lo);
    while (flux(hi) < beta) {
        hi *= 2.0;
        if (hi > 1e6)
            throw NoSolution("support_radii: r V'(r) never reaches beta=" + std::to_string(beta) +
                             " below 1e6");
    }

    // r0: last sign change of V' on a geometric grid of (lo, hi]
    double r0 = p.domain_min();
    {
        const int cells = 4096;
        const double ratio = std::pow(hi / lo, 1.0 / cells);
        double prev_r = lo;
        double prev_v = p.d1(lo);
        double bracket_lo = -1.0, bracket_hi = -1.0;
        double r = lo;
        for (int i = 1; i <= cells; ++i) {
            r *= ratio;
            const double v = p.d1(r);
            if (prev_v <= 0.0 && v > 0.0) {
                bracket_lo = prev_r;
                bracket_hi = r;
            }
            prev_r = r;
            prev_v = v;
        }
        if (bracket_hi > 0.0) {
            if (p.d1(bracket_lo) == 0.0) {
                r0 = bracket_lo;
            } else {
                r0 = find_root_bracketed([&](double t) { return p.d1(t); }, bracket_lo,
                                         bracket_hi, 1e-12);
            }
        }
    }

    // R0: first crossing of r V'(r) = beta beyond r0
    double a = std::max(r0, lo);
    if (flux(a) >= beta)
        throw NoSolution("support_radii: r V'(r) does not cross beta from below "
                         "(degenerate or formal potential)");
    {
        const int cells = 4096;
        const double ratio = std::pow(hi / a, 1.0 / cells);
        double prev = a;
        double r = a;
        for (int i = 1; i <= cells; ++i) {
            r *= ratio;
            if (flux(r) >= beta) {
                a = prev;
                hi = r;
                break;
            }
            prev = r;
        }
    }
    const double R0 =
        find_root_bracketed([&](double r) { return flux(r) - beta; }, a, hi, 1e-12);
    return {r0, R0};
}

EquilibriumProfile::EquilibriumProfile(Potential p, double beta) : pot_(std::move(p)), beta_(beta) {
    const ValidationReport rep = validate(pot_, beta);
    if (!rep.growth_ok)
        throw ValidationError("equilibrium: potential fails the growth condition");
    std::tie(r0_, R0_) = support_radii(pot_, beta);
    flux0_ = r0_ > 0.0 ? r0_ * pot_.d1(r0_) : 0.0;

    // single-annulus check: the density must stay nonnegative inside
    const int cells = 2048;
    for (int i = 0; i <= cells; ++i) {
        const double r = r0_ + (R0_ - r0_) * static_cast<double>(i) / cells;
        const double rr = std::min(std::max(r, std::max(r0_, pot_.domain_min() + 1e-12)), R0_);
        if (density(rr) < -1e-9)
            throw ValidationError(
                "equilibrium: density negative inside [r0, R0]; the support is not a "
                "single annulus and this profile formula does not apply");
    }
}

double EquilibriumProfile::density(double r) const {
    if (r < r0_ || r > R0_) return 0.0;
    // r = 0 would hit 0 * inf for families with diverging V''; the density
    // limit there is finite, so evaluate just inside instead
    const double rr = std::max(r, std::max(pot_.domain_min(), 1e-12));
    return (rr * pot_.d2(rr) + pot_.d1(rr)) / beta_;
}

double EquilibriumProfile::cdf(double r) const {
    if (r <= r0_) return 0.0;
    if (r >= R0_) return 1.0;
    const double v = (r * pot_.d1(r) - flux0_) / beta_;
    return std::clamp(v, 0.0, 1.0);
}

} // namespace coulomb
