#pragma once

#include "coulomb/potential.hpp"

#include <utility>

namespace coulomb {

/// Support radii of the equilibrium measure: r0 is the largest radius
/// below which V' vanishes (0 when V' > 0 everywhere), R0 the smallest
/// solution of R V'(R) = beta.
std::pair<double, double> support_radii(const Potential& p, double beta);

/// Radial profile of the equilibrium measure on the annulus [r0, R0]:
/// density (r V''(r) + V'(r)) / beta, cdf (r V'(r) - r0 V'(r0)) / beta.
///
/// Immutable after construction. Construction rejects potentials whose
/// density would turn negative inside [r0, R0] (multi-ring support).
class EquilibriumProfile {
public:
    EquilibriumProfile(Potential p, double beta);

    double beta() const { return beta_; }
    double r0() const { return r0_; }
    double R0() const { return R0_; }

    double density(double r) const;
    double cdf(double r) const;

    const Potential& potential() const { return pot_; }

private:
    Potential pot_;
    double beta_;
    double r0_;
    double R0_;
    double flux0_;  // r0 V'(r0)
};

} // namespace coulomb
