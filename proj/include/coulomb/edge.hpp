#pragma once

#include "coulomb/potential.hpp"

#include <cstdint>

namespace coulomb {

enum class ScalingRegime { PowerCase, GeneralCase };

/// Centering/normalization sequences making the rescaled largest modulus
/// converge to the standard Gumbel law.
struct ScalingConstants {
    ScalingRegime regime = ScalingRegime::PowerCase;
    std::uint64_t n = 0;
    double t0 = 0.0;   // edge location
    double C0 = 0.0;
    double c_n = 0.0;  // log n - 2 log log n - log 2pi
    double a_n = 0.0;
    double b_n = 0.0;
};

/// log n - 2 log log n - log(2 pi); the scaling sequences are only
/// meaningful where this is positive.
double c_n_sequence(std::uint64_t n);

/// Smallest n with c_n > 0.
std::uint64_t minimal_admissible_n();

/// Power-potential constants: t0 = (2/alpha)^(1/alpha),
/// a_n = 2 (alpha/2)^(1/alpha + 1/2) sqrt(n c_n),
/// b_n = t0 (1 + (1/2) sqrt((2/alpha) c_n / n)).
/// Throws SubcriticalN when c_n <= 0.
ScalingConstants power_scaling(double alpha, std::uint64_t n);

/// Strictly convex case: t0 solves t V'(t) = 2,
/// C0 = 1 / sqrt(|F''(t0)|^(3/2) t0 / 2) with F''(t0) = -2/t0^2 - V''(t0),
/// a_n = sqrt(n c_n) / C0, b_n = t0 + C0 sqrt(c_n / n).
/// Throws AssumptionViolated unless A1 and A2 hold.
ScalingConstants general_scaling(const Potential& p, std::uint64_t n);

/// Constants for a potential by its natural regime: power families get
/// power_scaling, everything else general_scaling.
ScalingConstants scaling_for(const Potential& p, std::uint64_t n);

double gumbel_cdf(double x);
double gumbel_quantile(double p);

/// a_n (sample_max - b_n).
double standardize_max(double sample_max, const ScalingConstants& sc);

/// Formal heavy-tail limit exp(-1/(t^2 - 1)) for t > 1. An approximation
/// to the exact finite product, not a proven limit law; compare against
/// exact_max_cdf rather than asserting closeness.
double heavytail_limit_cdf(double t);

} // namespace coulomb
