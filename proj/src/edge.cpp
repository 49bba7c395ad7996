#include "coulomb/edge.hpp"

#include "coulomb/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace coulomb {

double c_n_sequence(std::uint64_t n) {
    if (n < 3) throw ParameterError("c_n_sequence: n must be >= 3 (log log n)");
    const double ln = std::log(static_cast<double>(n));
    return ln - 2.0 * std::log(ln) - std::log(2.0 * std::numbers::pi);
}

std::uint64_t minimal_admissible_n() {
    static const std::uint64_t cached = [] {
        std::uint64_t n = 3;
        while (c_n_sequence(n) <= 0.0) ++n;
        return n;
    }();
    return cached;
}

namespace {

double require_supercritical(std::uint64_t n) {
    const double cn = n >= 3 ? c_n_sequence(n) : -1.0;
    if (!(cn > 0.0)) throw SubcriticalN(n, minimal_admissible_n());
    return cn;
}

} // namespace

ScalingConstants power_scaling(double alpha, std::uint64_t n) {
    if (!(alpha >= 1.0)) throw ParameterError("power_scaling: alpha must be >= 1");
    const double cn = require_supercritical(n);
    const double nd = static_cast<double>(n);

    ScalingConstants sc;
    sc.regime = ScalingRegime::PowerCase;
    sc.n = n;
    sc.c_n = cn;
    sc.t0 = std::pow(2.0 / alpha, 1.0 / alpha);
    sc.C0 = sc.t0 / std::sqrt(2.0 * alpha);
    sc.a_n = 2.0 * std::pow(alpha / 2.0, 1.0 / alpha + 0.5) * std::sqrt(nd * cn);
    sc.b_n = sc.t0 * (1.0 + 0.5 * std::sqrt((2.0 / alpha) * (cn / nd)));
    return sc;
}

ScalingConstants general_scaling(const Potential& p, std::uint64_t n) {
    const ValidationReport rep = validate(p, 2.0);
    if (!rep.a1_ok || !rep.a2_ok) {
        std::string what = "general_scaling: assumptions violated:";
        if (!rep.a1_ok) what += " A1 (no convexity floor)";
        if (!rep.a2_ok) what += " A2 (t V'(t) = 2 - x not solvable)";
        throw AssumptionViolated(what);
    }
    const double cn = require_supercritical(n);
    const double nd = static_cast<double>(n);

    ScalingConstants sc;
    sc.regime = ScalingRegime::GeneralCase;
    sc.n = n;
    sc.c_n = cn;
    sc.t0 = solve_t_x(p, 0.0);
    const double curvature = -2.0 / (sc.t0 * sc.t0) - p.d2(sc.t0);
    sc.C0 = 1.0 / std::sqrt(std::pow(std::abs(curvature), 1.5) * sc.t0 / 2.0);
    sc.a_n = std::sqrt(nd * cn) / sc.C0;
    sc.b_n = sc.t0 + sc.C0 * std::sqrt(cn / nd);
    return sc;
}

ScalingConstants scaling_for(const Potential& p, std::uint64_t n) {
    if (p.family() == PotentialFamily::Power) return power_scaling(p.power_alpha(), n);
    return general_scaling(p, n);
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("gumbel_quantile: p must lie in (0, 1)");
    return -std::log(-std::log(p));
}

double standardize_max(double sample_max, const ScalingConstants& sc) {
    return sc.a_n * (sample_max - sc.b_n);
}

double heavytail_limit_cdf(double t) {
    if (!(t > 1.0)) throw DomainError("heavytail_limit_cdf: t must exceed 1");
    return std::exp(-1.0 / (t * t - 1.0));
}

} // namespace coulomb
