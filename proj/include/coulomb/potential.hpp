#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coulomb {

enum class PotentialFamily { Power, LogConfining, HardWallPareto, Quartic, Custom };

/// How a layer radius can be drawn exactly for this potential.
enum class ExactPath { GammaTransform, BetaTransform, InverseCdfClosedForm, None };

struct PolyTerm {
    double coeff;
    double power;
};

/// Radial confining potential V(r) with analytic derivatives.
///
/// Immutable after construction; safe to share across threads.
class Potential {
public:
    /// V(t) = t^alpha, alpha >= 1.
    static Potential power(double alpha);
    /// V(t) = c log(1 + t^2), c > 1.
    static Potential log_confining(double c);
    /// Formal hard-wall potential: +inf on (0,1), 2(1+1/n) log t on [1,inf).
    /// Carries its n explicitly; closed-form sampling only.
    static Potential hard_wall_pareto(std::uint64_t n);
    /// V(t) = t^4/4 + t^2/2 (strictly convex, V'' >= 1).
    static Potential quartic();
    /// V(t) = sum_i c_i t^{p_i} + d log(1 + t^2), analytic derivatives.
    static Potential custom(std::vector<PolyTerm> poly, double log_coeff = 0.0);

    double eval(double r) const;
    double d1(double r) const;
    double d2(double r) const;
    double d3(double r) const;

    PotentialFamily family() const { return family_; }
    ExactPath exact_path() const { return path_; }

    /// Certified lower bound a with V'' >= a (assumption A1), when known.
    /// For Custom this is a grid-scanned heuristic floor times 0.99.
    std::optional<double> convexity_floor() const { return floor_; }

    /// True when the floor came from a grid scan rather than analysis;
    /// samplers must then verify the envelope at runtime.
    bool floor_is_heuristic() const { return floor_heuristic_; }

    /// Smallest admissible radius (1 for the hard wall, else 0).
    double domain_min() const;

    double power_alpha() const;        // Power only
    double log_confining_c() const;    // LogConfining only
    std::uint64_t hard_wall_n() const; // HardWallPareto only

    /// Canonical CLI spec string, e.g. "power:alpha=2".
    std::string spec_string() const;

private:
    Potential() = default;

    PotentialFamily family_ = PotentialFamily::Power;
    ExactPath path_ = ExactPath::None;
    double alpha_ = 2.0;
    double c_ = 0.0;
    std::uint64_t hard_wall_n_ = 0;
    std::vector<PolyTerm> poly_;
    double log_coeff_ = 0.0;
    std::optional<double> floor_;
    bool floor_heuristic_ = false;
};

struct ValidationReport {
    bool growth_ok = false;
    bool a1_ok = false;
    bool a2_ok = false;
    std::optional<double> measured_floor;
    std::vector<std::string> messages;

    bool all_ok() const { return growth_ok && a1_ok && a2_ok; }
};

/// Checks the standing assumptions: integrable growth, strict convexity
/// with a positive floor (A1), and solvability of t V'(t) = 2 - x on
/// [0, 2] (A2). Failures are reported, never thrown.
ValidationReport validate(const Potential& p, double beta);

/// Unique t_x with t_x V'(t_x) = 2 - x, for x in [0, 2].
double solve_t_x(const Potential& p, double x);

/// Parses a CLI potential spec: power:alpha=2, logconfining:c=2, quartic,
/// hardwall, custom:poly=0.25x4+0.5x2[;log=1.5]. The hard wall needs the
/// gas size, supplied separately.
Potential parse_potential(const std::string& spec, std::uint64_t hard_wall_n = 0);

} // namespace coulomb
