#include "coulomb/potential.hpp"

#include "coulomb/errors.hpp"
#include "coulomb/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coulomb {

namespace {

double poly_eval(const std::vector<PolyTerm>& terms, double log_coeff, double r, int order) {
    double acc = 0.0;
    for (const PolyTerm& t : terms) {
        double c = t.coeff;
        double p = t.power;
        for (int i = 0; i < order; ++i) {
            c *= p;
            p -= 1.0;
        }
        if (c != 0.0) acc += c * std::pow(r, p);
    }
    if (log_coeff != 0.0) {
        const double r2 = r * r;
        const double den = 1.0 + r2;
        switch (order) {
            case 0: acc += log_coeff * std::log1p(r2); break;
            case 1: acc += log_coeff * 2.0 * r / den; break;
            case 2: acc += log_coeff * 2.0 * (1.0 - r2) / (den * den); break;
            case 3: acc += log_coeff * 4.0 * r * (r2 - 3.0) / (den * den * den); break;
            default: throw ParameterError("poly_eval: unsupported order");
        }
    }
    return acc;
}

/// Search radius for grid scans: smallest R with R V'(R) = 2, or 10.
double scan_radius(const Potential& p) {
    const double lo = std::max(p.domain_min(), 1e-6);
    auto g = [&](double t) { return t * p.d1(t) - 2.0; };
    try {
        double hi = std::max(1.0, 2.0 * lo);
        while (g(hi) < 0.0 && hi < 1e6) hi *= 2.0;
        if (g(hi) >= 0.0 && g(lo) <= 0.0) return find_root_bracketed(g, lo, hi, 1e-10);
    } catch (const Error&) {
        // fall through to the default radius
    }
    return 10.0;
}

/// Minimum of V'' over a geometric grid on (1e-6, 4 R]; heuristic.
double grid_min_d2(const Potential& p, double radius) {
    const double lo = std::max(p.domain_min(), 1e-6);
    const double hi = std::max(4.0 * radius, 2.0 * lo);
    const int n = 10000;
    double acc = p.d2(lo);
    const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
    double r = lo;
    for (int i = 1; i < n; ++i) {
        r *= ratio;
        acc = std::min(acc, p.d2(r));
    }
    return acc;
}

} // namespace

Potential Potential::power(double alpha) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha))
        throw ParameterError("power potential requires alpha >= 1");
    Potential p;
    p.family_ = PotentialFamily::Power;
    p.path_ = ExactPath::GammaTransform;
    p.alpha_ = alpha;
    if (alpha == 2.0) p.floor_ = 2.0;  // V'' identically 2
    return p;
}

Potential Potential::log_confining(double c) {
    if (!(c > 1.0) || !std::isfinite(c))
        throw ParameterError("log-confining potential requires c > 1");
    Potential p;
    p.family_ = PotentialFamily::LogConfining;
    p.path_ = ExactPath::BetaTransform;
    p.c_ = c;
    return p;
}

Potential Potential::hard_wall_pareto(std::uint64_t n) {
    if (n < 1) throw ParameterError("hard-wall potential requires n >= 1");
    Potential p;
    p.family_ = PotentialFamily::HardWallPareto;
    p.path_ = ExactPath::InverseCdfClosedForm;
    p.hard_wall_n_ = n;
    return p;
}

Potential Potential::quartic() {
    Potential p;
    p.family_ = PotentialFamily::Quartic;
    p.path_ = ExactPath::None;
    p.floor_ = 1.0;  // V'' = 3t^2 + 1
    return p;
}

Potential Potential::custom(std::vector<PolyTerm> poly, double log_coeff) {
    for (const PolyTerm& t : poly)
        if (!std::isfinite(t.coeff) || !std::isfinite(t.power))
            throw ParameterError("custom potential: non-finite term");
    if (!std::isfinite(log_coeff)) throw ParameterError("custom potential: non-finite log term");
    Potential p;
    p.family_ = PotentialFamily::Custom;
    p.path_ = ExactPath::None;
    p.poly_ = std::move(poly);
    p.log_coeff_ = log_coeff;
    const double m = grid_min_d2(p, scan_radius(p));
    if (m > 0.0) {
        p.floor_ = 0.99 * m;
        p.floor_heuristic_ = true;
    }
    return p;
}

double Potential::domain_min() const {
    return family_ == PotentialFamily::HardWallPareto ? 1.0 : 0.0;
}

namespace {

void check_domain(const Potential& p, double r) {
    if (!(r >= p.domain_min()) || !std::isfinite(r))
        throw DomainError("potential evaluated outside its domain (r=" + std::to_string(r) + ")");
}

} // namespace

double Potential::eval(double r) const {
    check_domain(*this, r);
    switch (family_) {
        case PotentialFamily::Power: return std::pow(r, alpha_);
        case PotentialFamily::LogConfining: return c_ * std::log1p(r * r);
        case PotentialFamily::HardWallPareto:
            return 2.0 * (1.0 + 1.0 / static_cast<double>(hard_wall_n_)) * std::log(r);
        case PotentialFamily::Quartic: {
            const double r2 = r * r;
            return 0.25 * r2 * r2 + 0.5 * r2;
        }
        case PotentialFamily::Custom: return poly_eval(poly_, log_coeff_, r, 0);
    }
    throw ParameterError("unreachable potential family");
}

double Potential::d1(double r) const {
    check_domain(*this, r);
    switch (family_) {
        case PotentialFamily::Power: return alpha_ * std::pow(r, alpha_ - 1.0);
        case PotentialFamily::LogConfining: return 2.0 * c_ * r / (1.0 + r * r);
        case PotentialFamily::HardWallPareto:
            return 2.0 * (1.0 + 1.0 / static_cast<double>(hard_wall_n_)) / r;
        case PotentialFamily::Quartic: return r * r * r + r;
        case PotentialFamily::Custom: return poly_eval(poly_, log_coeff_, r, 1);
    }
    throw ParameterError("unreachable potential family");
}

double Potential::d2(double r) const {
    check_domain(*this, r);
    switch (family_) {
        case PotentialFamily::Power: return alpha_ * (alpha_ - 1.0) * std::pow(r, alpha_ - 2.0);
        case PotentialFamily::LogConfining: {
            const double den = 1.0 + r * r;
            return 2.0 * c_ * (1.0 - r * r) / (den * den);
        }
        case PotentialFamily::HardWallPareto:
            return -2.0 * (1.0 + 1.0 / static_cast<double>(hard_wall_n_)) / (r * r);
        case PotentialFamily::Quartic: return 3.0 * r * r + 1.0;
        case PotentialFamily::Custom: return poly_eval(poly_, log_coeff_, r, 2);
    }
    throw ParameterError("unreachable potential family");
}

double Potential::d3(double r) const {
    check_domain(*this, r);
    switch (family_) {
        case PotentialFamily::Power:
            return alpha_ * (alpha_ - 1.0) * (alpha_ - 2.0) * std::pow(r, alpha_ - 3.0);
        case PotentialFamily::LogConfining: {
            const double den = 1.0 + r * r;
            return 4.0 * c_ * r * (r * r - 3.0) / (den * den * den);
        }
        case PotentialFamily::HardWallPareto:
            return 4.0 * (1.0 + 1.0 / static_cast<double>(hard_wall_n_)) / (r * r * r);
        case PotentialFamily::Quartic: return 6.0 * r;
        case PotentialFamily::Custom: return poly_eval(poly_, log_coeff_, r, 3);
    }
    throw ParameterError("unreachable potential family");
}

double Potential::power_alpha() const {
    if (family_ != PotentialFamily::Power) throw ParameterError("not a power potential");
    return alpha_;
}

double Potential::log_confining_c() const {
    if (family_ != PotentialFamily::LogConfining)
        throw ParameterError("not a log-confining potential");
    return c_;
}

std::uint64_t Potential::hard_wall_n() const {
    if (family_ != PotentialFamily::HardWallPareto)
        throw ParameterError("not a hard-wall potential");
    return hard_wall_n_;
}

namespace {

std::string format_param(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

std::string Potential::spec_string() const {
    switch (family_) {
        case PotentialFamily::Power: return "power:alpha=" + format_param(alpha_);
        case PotentialFamily::LogConfining: return "logconfining:c=" + format_param(c_);
        case PotentialFamily::HardWallPareto: return "hardwall";
        case PotentialFamily::Quartic: return "quartic";
        case PotentialFamily::Custom: {
            std::string s = "custom:poly=";
            for (std::size_t i = 0; i < poly_.size(); ++i) {
                if (i) s += "+";
                s += format_param(poly_[i].coeff) + "x" + format_param(poly_[i].power);
            }
            if (log_coeff_ != 0.0) s += ";log=" + format_param(log_coeff_);
            return s;
        }
    }
    throw ParameterError("unreachable potential family");
}

double solve_t_x(const Potential& p, double x) {
    if (!(x >= 0.0 && x <= 2.0)) throw DomainError("solve_t_x: x must lie in [0, 2]");
    const double target = 2.0 - x;
    const double lo = std::max(p.domain_min(), 1e-12);
    auto g = [&](double t) { return t * p.d1(t) - target; };

    const double glo = g(lo);
    if (std::abs(glo) <= 1e-10) return lo;  // boundary root (t_x -> 0 as x -> 2)
    if (glo > 0.0)
        throw NoSignChange("solve_t_x: t V'(t) already exceeds " + std::to_string(target) +
                           " at the lower end of the domain");
    double hi = std::max(1.0, 2.0 * lo);
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6)
            throw NoSignChange("solve_t_x: t V'(t) never reaches " + std::to_string(target) +
                               " below 1e6");
    }
    const double t = find_root_bracketed(g, lo, hi, 1e-13);
    if (std::abs(g(t)) > 1e-10)
        throw NumericError("solve_t_x: residual above tolerance at t=" + std::to_string(t));
    return t;
}

ValidationReport validate(const Potential& p, double beta) {
    if (!(beta > 0.0)) throw ParameterError("validate: beta must be positive");
    ValidationReport rep;

    // growth / integrability
    switch (p.family()) {
        case PotentialFamily::Power:
        case PotentialFamily::Quartic:
            rep.growth_ok = true;
            break;
        case PotentialFamily::LogConfining: {
            const double c = p.log_confining_c();
            const double beta_prime = 0.5 * (beta + 2.0 * c);
            rep.growth_ok = (2.0 * c > beta) && (beta_prime >= 1.0);
            if (!rep.growth_ok)
                rep.messages.push_back("growth: log coefficient too small (need 2c > beta)");
            break;
        }
        case PotentialFamily::HardWallPareto:
            rep.growth_ok = true;
            rep.messages.push_back(
                "hard-wall potential is formal-only: closed-form layer sampling, "
                "heavy-tail analysis; excluded from the general sampling path");
            break;
        case PotentialFamily::Custom: {
            // probe r V'(r) at large r: diverging means power-like growth,
            // a finite limit 2c_eff means log-like and needs 2c_eff > beta
            const double g1 = 1e3 * p.d1(1e3), g2 = 1e6 * p.d1(1e6);
            if (g2 > 1e3 && g2 > 2.0 * g1) {
                rep.growth_ok = true;
            } else {
                const double two_c_eff = g2;
                const double beta_prime = 0.5 * (beta + two_c_eff);
                rep.growth_ok = (two_c_eff > beta) && (beta_prime >= 1.0);
                if (!rep.growth_ok)
                    rep.messages.push_back("growth: custom potential grows too slowly");
            }
            break;
        }
    }

    // A1: strict convexity floor
    if (p.convexity_floor()) {
        rep.a1_ok = true;
        rep.measured_floor = p.convexity_floor();
        if (p.floor_is_heuristic())
            rep.messages.push_back("A1 floor is grid-scanned (heuristic); samplers self-check");
    } else {
        rep.a1_ok = false;
        rep.messages.push_back("A1 fails: V'' has no certified positive lower bound");
        // weaker condition from the density normalization: t V'(t) increasing
        const double lo = std::max(p.domain_min(), 1e-3);
        bool increasing = true;
        double prev = lo * p.d1(lo);
        for (int i = 1; i <= 200; ++i) {
            const double r = lo * std::pow(1e4, i / 200.0);
            const double cur = r * p.d1(r);
            if (cur < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
                increasing = false;
                break;
            }
            prev = cur;
        }
        if (increasing)
            rep.messages.push_back(
                "t V'(t) is increasing on the scan grid, so the weaker growth/monotonicity "
                "condition holds even though A1 fails");
    }

    // A2: solvability of t V'(t) = 2 - x for x in {0, 1, 2}
    rep.a2_ok = true;
    for (double x : {0.0, 1.0, 2.0}) {
        try {
            (void)solve_t_x(p, x);
        } catch (const Error& e) {
            rep.a2_ok = false;
            rep.messages.push_back("A2 fails at x=" + std::to_string(x) + ": " + e.what());
            break;
        }
    }
    return rep;
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParameterError("");
        return v;
    } catch (...) {
        throw ParameterError("could not parse " + what + " from '" + s + "'");
    }
}

std::vector<PolyTerm> parse_poly(const std::string& s) {
    // "0.25x4+0.5x2" -> {0.25, 4}, {0.5, 2}
    std::vector<PolyTerm> terms;
    std::size_t start = 0;
    while (start < s.size()) {
        std::size_t plus = s.find('+', start + 1);  // allow a leading sign
        if (plus == std::string::npos) plus = s.size();
        const std::string piece = s.substr(start, plus - start);
        const std::size_t x = piece.find('x');
        if (x == std::string::npos)
            throw ParameterError("custom poly term '" + piece + "' is missing 'x'");
        terms.push_back(PolyTerm{parse_double(piece.substr(0, x), "poly coefficient"),
                                 parse_double(piece.substr(x + 1), "poly power")});
        start = plus + 1;
    }
    if (terms.empty()) throw ParameterError("custom potential has no poly terms");
    return terms;
}

} // namespace

Potential parse_potential(const std::string& spec, std::uint64_t hard_wall_n) {
    const std::size_t colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (family == "power") {
        if (rest.rfind("alpha=", 0) != 0)
            throw ParameterError("power potential spec must be power:alpha=<value>");
        return Potential::power(parse_double(rest.substr(6), "alpha"));
    }
    if (family == "logconfining") {
        if (rest.rfind("c=", 0) != 0)
            throw ParameterError("log-confining spec must be logconfining:c=<value>");
        return Potential::log_confining(parse_double(rest.substr(2), "c"));
    }
    if (family == "quartic") {
        if (!rest.empty()) throw ParameterError("quartic potential takes no parameters");
        return Potential::quartic();
    }
    if (family == "hardwall") {
        if (!rest.empty()) throw ParameterError("hardwall potential takes no parameters");
        if (hard_wall_n == 0)
            throw ParameterError("hardwall potential needs the gas size n (pass --n)");
        return Potential::hard_wall_pareto(hard_wall_n);
    }
    if (family == "custom") {
        if (rest.rfind("poly=", 0) != 0)
            throw ParameterError("custom spec must be custom:poly=<terms>[;log=<d>]");
        std::string body = rest.substr(5);
        double log_coeff = 0.0;
        const std::size_t semi = body.find(';');
        if (semi != std::string::npos) {
            const std::string tail = body.substr(semi + 1);
            if (tail.rfind("log=", 0) != 0)
                throw ParameterError("custom spec tail must be ;log=<d>");
            log_coeff = parse_double(tail.substr(4), "log coefficient");
            body = body.substr(0, semi);
        }
        return Potential::custom(parse_poly(body), log_coeff);
    }
    throw ParameterError("unknown potential family '" + family + "'");
}

} // namespace coulomb
