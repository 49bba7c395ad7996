#include "coulomb/layers.hpp"

#include "coulomb/errors.hpp"
#include "coulomb/quadrature.hpp"
#include "coulomb/roots.hpp"
#include "coulomb/special.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace coulomb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_layer_index(std::uint64_t n, std::uint64_t k) {
    if (n < 1) throw ParameterError("layer: n must be >= 1");
    if (k < 1 || k > n) throw ParameterError("layer: k must lie in [1, n]");
}

/// n F_k(t) = (2k-1) log t - n V(t)
double n_times_objective(const Potential& p, std::uint64_t n, std::uint64_t k, double t) {
    return static_cast<double>(2 * k - 1) * std::log(t) - static_cast<double>(n) * p.eval(t);
}

} // namespace

LayerObjective mode_of_layer(const Potential& p, std::uint64_t n, std::uint64_t k) {
    check_layer_index(n, k);
    const double ratio = static_cast<double>(2 * k - 1) / static_cast<double>(n);

    double t_mode;
    if (p.family() == PotentialFamily::Power) {
        const double alpha = p.power_alpha();
        t_mode = std::pow(ratio / alpha, 1.0 / alpha);
    } else {
        // F_k'(t) = ratio/t - V'(t), strictly decreasing through its root
        auto fprime = [&](double t) { return ratio / t - p.d1(t); };
        const double lo0 = std::max(p.domain_min(), 1e-12);
        double lo = lo0, hi = std::max(1.0, 2.0 * lo0);
        while (fprime(hi) > 0.0) {
            hi *= 2.0;
            if (hi > 1e8) throw NoSolution("mode_of_layer: no critical point below 1e8");
        }
        if (fprime(lo) < 0.0)
            throw NoSolution("mode_of_layer: objective already decreasing at the domain edge");
        t_mode = find_root_bracketed(fprime, lo, hi, 1e-14);
    }

    LayerObjective obj;
    obj.n = n;
    obj.k = k;
    obj.t_mode = t_mode;
    obj.curvature = -ratio / (t_mode * t_mode) - p.d2(t_mode);
    obj.envelope_rate = p.convexity_floor().value_or(0.0);
    return obj;
}

namespace {

struct RejectionPlan {
    double t_mode;
    double sd;
    double nF_mode;
};

RejectionPlan make_rejection_plan(const Potential& p, std::uint64_t n, std::uint64_t k,
                                  double floor) {
    const LayerObjective obj = mode_of_layer(p, n, k);
    RejectionPlan plan;
    plan.t_mode = obj.t_mode;
    plan.sd = 1.0 / std::sqrt(static_cast<double>(n) * floor);
    plan.nF_mode = n_times_objective(p, n, k, obj.t_mode);
    return plan;
}

double require_floor(const Potential& p) {
    const auto floor = p.convexity_floor();
    if (!floor || !(*floor > 0.0))
        throw NoConvexityFloor("rejection sampling needs a potential with a certified "
                               "convexity floor (V'' >= a > 0)");
    return *floor;
}

double rejection_draw(const Potential& p, std::uint64_t n, std::uint64_t k, double floor,
                      const RejectionPlan& plan, RngStream& rng) {
    const double two_k_minus_1 = static_cast<double>(2 * k - 1);
    const double nd = static_cast<double>(n);
    constexpr std::uint64_t kMaxProposals = 10'000'000;
    for (std::uint64_t it = 0; it < kMaxProposals; ++it) {
        const double t = sample_gaussian(plan.t_mode, plan.sd, rng);
        if (t <= 0.0) continue;  // truncation by rejection keeps exactness
        const double dt = t - plan.t_mode;
        const double log_ratio = two_k_minus_1 * std::log(t) - nd * p.eval(t) - plan.nF_mode +
                                 0.5 * nd * floor * dt * dt;
        // the Gaussian-decay envelope guarantees log_ratio <= 0; a heuristic
        // floor is converted into a runtime-verified one by this check
        if (log_ratio > 1e-9)
            throw NumericError("sample_layer: rejection envelope violated (log ratio " +
                               std::to_string(log_ratio) + "); convexity floor not valid");
        if (std::log(rng.uniform_pos()) < log_ratio) return t;
    }
    throw NumericError("sample_layer: rejection sampler exhausted its proposal budget");
}

} // namespace

double sample_layer_rejection(const Potential& p, std::uint64_t n, std::uint64_t k,
                              RngStream& rng) {
    check_layer_index(n, k);
    const double floor = require_floor(p);
    const RejectionPlan plan = make_rejection_plan(p, n, k, floor);
    return rejection_draw(p, n, k, floor, plan, rng);
}

double sample_layer(const Potential& p, std::uint64_t n, std::uint64_t k, RngStream& rng) {
    check_layer_index(n, k);
    switch (p.exact_path()) {
        case ExactPath::GammaTransform: {
            const double alpha = p.power_alpha();
            const double g = sample_gamma(2.0 * static_cast<double>(k) / alpha, rng);
            return std::pow(g / static_cast<double>(n), 1.0 / alpha);
        }
        case ExactPath::BetaTransform: {
            const double c = p.log_confining_c();
            const double cn = c * static_cast<double>(n);
            if (!(cn > static_cast<double>(k)))
                throw ParameterError("sample_layer: beta transform needs c n > k");
            for (;;) {
                const double b = sample_beta(static_cast<double>(k), cn - static_cast<double>(k), rng);
                if (b < 1.0) return std::sqrt(b / (1.0 - b));
                // b == 1 to double precision would map to +inf; redraw
            }
        }
        case ExactPath::InverseCdfClosedForm: {
            const double m = static_cast<double>(n + 1 - k);
            return std::pow(rng.uniform_pos(), -1.0 / (2.0 * m));
        }
        case ExactPath::None:
            return sample_layer_rejection(p, n, k, rng);
    }
    throw ParameterError("unreachable exact path");
}

ModuliSample sample_gas(const Potential& p, std::uint64_t n, RngStream& rng) {
    return GasSampler(p, n).draw_gas(rng);
}

double layer_cdf(const Potential& p, std::uint64_t n, std::uint64_t k, double t) {
    check_layer_index(n, k);
    if (!(t >= 0.0)) throw DomainError("layer_cdf: t must be nonnegative");
    switch (p.exact_path()) {
        case ExactPath::GammaTransform: {
            const double alpha = p.power_alpha();
            return reg_inc_gamma_P(2.0 * static_cast<double>(k) / alpha,
                                   static_cast<double>(n) * std::pow(t, alpha));
        }
        case ExactPath::BetaTransform: {
            const double c = p.log_confining_c();
            const double cn = c * static_cast<double>(n);
            if (!(cn > static_cast<double>(k)))
                throw ParameterError("layer_cdf: beta transform needs c n > k");
            const double x = t * t / (1.0 + t * t);
            return reg_inc_beta(static_cast<double>(k), cn - static_cast<double>(k), x);
        }
        case ExactPath::InverseCdfClosedForm: {
            if (t <= 1.0) return 0.0;
            const double m = static_cast<double>(n + 1 - k);
            return -std::expm1(-2.0 * m * std::log(t));
        }
        case ExactPath::None:
            break;
    }
    return std::exp(log_layer_cdf(p, n, k, t));
}

double log_layer_cdf(const Potential& p, std::uint64_t n, std::uint64_t k, double t) {
    check_layer_index(n, k);
    if (!(t >= 0.0)) throw DomainError("log_layer_cdf: t must be nonnegative");
    switch (p.exact_path()) {
        case ExactPath::GammaTransform: {
            const double alpha = p.power_alpha();
            return reg_inc_gamma(2.0 * static_cast<double>(k) / alpha,
                                 static_cast<double>(n) * std::pow(t, alpha))
                .log_p;
        }
        case ExactPath::BetaTransform: {
            const double c = p.log_confining_c();
            const double cn = c * static_cast<double>(n);
            if (!(cn > static_cast<double>(k)))
                throw ParameterError("log_layer_cdf: beta transform needs c n > k");
            const double x = t * t / (1.0 + t * t);
            return reg_inc_beta_pq(static_cast<double>(k), cn - static_cast<double>(k), x).log_p;
        }
        case ExactPath::InverseCdfClosedForm: {
            if (t <= 1.0) return -kInf;
            const double m = static_cast<double>(n + 1 - k);
            return std::log1p(-std::exp(-2.0 * m * std::log(t)));
        }
        case ExactPath::None:
            break;
    }

    // quadrature ratio on the normalized integrand exp(n F_k - n F_k(mode))
    if (t == 0.0) return -kInf;
    const LayerObjective obj = mode_of_layer(p, n, k);
    const double nF_mode = n_times_objective(p, n, k, obj.t_mode);
    auto g = [&](double s) {
        if (s <= 0.0) return 0.0;
        return std::exp(n_times_objective(p, n, k, s) - nF_mode);
    };
    const double upper = truncate_upper(g, 2.0 * obj.t_mode, 1.0);
    const double z_all = integrate_adaptive(g, 0.0, upper, 1e-10).value;
    if (t >= upper) return 0.0;
    const double z_t = integrate_adaptive(g, 0.0, t, 1e-10).value;
    if (z_t <= 0.0) return -kInf;
    return std::log(std::min(z_t / z_all, 1.0));
}

double exact_max_cdf(const Potential& p, std::uint64_t n, double t) {
    if (n < 1) throw ParameterError("exact_max_cdf: n must be >= 1");
    if (!(t >= 0.0)) throw DomainError("exact_max_cdf: t must be nonnegative");
    // layers are stochastically increasing in k, so the log terms shrink
    // monotonically as k decreases; cut off once they stop mattering
    double sum = 0.0;
    for (std::uint64_t k = n; k >= 1; --k) {
        const double lp = log_layer_cdf(p, n, k, t);
        if (lp == -kInf) return 0.0;
        sum += lp;
        if (sum < -745.0) return 0.0;
        if (lp > -1e-20) break;  // remaining n-k terms add less than n * 1e-20
    }
    return std::exp(sum);
}

GasSampler::GasSampler(Potential p, std::uint64_t n, bool force_rejection)
    : pot_(std::move(p)), n_(n) {
    if (n_ < 1) throw ParameterError("GasSampler: n must be >= 1");
    rejection_ = force_rejection || pot_.exact_path() == ExactPath::None;
    if (rejection_) {
        floor_ = require_floor(pot_);
        plan_.reserve(n_);
        for (std::uint64_t k = 1; k <= n_; ++k) {
            const RejectionPlan rp = make_rejection_plan(pot_, n_, k, floor_);
            plan_.push_back(LayerPlan{rp.t_mode, rp.sd, rp.nF_mode});
        }
    }
}

double GasSampler::draw_rejection(std::uint64_t k, RngStream& rng) const {
    const LayerPlan& lp = plan_[k - 1];
    const RejectionPlan rp{lp.t_mode, lp.sd, lp.nF_mode};
    return rejection_draw(pot_, n_, k, floor_, rp, rng);
}

double GasSampler::draw_layer(std::uint64_t k, RngStream& rng) const {
    check_layer_index(n_, k);
    if (rejection_) return draw_rejection(k, rng);
    return sample_layer(pot_, n_, k, rng);
}

ModuliSample GasSampler::draw_gas(RngStream& rng) const {
    ModuliSample s;
    s.n = n_;
    s.potential_spec = pot_.spec_string();
    s.master_seed = rng.master_seed();
    s.replica_id = rng.stream_id();
    s.moduli.resize(n_);
    for (std::uint64_t k = 1; k <= n_; ++k) s.moduli[k - 1] = draw_layer(k, rng);
    std::sort(s.moduli.begin(), s.moduli.end(), std::greater<double>());
    return s;
}

double GasSampler::draw_max(RngStream& rng) const {
    double best = -kInf;
    for (std::uint64_t k = 1; k <= n_; ++k) best = std::max(best, draw_layer(k, rng));
    return best;
}

} // namespace coulomb
