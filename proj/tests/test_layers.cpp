#include "coulomb/layers.hpp"

#include "coulomb/errors.hpp"
#include "coulomb/special.hpp"
#include "coulomb/stats.hpp"
#include "test_util.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace coulomb;

TEST_CASE("layer modes and curvature") {
    const LayerObjective top = mode_of_layer(Potential::power(2.0), 50, 50);
    CHECK(std::abs(top.t_mode - 0.99498743710661995) < 1e-12);
    CHECK(std::abs(top.curvature - (-4.0)) < 1e-9);
    CHECK(top.envelope_rate == doctest::Approx(2.0));

    // quartic: (2k-1)/(n t) = t^3 + t at the mode
    const LayerObjective q = mode_of_layer(Potential::quartic(), 100, 100);
    const double residual = 1.99 / q.t_mode - (std::pow(q.t_mode, 3) + q.t_mode);
    CHECK(std::abs(residual) <= 1e-10);
    CHECK(std::abs(q.t_mode - 0.99833008304346742) < 1e-10);
    CHECK(q.curvature < -q.envelope_rate);
}

TEST_CASE("gamma-path layer moments: n R^2 is Gamma(k) for the ginibre gas") {
    const Potential p = Potential::power(2.0);
    RngStream rng = substream(101, 0);
    const int m = 100000;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r = sample_layer(p, 100, 100, rng);
        acc += 100.0 * r * r;
    }
    const double mean = acc / m;
    CHECK(std::abs(mean - 100.0) < 4.0 * std::sqrt(100.0 / m));
}

TEST_CASE("log-confining layer maps to a Beta law") {
    const Potential p = Potential::log_confining(2.0);
    RngStream rng = substream(103, 0);
    std::vector<double> b(10000);
    for (double& x : b) {
        const double r = sample_layer(p, 10, 1, rng);
        x = r * r / (1.0 + r * r);
    }
    std::sort(b.begin(), b.end());
    // Beta(1, 19): cdf 1 - (1-u)^19
    const KsResult ks =
        ks_statistic(b, [](double u) { return 1.0 - std::pow(1.0 - u, 19.0); });
    CHECK(ks.p_value >= 0.001);
}

TEST_CASE("hardwall layers live on [1, inf) with the closed-form inverse") {
    const Potential p = Potential::hard_wall_pareto(5);
    RngStream rng = substream(107, 0);
    for (int i = 0; i < 2000; ++i) {
        const double r = sample_layer(p, 5, 1 + i % 5, rng);
        CHECK(r >= 1.0);
        CHECK(std::isfinite(r));
    }
    CHECK(layer_cdf(p, 5, 3, 1.0) == 0.0);
    CHECK(layer_cdf(p, 5, 3, 0.2) == 0.0);
}

TEST_CASE("rejection path matches the quadrature oracle for the quartic") {
    const Potential p = Potential::quartic();
    RngStream rng = substream(109, 0);
    std::vector<double> draws(10000);
    for (double& x : draws) x = sample_layer(p, 200, 200, rng);
    std::sort(draws.begin(), draws.end());
    const KsResult ks =
        ks_statistic(draws, [&](double t) { return layer_cdf(p, 200, 200, t); });
    CHECK(ks.p_value >= 0.001);
}

TEST_CASE("rejection and gamma paths are statistically indistinguishable for ginibre") {
    const Potential p = Potential::power(2.0);
    for (std::uint64_t n : {std::uint64_t{10}, std::uint64_t{100}}) {
        for (std::uint64_t k : {std::uint64_t{1}, n / 2, n}) {
            RngStream r1 = substream(111, 2 * n + k);
            RngStream r2 = substream(112, 2 * n + k);
            std::vector<double> a(10000), b(10000);
            for (double& x : a) x = sample_layer_rejection(p, n, k, r1);
            for (double& x : b) x = sample_layer(p, n, k, r2);
            const KsResult ks = testutil::two_sample_ks(a, b);
            CHECK(ks.p_value >= 0.001);
        }
    }
}

TEST_CASE("rejection path demands a certified floor") {
    RngStream rng = substream(113, 0);
    CHECK_THROWS_AS(sample_layer_rejection(Potential::power(3.0), 10, 5, rng), NoConvexityFloor);
    CHECK_THROWS_AS(GasSampler(Potential::power(3.0), 10, true), NoConvexityFloor);
}

TEST_CASE("rejection acceptance rate for the top ginibre layer") {
    const Potential p = Potential::power(2.0);
    RngStream rng = substream(115, 0);
    const int m = 20000;
    for (int i = 0; i < m; ++i) (void)sample_layer_rejection(p, 100, 100, rng);
    // three words per proposal (two per gaussian + one accept test)
    const double proposals = static_cast<double>(rng.draws_consumed()) / 3.0;
    const double acceptance = static_cast<double>(m) / proposals;
    CHECK(acceptance >= 0.5);  // theory: sqrt(a/|F''|) = sqrt(2/4) ~ 0.707
    CHECK(acceptance <= 0.85);
}

TEST_CASE("envelope inequality holds across the proposal range") {
    // n (F(t) - F(mode)) <= -(a/2) n (t - mode)^2 + 1e-9
    const Potential p = Potential::quartic();
    const std::uint64_t n = 100;
    for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{50}, std::uint64_t{100}}) {
        const LayerObjective obj = mode_of_layer(p, n, k);
        auto nF = [&](double t) {
            return (2.0 * static_cast<double>(k) - 1.0) * std::log(t) -
                   static_cast<double>(n) * p.eval(t);
        };
        const double base = nF(obj.t_mode);
        for (double t = 0.05; t < 3.0; t += 0.01) {
            const double lhs = nF(t) - base;
            const double rhs = -0.5 * obj.envelope_rate * static_cast<double>(n) *
                               (t - obj.t_mode) * (t - obj.t_mode);
            CHECK(lhs <= rhs + 1e-9);
        }
    }
}

TEST_CASE("sample_gas shape and ordering") {
    const Potential p = Potential::power(2.0);
    RngStream rng = substream(117, 5);
    const ModuliSample gas = sample_gas(p, 200, rng);
    CHECK(gas.n == 200);
    CHECK(gas.moduli.size() == 200);
    CHECK(gas.master_seed == 117);
    CHECK(gas.replica_id == 5);
    CHECK(gas.potential_spec == "power:alpha=2");
    CHECK(std::is_sorted(gas.moduli.begin(), gas.moduli.end(), std::greater<double>()));
    for (double r : gas.moduli) CHECK(r > 0.0);

    RngStream a = substream(118, 0);
    RngStream b = substream(118, 0);
    const ModuliSample one = sample_gas(p, 1, a);
    CHECK(one.moduli.size() == 1);
    CHECK(one.moduli[0] == sample_layer(p, 1, 1, b));
}

TEST_CASE("empirical radial cdf approaches the equilibrium law") {
    const Potential p = Potential::power(2.0);
    RngStream rng = substream(119, 0);
    ModuliSample gas = sample_gas(p, 10000, rng);
    std::vector<double> ascending(gas.moduli.rbegin(), gas.moduli.rend());
    const KsResult ks = ks_statistic(
        ascending, [](double r) { return std::clamp(r * r, 0.0, 1.0); });
    CHECK(ks.d < 0.05);
}

TEST_CASE("rejection-path gas also fills the equilibrium profile") {
    // quartic: cdf (r^4 + r^2)/2 on [0, 1]
    RngStream rng = substream(120, 0);
    ModuliSample gas = sample_gas(Potential::quartic(), 5000, rng);
    std::vector<double> ascending(gas.moduli.rbegin(), gas.moduli.rend());
    const KsResult ks = ks_statistic(ascending, [](double r) {
        return std::clamp(0.5 * (std::pow(r, 4) + r * r), 0.0, 1.0);
    });
    CHECK(ks.d < 0.05);
}

TEST_CASE("beta-path gas fills the heavy-tailed equilibrium profile") {
    // logconfining c=2: cdf c r^2/(1+r^2) on [0, 1]
    RngStream rng = substream(122, 0);
    ModuliSample gas = sample_gas(Potential::log_confining(2.0), 5000, rng);
    std::vector<double> ascending(gas.moduli.rbegin(), gas.moduli.rend());
    const KsResult ks = ks_statistic(ascending, [](double r) {
        return std::clamp(2.0 * r * r / (1.0 + r * r), 0.0, 1.0);
    });
    CHECK(ks.d < 0.05);
}

TEST_CASE("scanned-floor custom potential samples exactly") {
    // custom t^2 clone: layer law known in closed form through the gamma path
    const Potential c = Potential::custom({{1.0, 2.0}});
    REQUIRE(c.floor_is_heuristic());
    RngStream rng = substream(123, 0);
    std::vector<double> draws(10000);
    for (double& x : draws) x = sample_layer(c, 10, 5, rng);
    std::sort(draws.begin(), draws.end());
    const KsResult ks = ks_statistic(
        draws, [](double t) { return reg_inc_gamma_P(5.0, 10.0 * t * t); });
    CHECK(ks.p_value >= 0.001);
}

TEST_CASE("layer cdf values and identities") {
    const Potential p2 = Potential::power(2.0);
    CHECK(std::abs(layer_cdf(p2, 100, 1, 0.1) - 0.63212055882855768) < 1e-12);
    CHECK(layer_cdf(p2, 100, 1, 0.0) == 0.0);

    const Potential p3 = Potential::power(3.0);
    for (double t : {0.3, 0.7, 0.9}) {
        const double direct = layer_cdf(p3, 50, 20, t);
        const double viaGamma = reg_inc_gamma_P(40.0 / 3.0, 50.0 * std::pow(t, 3.0));
        CHECK(direct == doctest::Approx(viaGamma).epsilon(1e-14));
    }
}

TEST_CASE("general-path layer cdf is exact for ginibre") {
    // quadrature route (forced by a custom clone of t^2) vs the closed form
    const Potential c = Potential::custom({{1.0, 2.0}});
    const Potential p = Potential::power(2.0);
    for (double t : {0.5, 0.9, 1.0, 1.1}) {
        CHECK(std::abs(layer_cdf(c, 50, 50, t) - layer_cdf(p, 50, 50, t)) < 1e-8);
    }
}

TEST_CASE("exact max cdf equals the direct product on closed-form paths") {
    const Potential p = Potential::power(2.0);
    for (double t : {0.8, 1.0, 1.1}) {
        double prod = 1.0;
        for (std::uint64_t k = 1; k <= 50; ++k) prod *= layer_cdf(p, 50, k, t);
        CHECK(std::abs(exact_max_cdf(p, 50, t) - prod) < 1e-12);
    }
    const Potential hw = Potential::hard_wall_pareto(10);
    for (double t : {1.2, 1.5, 2.0}) {
        double prod = 1.0;
        for (std::uint64_t k = 1; k <= 10; ++k) prod *= layer_cdf(hw, 10, k, t);
        CHECK(std::abs(exact_max_cdf(hw, 10, t) - prod) < 1e-12);
    }
}

TEST_CASE("hardwall product at small n") {
    const Potential hw = Potential::hard_wall_pareto(2);
    CHECK(std::abs(exact_max_cdf(hw, 2, 2.0) - 0.703125) < 1e-12);
    CHECK(exact_max_cdf(hw, 2, 1.0) == 0.0);
}

TEST_CASE("hardwall product at n=400 versus the formal limit") {
    const Potential hw = Potential::hard_wall_pareto(400);
    const double product = exact_max_cdf(hw, 400, 2.0);
    CHECK(std::abs(product - 0.68853753712033972) < 1e-12);
    // the finite product sits a fixed 0.028 below exp(-1/3): log(1-x) has a
    // second-order tail the formal limit drops
    const double gap = std::exp(-1.0 / 3.0) - product;
    CHECK(std::abs(gap - 0.02799377345344955) < 1e-9);
}

TEST_CASE("exact max cdf is monotone in t") {
    const Potential p = Potential::power(2.0);
    double prev = 0.0;
    for (double t = 0.5; t < 1.5; t += 0.01) {
        const double v = exact_max_cdf(p, 100, t);
        CHECK(v >= prev - 1e-14);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("sampled maxima agree with the exact product cdf") {
    const Potential p = Potential::power(2.0);
    const GasSampler sampler(p, 100);
    std::vector<double> maxima(10000);
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        RngStream rng = substream(121, i);
        maxima[i] = sampler.draw_max(rng);
    }
    std::sort(maxima.begin(), maxima.end());
    const KsResult ks =
        ks_statistic(maxima, [&](double t) { return exact_max_cdf(p, 100, t); });
    CHECK(ks.p_value >= 0.001);
}

TEST_CASE("layer index validation") {
    const Potential p = Potential::power(2.0);
    RngStream rng = substream(1, 1);
    CHECK_THROWS_AS(sample_layer(p, 10, 0, rng), ParameterError);
    CHECK_THROWS_AS(sample_layer(p, 10, 11, rng), ParameterError);
    CHECK_THROWS_AS(layer_cdf(p, 10, 3, -0.5), DomainError);
}
