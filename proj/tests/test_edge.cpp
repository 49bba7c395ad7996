#include "coulomb/edge.hpp"

#include "coulomb/errors.hpp"
#include "coulomb/layers.hpp"
#include "test_util.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace coulomb;

TEST_CASE("c_n sequence and the subcritical threshold") {
    CHECK(std::abs(c_n_sequence(1000) - 1.2045887447406606) < 1e-13);
    CHECK(std::abs(c_n_sequence(100) - (-0.28706613203705633)) < 1e-13);
    CHECK(minimal_admissible_n() == 164);
    CHECK(c_n_sequence(163) <= 0.0);
    CHECK(c_n_sequence(164) > 0.0);
}

TEST_CASE("power scaling constants at alpha=2, n=1000") {
    const ScalingConstants sc = power_scaling(2.0, 1000);
    CHECK(sc.regime == ScalingRegime::PowerCase);
    CHECK(std::abs(sc.c_n - 1.2045887447406606) < 1e-12);
    CHECK(std::abs(sc.a_n - 69.414371559228586) < 1e-10);
    CHECK(std::abs(sc.b_n - 1.0173535928898071) < 1e-12);
    CHECK(sc.t0 == 1.0);
    CHECK(sc.C0 == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("edge locations for power potentials") {
    CHECK(power_scaling(2.0, 1000).t0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(power_scaling(3.0, 1000).t0 ==
          doctest::Approx(0.87358046473629887).epsilon(1e-14));
    CHECK(power_scaling(1.0, 1000).t0 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("subcritical n raises with the minimal admissible n") {
    CHECK_THROWS_AS(power_scaling(2.0, 100), SubcriticalN);
    try {
        power_scaling(2.0, 100);
    } catch (const SubcriticalN& e) {
        CHECK(e.n() == 100);
        CHECK(e.minimal_admissible_n() == 164);
        CHECK(std::string(e.what()).find("164") != std::string::npos);
    }
    CHECK_THROWS_AS(general_scaling(Potential::power(2.0), 100), SubcriticalN);
}

TEST_CASE("general scaling coincides with power scaling for ginibre") {
    for (std::uint64_t n : {std::uint64_t{1000}, std::uint64_t{1000000}}) {
        const ScalingConstants pw = power_scaling(2.0, n);
        const ScalingConstants gen = general_scaling(Potential::power(2.0), n);
        CHECK(std::abs(gen.t0 - pw.t0) <= 1e-10 * pw.t0);
        CHECK(std::abs(gen.C0 - pw.C0) <= 1e-10 * pw.C0);
        CHECK(std::abs(gen.a_n - pw.a_n) <= 1e-10 * pw.a_n);
        CHECK(std::abs(gen.b_n - pw.b_n) <= 1e-10 * pw.b_n);
    }
}

TEST_CASE("general scaling constants for the quartic") {
    const ScalingConstants sc = general_scaling(Potential::quartic(), 1000);
    CHECK(std::abs(sc.t0 - 1.0) < 1e-10);
    // |F''| = 2/t0^2 + V''(t0) = 6; C0 = 1/sqrt(6^{3/2}/2)
    const double closed_form = 1.0 / std::sqrt(std::pow(6.0, 1.5) / 2.0);
    CHECK(std::abs(sc.C0 - closed_form) <= 1e-10);
    CHECK(std::abs(closed_form - 0.36889397323344053) < 1e-14);
}

TEST_CASE("general scaling refuses non-convex powers") {
    CHECK_THROWS_AS(general_scaling(Potential::power(3.0), 1000), AssumptionViolated);
    CHECK_THROWS_AS(general_scaling(Potential::power(1.0), 1000), AssumptionViolated);
    // weak confinement has no Gumbel scaling at all
    CHECK_THROWS_AS(general_scaling(Potential::log_confining(2.0), 1000), AssumptionViolated);
    CHECK_THROWS_AS(scaling_for(Potential::log_confining(2.0), 1000), AssumptionViolated);
}

TEST_CASE("gumbel cdf and quantile") {
    CHECK(std::abs(gumbel_cdf(0.0) - 0.36787944117144233) < 1e-15);
    CHECK(std::abs(gumbel_quantile(0.5) - 0.36651292058166435) < 1e-13);
    for (double p = 0.05; p < 1.0; p += 0.05)
        CHECK(std::abs(gumbel_cdf(gumbel_quantile(p)) - p) < 1e-12);
    CHECK_THROWS_AS(gumbel_quantile(0.0), DomainError);
    CHECK_THROWS_AS(gumbel_quantile(1.0), DomainError);
}

TEST_CASE("scaling constants are positive and center beyond the edge") {
    for (double alpha : {1.0, 2.0, 3.0}) {
        for (std::uint64_t n : {std::uint64_t{200}, std::uint64_t{100000}}) {
            const ScalingConstants sc = power_scaling(alpha, n);
            CHECK(sc.a_n > 0.0);
            CHECK(sc.b_n > sc.t0);
            CHECK(sc.c_n > 0.0);
        }
    }
    const ScalingConstants q = general_scaling(Potential::quartic(), 500);
    CHECK(q.a_n > 0.0);
    CHECK(q.b_n > q.t0);
}

TEST_CASE("standardization round trips") {
    const ScalingConstants sc = power_scaling(2.0, 2000);
    CHECK(standardize_max(sc.b_n, sc) == 0.0);
    CHECK(std::abs(standardize_max(sc.b_n + 1.0 / sc.a_n, sc) - 1.0) < 1e-12);
    for (double x : {-2.0, -0.5, 0.0, 1.5, 4.0}) {
        const double rt = standardize_max(sc.b_n + x / sc.a_n, sc);
        CHECK(std::abs(rt - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("heavy-tail formal limit") {
    CHECK(std::abs(heavytail_limit_cdf(std::sqrt(2.0)) - 0.36787944117144233) < 1e-13);
    double prev = 0.0;
    for (double t = 1.05; t < 50.0; t *= 1.3) {
        const double v = heavytail_limit_cdf(t);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(heavytail_limit_cdf(1e8) > 1.0 - 1e-15);
    CHECK_THROWS_AS(heavytail_limit_cdf(1.0), DomainError);
    CHECK_THROWS_AS(heavytail_limit_cdf(0.5), DomainError);
}

TEST_CASE("c_n grows and approaches log n from below") {
    double prev = c_n_sequence(200);
    for (std::uint64_t n = 300; n <= 5000; n += 100) {
        const double c = c_n_sequence(n);
        CHECK(c > prev);
        prev = c;
    }
    const double r3 = c_n_sequence(1000) / std::log(1000.0);
    const double r6 = c_n_sequence(1000000) / std::log(1e6);
    const double r9 = c_n_sequence(1000000000) / std::log(1e9);
    CHECK(r3 < r6);
    CHECK(r6 < r9);
    CHECK(r9 < 1.0);
}

TEST_CASE("median of standardized ginibre maxima sits near the gumbel median") {
    const Potential p = Potential::power(2.0);
    const ScalingConstants sc = power_scaling(2.0, 1000);
    const GasSampler sampler(p, 1000);
    std::vector<double> standardized(10000);
    for (std::size_t i = 0; i < standardized.size(); ++i) {
        RngStream rng = substream(131, i);
        standardized[i] = standardize_max(sampler.draw_max(rng), sc);
    }
    const double med = testutil::median_sorted(standardized);
    CHECK(std::abs(med - 0.3665) < 0.25);
}

TEST_CASE("finite-n max cdf drifts toward gumbel as n grows (ginibre)") {
    const Potential p = Potential::power(2.0);
    auto maxdev = [&](std::uint64_t n) {
        const ScalingConstants sc = power_scaling(2.0, n);
        double worst = 0.0;
        for (double x : {-1.0, 0.0, 1.0, 2.0}) {
            const double v = exact_max_cdf(p, n, sc.b_n + x / sc.a_n);
            worst = std::max(worst, std::abs(v - gumbel_cdf(x)));
        }
        return worst;
    };
    CHECK(maxdev(10000) <= maxdev(1000));
}
