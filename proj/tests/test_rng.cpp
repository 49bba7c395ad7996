#include "coulomb/rng.hpp"

#include "coulomb/errors.hpp"
#include "coulomb/special.hpp"
#include "coulomb/stats.hpp"
#include "test_util.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

using namespace coulomb;

TEST_CASE("substream determinism") {
    RngStream a = substream(7, 0);
    RngStream b = substream(7, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("substreams with distinct ids diverge immediately") {
    RngStream a = substream(7, 0);
    RngStream b = substream(7, 1);
    bool differs = false;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() != b.next_u64()) differs = true;
    CHECK(differs);
}

TEST_CASE("no identical 64-draw prefixes across 10^4 substreams") {
    std::unordered_set<std::uint64_t> prefixes;
    for (std::uint64_t id = 0; id < 10000; ++id) {
        RngStream s = substream(42, id);
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-style fold of the prefix
        for (int i = 0; i < 64; ++i) {
            h ^= s.next_u64();
            h *= 0x100000001b3ULL;
        }
        CHECK(prefixes.insert(h).second);
    }
}

TEST_CASE("uniform stays in [0,1) and uniform_pos in (0,1]") {
    RngStream s = substream(3, 9);
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = s.uniform_pos();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("gaussian sample mean") {
    RngStream s = substream(11, 0);
    const int m = 100000;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += sample_gaussian(0.0, 1.0, s);
    CHECK(std::abs(acc / m) < 4.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("gamma sample mean matches the shape") {
    const int m = 100000;
    for (double shape : {0.4, 1.0, 3.7, 100.0}) {
        RngStream s = substream(13, static_cast<std::uint64_t>(shape * 10));
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += sample_gamma(shape, s);
        CHECK(std::abs(acc / m - shape) <
              4.0 * std::sqrt(shape / static_cast<double>(m)));
    }
}

TEST_CASE("beta(1,1) is uniform by KS") {
    RngStream s = substream(17, 0);
    std::vector<double> draws(10000);
    for (double& x : draws) x = sample_beta(1.0, 1.0, s);
    std::sort(draws.begin(), draws.end());
    const KsResult ks = ks_statistic(draws, [](double x) { return x; });
    CHECK(ks.d < 1.63 / std::sqrt(10000.0) * 1.2);
}

TEST_CASE("gamma and beta samplers pass KS against the exact CDFs") {
    const int m = 10000;
    for (double shape : {0.5, 1.0, 2.5, 10.0, 100.0}) {
        RngStream s = substream(19, static_cast<std::uint64_t>(shape * 100));
        std::vector<double> draws(m);
        for (double& x : draws) x = sample_gamma(shape, s);
        std::sort(draws.begin(), draws.end());
        const KsResult ks =
            ks_statistic(draws, [&](double x) { return reg_inc_gamma_P(shape, x); });
        CHECK(ks.p_value >= 0.001);
    }
    const double params[][2] = {{0.5, 0.5}, {1.0, 19.0}, {2.0, 5.0}, {8.0, 3.0}};
    for (const auto& ab : params) {
        RngStream s = substream(23, static_cast<std::uint64_t>(ab[0] * 100 + ab[1]));
        std::vector<double> draws(m);
        for (double& x : draws) x = sample_beta(ab[0], ab[1], s);
        std::sort(draws.begin(), draws.end());
        const KsResult ks =
            ks_statistic(draws, [&](double x) { return reg_inc_beta(ab[0], ab[1], x); });
        CHECK(ks.p_value >= 0.001);
    }
}

TEST_CASE("parameter validation") {
    RngStream s = substream(1, 1);
    CHECK_THROWS_AS(sample_gamma(0.0, s), ParameterError);
    CHECK_THROWS_AS(sample_gamma(-1.0, s), ParameterError);
    CHECK_THROWS_AS(sample_beta(1.0, 0.0, s), ParameterError);
    CHECK_THROWS_AS(sample_gaussian(0.0, -1.0, s), ParameterError);
}
