#include "coulomb/stats.hpp"

#include "coulomb/errors.hpp"

#include <algorithm>
#include <cmath>

namespace coulomb {

double kolmogorov_p(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 100000; ++k) {
        const double term = std::exp(-2.0 * static_cast<double>(k) * k * lambda * lambda);
        if (term < 1e-12) break;
        sum += sign * term;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& reference_cdf) {
    if (sorted_samples.empty()) throw EmptySample("ks_statistic: sample is empty");
    if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
        throw ParameterError("ks_statistic: sample must be sorted ascending");

    const double m = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double f = reference_cdf(sorted_samples[i]);
        if (!(f >= 0.0 && f <= 1.0))
            throw NumericError("ks_statistic: reference CDF left [0, 1] at x=" +
                               std::to_string(sorted_samples[i]));
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / m - f,
                                 f - static_cast<double>(i) / m));
    }
    return KsResult{d, kolmogorov_p(std::sqrt(m) * d)};
}

} // namespace coulomb
