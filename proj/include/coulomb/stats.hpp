#pragma once

#include <functional>
#include <span>

namespace coulomb {

struct KsResult {
    double d = 0.0;        // sup |empirical - reference| over sample points
    double p_value = 1.0;  // asymptotic Kolmogorov law at sqrt(m) * d
};

/// Asymptotic Kolmogorov survival function
/// 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), terms below 1e-12 dropped.
double kolmogorov_p(double lambda);

/// One-sample Kolmogorov-Smirnov test of an ascending-sorted sample
/// against a reference CDF.
KsResult ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& reference_cdf);

} // namespace coulomb
