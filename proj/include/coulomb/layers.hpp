#pragma once

#include "coulomb/potential.hpp"
#include "coulomb/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coulomb {

/// Laplace data of one layer: F_k(t) = ((2k-1)/n) log t - V(t), its
/// critical point and curvature, plus the convexity floor backing the
/// Gaussian rejection envelope.
struct LayerObjective {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double t_mode = 0.0;
    double curvature = 0.0;      // F_k''(t_mode) < 0
    double envelope_rate = 0.0;  // the a of A1 (0 when uncertified)
};

LayerObjective mode_of_layer(const Potential& p, std::uint64_t n, std::uint64_t k);

/// One gas realization: moduli sorted descending, with provenance.
struct ModuliSample {
    std::uint64_t n = 0;
    std::string potential_spec;
    std::vector<double> moduli;
    std::uint64_t master_seed = 0;
    std::uint64_t replica_id = 0;
};

/// Exact draw from the layer density t^{2k-1} e^{-n V(t)} via the
/// potential's closed-form path, or Gaussian-envelope rejection.
double sample_layer(const Potential& p, std::uint64_t n, std::uint64_t k, RngStream& rng);

/// Rejection path regardless of any closed form; needs a convexity floor.
double sample_layer_rejection(const Potential& p, std::uint64_t n, std::uint64_t k,
                              RngStream& rng);

/// n independent layers k = 1..n, returned sorted descending.
ModuliSample sample_gas(const Potential& p, std::uint64_t n, RngStream& rng);

/// CDF of layer k (exact closed form where available, quadrature ratio
/// otherwise); monotone in t.
double layer_cdf(const Potential& p, std::uint64_t n, std::uint64_t k, double t);

/// log of layer_cdf, finite far into the lower tail.
double log_layer_cdf(const Potential& p, std::uint64_t n, std::uint64_t k, double t);

/// P(max_k R_k <= t) = prod_k layer_cdf(k, t), accumulated in log space;
/// returns exact 0 once the log-product drops below -745.
double exact_max_cdf(const Potential& p, std::uint64_t n, double t);

/// Reusable sampler for one (potential, n): precomputes the per-layer
/// rejection plan so replicas share the root-finding work.
class GasSampler {
public:
    GasSampler(Potential p, std::uint64_t n, bool force_rejection = false);

    double draw_layer(std::uint64_t k, RngStream& rng) const;
    ModuliSample draw_gas(RngStream& rng) const;
    /// Draws all n layers, keeps only the largest.
    double draw_max(RngStream& rng) const;

    std::uint64_t n() const { return n_; }
    const Potential& potential() const { return pot_; }

private:
    struct LayerPlan {
        double t_mode;
        double sd;
        double nF_mode;  // (2k-1) log t_mode - n V(t_mode)
    };

    double draw_rejection(std::uint64_t k, RngStream& rng) const;

    Potential pot_;
    std::uint64_t n_;
    bool rejection_;
    double floor_ = 0.0;
    std::vector<LayerPlan> plan_;
};

} // namespace coulomb
