#pragma once

namespace coulomb {

/// log Gamma(x) for x > 0 (Lanczos approximation, g=7).
double log_gamma(double x);

/// Lower/upper regularized incomplete gamma with log-scale companions.
/// log_p and log_q stay finite far into the tails where p or q underflow.
struct GammaPQ {
    double p;      // P(a, x), lower
    double q;      // Q(a, x) = 1 - P(a, x)
    double log_p;  // log P(a, x)
    double log_q;  // log Q(a, x)
};

GammaPQ reg_inc_gamma(double a, double x);

/// P(a, x); monotone nondecreasing in x, P(a,0)=0, limit 1.
double reg_inc_gamma_P(double a, double x);

/// Q(a, x) = 1 - P(a, x).
double reg_inc_gamma_Q(double a, double x);

/// Regularized incomplete beta I_x(a, b) with log-scale companions.
struct BetaPQ {
    double p;      // I_x(a, b)
    double q;      // 1 - I_x(a, b)
    double log_p;
    double log_q;
};

BetaPQ reg_inc_beta_pq(double a, double b, double x);

/// I_x(a, b) for a, b > 0 and x in [0, 1].
double reg_inc_beta(double a, double b, double x);

} // namespace coulomb
