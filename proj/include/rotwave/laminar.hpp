#pragma once

#include "rotwave/vorticity.hpp"

#include <vector>

namespace rotwave {

/// A trivial (flat-surface shear) solution H(p; lambda) sampled on a uniform
/// p-grid, with its Bernoulli head Q(lambda) and depth d = H(0).
struct LaminarFlow {
    double lambda = 0.0;
    double q_head = 0.0; // Q = lambda + 2 g d
    double depth = 0.0;  // d = H(0)
    double p0 = 0.0;
    double g = 0.0;
    std::vector<double> h_profile;  // H(p_j), j = 0..np, p_j = p0 + j dp
    std::vector<double> hp_profile; // H_p(p_j) = (lambda + 2 Gamma(p_j))^{-1/2}
};

/// H(p; lambda) = int_{p0}^{p} (lambda + 2 Gamma(s))^{-1/2} ds.
/// Requires lambda > -2 Gamma_0 so the integrand stays finite.
double laminar_height(const VorticityModel& model, double lambda, double p0, double p);

/// Q(lambda) = lambda + 2 g H(0; lambda).
double bernoulli_head(const VorticityModel& model, double lambda, double p0, double g);

/// Samples H and H_p on np+1 uniform nodes. Requires
/// lambda > -2 Gamma_0 + eps_lambda.
LaminarFlow build_laminar(const VorticityModel& model, double lambda, double p0, double g,
                          int np, double eps_lambda = 1e-8);

} // namespace rotwave
