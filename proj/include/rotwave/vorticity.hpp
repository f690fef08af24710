#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace rotwave {

enum class VorticityKind { constant, affine, polynomial, tabulated };

/// Vorticity function gamma(psi) on [0, psi_max] together with its
/// antiderivative calculus. Gamma(p) = int_0^p gamma(-s) ds is exposed for
/// p in [-psi_max, 0]; the sign flip between the p- and psi-variables lives
/// here so callers never see it.
///
/// Immutable after construction; all evaluations are pure.
class VorticityModel {
public:
    /// Defaults to the zero vorticity function on [0, 1].
    VorticityModel() : coeffs_{0.0}, psi_max_(1.0) {}

    static VorticityModel constant(double omega, double psi_max);
    static VorticityModel affine(double a, double b, double psi_max);
    /// gamma(psi) = sum_k coeffs[k] * psi^k
    static VorticityModel polynomial(std::vector<double> coeffs, double psi_max);
    /// Monotone-preserving C1 cubic through (psi_k, gamma_k); psi ascending,
    /// psi.front()==0, psi.back()==psi_max.
    static VorticityModel tabulated(std::vector<double> psi, std::vector<double> gamma);

    VorticityKind kind() const { return kind_; }
    double psi_max() const { return psi_max_; }
    /// Raw coefficients for serialization (tabulated: psi0,g0,psi1,g1,...).
    const std::vector<double>& coefficients() const { return coeffs_; }

    /// gamma(psi); psi must lie in [0, psi_max] up to round-off slack.
    double gamma(double psi) const;
    /// gamma'(psi).
    double gamma_prime(double psi) const;
    /// Gamma(p) = int_0^p gamma(-s) ds, closed form per kind; Gamma(0)=0 exactly.
    double big_gamma(double p) const;
    /// (Gamma_0, Gamma_1) = (min, max) of Gamma over [p0, 0].
    std::pair<double, double> gamma_extrema(double p0) const;

private:
    double clamp_domain(double psi) const;

    VorticityKind kind_ = VorticityKind::constant;
    std::vector<double> coeffs_;
    double psi_max_ = 0.0;
    // tabulated kind only
    struct Table;
    std::shared_ptr<const Table> table_;
};

/// Admissibility and sign classification of a vorticity model.
struct VorticityReport {
    double gamma0 = 0.0;         // Gamma_0 = min Gamma
    double gamma1 = 0.0;         // Gamma_1 = max Gamma
    double condition_lhs = 0.0;  // amplitude-condition integral
    double condition_rhs = 0.0;  // g * p0^2
    bool admissible = false;     // condition_lhs < condition_rhs
    bool favorable = false;      // gamma <= 0 and gamma' <= 0 on [0, |p0|]
};

/// Evaluates the integral smallness condition
///   int_{p0}^0 [ (p-p0)^2 (2Gamma-2Gamma_0)^{1/2} + (2Gamma-2Gamma_0)^{3/2} ] dp < g p0^2
/// and the favorable-vorticity sign conditions.
VorticityReport check_amplitude_condition(const VorticityModel& model, double p0, double g);

} // namespace rotwave
