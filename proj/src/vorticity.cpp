#include "rotwave/vorticity.hpp"

#include "rotwave/errors.hpp"
#include "rotwave/quadrature.hpp"

#include <gsl/gsl_interp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotwave {

struct VorticityModel::Table {
    std::vector<double> psi;
    std::vector<double> gam;
    gsl_interp* interp = nullptr;

    Table(std::vector<double> x, std::vector<double> y)
        : psi(std::move(x)), gam(std::move(y)) {
        interp = gsl_interp_alloc(gsl_interp_steffen, psi.size());
        gsl_interp_init(interp, psi.data(), gam.data(), psi.size());
    }
    ~Table() {
        if (interp) gsl_interp_free(interp);
    }
    Table(const Table&) = delete;
    Table& operator=(const Table&) = delete;
};

VorticityModel VorticityModel::constant(double omega, double psi_max) {
    return polynomial({omega}, psi_max);
}

VorticityModel VorticityModel::affine(double a, double b, double psi_max) {
    VorticityModel m = polynomial({a, b}, psi_max);
    m.kind_ = VorticityKind::affine;
    return m;
}

VorticityModel VorticityModel::polynomial(std::vector<double> coeffs, double psi_max) {
    if (!(psi_max > 0.0)) throw std::invalid_argument("vorticity: psi_max must be positive");
    if (coeffs.empty()) coeffs.push_back(0.0);
    VorticityModel m;
    m.kind_ = coeffs.size() == 1 ? VorticityKind::constant : VorticityKind::polynomial;
    m.coeffs_ = std::move(coeffs);
    m.psi_max_ = psi_max;
    return m;
}

VorticityModel VorticityModel::tabulated(std::vector<double> psi, std::vector<double> gamma) {
    if (psi.size() != gamma.size() || psi.size() < 3) {
        throw std::invalid_argument("vorticity: tabulated model needs >= 3 (psi, gamma) pairs");
    }
    if (std::abs(psi.front()) > 1e-12) {
        throw std::invalid_argument("vorticity: tabulated psi samples must start at 0");
    }
    for (std::size_t k = 1; k < psi.size(); ++k) {
        if (!(psi[k] > psi[k - 1])) {
            throw std::invalid_argument("vorticity: tabulated psi samples must be strictly increasing");
        }
    }
    psi.front() = 0.0;
    VorticityModel m;
    m.kind_ = VorticityKind::tabulated;
    m.psi_max_ = psi.back();
    m.coeffs_.reserve(2 * psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) {
        m.coeffs_.push_back(psi[k]);
        m.coeffs_.push_back(gamma[k]);
    }
    m.table_ = std::make_shared<const Table>(std::move(psi), std::move(gamma));
    return m;
}

double VorticityModel::clamp_domain(double psi) const {
    const double slack = 1e-12 * std::max(1.0, psi_max_);
    if (psi < -slack || psi > psi_max_ + slack) {
        throw std::domain_error("vorticity: psi outside [0, psi_max]");
    }
    return std::clamp(psi, 0.0, psi_max_);
}

double VorticityModel::gamma(double psi) const {
    psi = clamp_domain(psi);
    if (kind_ == VorticityKind::tabulated) {
        // null accel keeps evaluation stateless (bsearch per call)
        return gsl_interp_eval(table_->interp, table_->psi.data(), table_->gam.data(), psi, nullptr);
    }
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * psi + coeffs_[k];
    return acc;
}

double VorticityModel::gamma_prime(double psi) const {
    psi = clamp_domain(psi);
    if (kind_ == VorticityKind::tabulated) {
        return gsl_interp_eval_deriv(table_->interp, table_->psi.data(), table_->gam.data(), psi,
                                     nullptr);
    }
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * psi + k * coeffs_[k];
    return acc;
}

double VorticityModel::big_gamma(double p) const {
    if (p == 0.0) return 0.0;
    const double x = clamp_domain(-p); // Gamma(p) = -int_0^{-p} gamma(t) dt
    if (kind_ == VorticityKind::tabulated) {
        return -gsl_interp_eval_integ(table_->interp, table_->psi.data(), table_->gam.data(), 0.0,
                                      x, nullptr);
    }
    // antiderivative of the polynomial, evaluated at x
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k] / double(k + 1);
    return -acc * x;
}

std::pair<double, double> VorticityModel::gamma_extrema(double p0) const {
    if (!(p0 < 0.0)) throw std::invalid_argument("gamma_extrema: p0 must be negative");
    // Gamma'(p) = gamma(-p): interior extrema of Gamma are the sign changes of
    // gamma(-p); refine each bracket by bisection, then compare with endpoints.
    const int n = 2048;
    std::vector<double> cand = {p0, 0.0};
    double prev = gamma(-p0);
    double prev_p = p0;
    for (int k = 1; k <= n; ++k) {
        const double p = p0 + (0.0 - p0) * double(k) / n;
        const double cur = gamma(std::clamp(-p, 0.0, psi_max()));
        if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
            double a = prev_p, b = p, fa = prev;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = gamma(std::clamp(-m, 0.0, psi_max()));
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            cand.push_back(0.5 * (a + b));
        } else if (cur == 0.0) {
            cand.push_back(p);
        }
        prev = cur;
        prev_p = p;
    }
    double lo = big_gamma(cand[0]), hi = lo;
    for (double p : cand) {
        const double v = big_gamma(p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

VorticityReport check_amplitude_condition(const VorticityModel& model, double p0, double g) {
    if (!(p0 < 0.0)) throw std::invalid_argument("check_amplitude_condition: p0 must be negative");
    if (!(g > 0.0)) throw std::invalid_argument("check_amplitude_condition: g must be positive");

    VorticityReport rep;
    auto [g0, g1] = model.gamma_extrema(p0);
    rep.gamma0 = g0;
    rep.gamma1 = g1;

    // The integrand has sqrt-type kinks where Gamma hits Gamma_0, so use the
    // locally refining rule rather than uniform panel doubling.
    auto integrand = [&](double p) {
        const double d = std::max(2.0 * model.big_gamma(p) - 2.0 * g0, 0.0);
        const double r = std::sqrt(d);
        const double dp0 = p - p0;
        return dp0 * dp0 * r + d * r;
    };
    rep.condition_lhs = integrate_adaptive(integrand, p0, 0.0, 1e-11);
    rep.condition_rhs = g * p0 * p0;
    rep.admissible = rep.condition_lhs < rep.condition_rhs;

    // favorable: gamma <= 0 and gamma' <= 0 on [0, |p0|] (dense sampling)
    const double tol = 1e-12;
    bool fav = true;
    const int n = 4096;
    for (int k = 0; k <= n && fav; ++k) {
        const double psi = std::min(-p0, model.psi_max()) * double(k) / n;
        if (model.gamma(psi) > tol || model.gamma_prime(psi) > tol) fav = false;
    }
    rep.favorable = fav;
    return rep;
}

} // namespace rotwave
