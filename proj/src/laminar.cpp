#include "rotwave/laminar.hpp"

#include "rotwave/errors.hpp"
#include "rotwave/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rotwave {

namespace {

void require_lambda(const VorticityModel& model, double lambda, double p0, double margin) {
    const double gamma0 = model.gamma_extrema(p0).first;
    if (!(lambda > -2.0 * gamma0 + margin)) {
        throw std::invalid_argument("laminar: lambda must exceed -2*Gamma_0 (integrand singular)");
    }
}

} // namespace

double laminar_height(const VorticityModel& model, double lambda, double p0, double p) {
    if (!(p0 < 0.0)) throw std::invalid_argument("laminar_height: p0 must be negative");
    if (p < p0 - 1e-12 || p > 1e-12) throw std::domain_error("laminar_height: p outside [p0, 0]");
    require_lambda(model, lambda, p0, 0.0);
    if (p <= p0) return 0.0;
    auto f = [&](double s) { return 1.0 / std::sqrt(lambda + 2.0 * model.big_gamma(s)); };
    return integrate_smooth(f, p0, std::min(p, 0.0));
}

double bernoulli_head(const VorticityModel& model, double lambda, double p0, double g) {
    return lambda + 2.0 * g * laminar_height(model, lambda, p0, 0.0);
}

LaminarFlow build_laminar(const VorticityModel& model, double lambda, double p0, double g,
                          int np, double eps_lambda) {
    if (np < 1) throw std::invalid_argument("build_laminar: np must be >= 1");
    require_lambda(model, lambda, p0, eps_lambda);

    LaminarFlow flow;
    flow.lambda = lambda;
    flow.p0 = p0;
    flow.g = g;
    flow.h_profile.resize(np + 1);
    flow.hp_profile.resize(np + 1);

    const double dp = -p0 / np;
    auto f = [&](double s) { return 1.0 / std::sqrt(lambda + 2.0 * model.big_gamma(s)); };

    flow.h_profile[0] = 0.0;
    flow.hp_profile[0] = f(p0);
    double acc = 0.0;
    for (int j = 1; j <= np; ++j) {
        const double a = p0 + (j - 1) * dp;
        const double b = j == np ? 0.0 : p0 + j * dp;
        acc += integrate_smooth(f, a, b, 1e-13);
        flow.h_profile[j] = acc;
        flow.hp_profile[j] = f(b);
    }
    flow.depth = flow.h_profile[np];
    flow.q_head = lambda + 2.0 * g * flow.depth;
    return flow;
}

} // namespace rotwave
