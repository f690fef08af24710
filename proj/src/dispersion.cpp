#include "rotwave/dispersion.hpp"

#include "rotwave/errors.hpp"
#include "rotwave/laminar.hpp"

#include <cmath>
#include <stdexcept>

namespace rotwave {

namespace {

struct ShootResult {
    std::vector<double> m; // possibly rescaled when `scaled`
    double m_end = 0.0;
    double v_end = 0.0;   // V = a^3 M' at p=0
    double scale = 1.0;   // total factor divided out (scaled mode)
};

// RK4 on (M, V) with M' = V/a^3, V' = a M. In scaled mode the state is
// renormalized whenever it grows large; the mismatch sign is invariant under
// positive rescaling because the ODE is linear.
ShootResult shoot(const VorticityModel& model, double lambda, double p0, int np, bool scaled) {
    const double dp = -p0 / np;
    auto a3 = [&](double p) {
        const double a2 = lambda + 2.0 * model.big_gamma(p);
        return a2 * std::sqrt(a2);
    };
    auto a1 = [&](double p) { return std::sqrt(lambda + 2.0 * model.big_gamma(p)); };

    ShootResult out;
    out.m.resize(np + 1);
    double m = 0.0, v = a3(p0); // M' (p0) = 1  =>  V(p0) = a^3(p0)
    out.m[0] = 0.0;

    for (int j = 0; j < np; ++j) {
        const double p = p0 + j * dp;
        const double ph = p + 0.5 * dp;
        const double pn = j + 1 == np ? 0.0 : p + dp;
        const double a3_0 = a3(p), a3_h = a3(ph), a3_1 = a3(pn);
        const double a1_0 = a1(p), a1_h = a1(ph), a1_1 = a1(pn);

        const double k1m = v / a3_0, k1v = a1_0 * m;
        const double k2m = (v + 0.5 * dp * k1v) / a3_h, k2v = a1_h * (m + 0.5 * dp * k1m);
        const double k3m = (v + 0.5 * dp * k2v) / a3_h, k3v = a1_h * (m + 0.5 * dp * k2m);
        const double k4m = (v + dp * k3v) / a3_1, k4v = a1_1 * (m + dp * k3m);

        m += dp / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
        v += dp / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        if (scaled) {
            const double mag = std::max(std::abs(m), std::abs(v));
            if (mag > 1e100) {
                m /= mag;
                v /= mag;
                out.scale *= mag;
                for (int k = 0; k <= j; ++k) out.m[k] /= mag;
            }
        }
        out.m[j + 1] = m;
        if (!scaled && (!std::isfinite(m) || !std::isfinite(v))) {
            throw NumericError("sl_shoot: non-finite state during integration");
        }
    }
    out.m_end = m;
    out.v_end = v;
    return out;
}

// Normalized mismatch in [-1,1]: sign equals sign of g*M(0) - V(0), smooth
// near simple roots, immune to the overall solution scale.
double mismatch_normalized(const VorticityModel& model, double lambda, double p0, double g,
                           int np) {
    const ShootResult r = shoot(model, lambda, p0, np, true);
    const double num = g * r.m_end - r.v_end;
    const double den = g * std::abs(r.m_end) + std::abs(r.v_end);
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

SturmLiouvilleState sl_shoot(const VorticityModel& model, double lambda, double p0, double g,
                             int np) {
    if (np < 16) throw std::invalid_argument("sl_shoot: np must be >= 16");
    if (!(p0 < 0.0)) throw std::invalid_argument("sl_shoot: p0 must be negative");
    const double gamma0 = model.gamma_extrema(p0).first;
    if (!(lambda > -2.0 * gamma0)) {
        throw std::invalid_argument("sl_shoot: lambda must exceed -2*Gamma_0");
    }
    const ShootResult r = shoot(model, lambda, p0, np, false);
    SturmLiouvilleState st;
    st.lambda = lambda;
    st.m_profile = r.m;
    st.mprime_end = r.v_end / (lambda * std::sqrt(lambda)); // a(0)^3 = lambda^{3/2}
    st.mismatch = g * r.m_end - r.v_end;
    return st;
}

BifurcationPoint find_lambda_star(const VorticityModel& model, double p0, double g, int np) {
    if (np < 16) throw std::invalid_argument("find_lambda_star: np must be >= 16");
    const double gamma0 = model.gamma_extrema(p0).first;
    const double lo = -2.0 * gamma0 + 1e-8;

    auto f = [&](double lambda) { return mismatch_normalized(model, lambda, p0, g, np); };

    // geometric ladder from the singular end until the first sign change
    const double cap = 1e6 * std::max({1.0, g * std::abs(p0), -2.0 * gamma0});
    double t_prev = 0.0;
    double f_prev = f(lo);
    double t = std::max(1e-6, 1e-6 * std::max(1.0, g * std::abs(p0)));
    double bracket_a = -1.0, bracket_b = -1.0, f_a = 0.0;
    std::vector<std::pair<double, double>> tail; // scan points past the bracket
    while (lo + t <= lo + cap) {
        const double fv = f(lo + t);
        if (bracket_a < 0.0 && ((f_prev <= 0.0 && fv > 0.0) || (f_prev >= 0.0 && fv < 0.0))) {
            bracket_a = lo + t_prev;
            bracket_b = lo + t;
            f_a = f_prev;
        } else if (bracket_a >= 0.0) {
            tail.emplace_back(lo + t, fv);
        }
        if (bracket_a >= 0.0 && tail.size() >= 24) break;
        f_prev = fv;
        t_prev = t;
        t *= 2.0;
        if (t > cap) break;
    }
    if (bracket_a < 0.0) {
        throw NoBifurcationError("find_lambda_star: no mismatch sign change up to the scan cap "
                                 "(configuration is likely inadmissible)");
    }

    // bisection to a narrow interval, then secant polish
    double a = bracket_a, b = bracket_b, fa = f_a;
    for (int it = 0; it < 80 && (b - a) > 1e-12 * std::max(1.0, b); ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    double x0 = a, x1 = b, f0 = f(x0), f1 = f(x1);
    for (int it = 0; it < 12 && std::abs(x1 - x0) > 1e-14 * std::max(1.0, std::abs(x1)); ++it) {
        if (f1 == f0) break;
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 > lo)) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
    }
    const double lambda_star = x1;

    BifurcationPoint bp;
    bp.lambda_star = lambda_star;
    bp.np = np;
    bp.depth = laminar_height(model, lambda_star, p0, 0.0);
    bp.q_star = lambda_star + 2.0 * g * bp.depth;

    SturmLiouvilleState st = sl_shoot(model, lambda_star, p0, g, np);
    bp.eigen_m = st.m_profile;
    const double m_end = bp.eigen_m.back(); // M > 0 on (p0,0], so sup = M(0)
    for (double& v : bp.eigen_m) v /= m_end;

    int flips = 0;
    double prev = f(bracket_b);
    for (auto& [lam, fv] : tail) {
        if ((prev < 0.0 && fv > 0.0) || (prev > 0.0 && fv < 0.0)) ++flips;
        prev = fv;
        (void)lam;
    }
    bp.extra_sign_changes = flips;
    return bp;
}

HeightField phi_star_field(const BifurcationPoint& bp, const Grid& grid) {
    if (grid.np != bp.np) {
        throw std::invalid_argument("phi_star_field: grid.np does not match the shot resolution");
    }
    HeightField phi(grid);
    for (int j = 0; j <= grid.np; ++j) {
        const double mj = bp.eigen_m[j];
        for (int i = 0; i <= grid.nq; ++i) phi.at(i, j) = mj * std::cos(grid.q(i));
    }
    return phi;
}

} // namespace rotwave
