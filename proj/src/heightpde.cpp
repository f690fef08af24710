#include "rotwave/heightpde.hpp"

#include "rotwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotwave {

namespace {

// central-difference bundle at an interior node, ghosts folded by mirroring
struct Stencil {
    double hq, hp, hqq, hpp, hpq;
};

Stencil interior_stencil(const HeightField& h, int i, int j) {
    const Grid& g = h.grid();
    const double c = h(i, j);
    const double e = h.mirrored(i + 1, j), w = h.mirrored(i - 1, j);
    const double n = h(i, j + 1), s = h(i, j - 1);
    const double ne = h.mirrored(i + 1, j + 1), nw = h.mirrored(i - 1, j + 1);
    const double se = h.mirrored(i + 1, j - 1), sw = h.mirrored(i - 1, j - 1);
    Stencil st;
    st.hq = (e - w) / (2.0 * g.dq);
    st.hp = (n - s) / (2.0 * g.dp);
    st.hqq = (e - 2.0 * c + w) / (g.dq * g.dq);
    st.hpp = (n - 2.0 * c + s) / (g.dp * g.dp);
    st.hpq = (ne - nw - se + sw) / (4.0 * g.dq * g.dp);
    return st;
}

double top_hp(const HeightField& h, int i) {
    const Grid& g = h.grid();
    const int np = g.np;
    return (3.0 * h(i, np) - 4.0 * h(i, np - 1) + h(i, np - 2)) / (2.0 * g.dp);
}

} // namespace

std::vector<double> residual(const VorticityModel& model, double g, double q_head,
                             const HeightField& h) {
    const Grid& gr = h.grid();
    std::vector<double> out(gr.unknowns());

    for (int j = 1; j < gr.np; ++j) {
        const double gamma_j = model.gamma(-gr.p(j));
        for (int i = 0; i <= gr.nq; ++i) {
            const Stencil st = interior_stencil(h, i, j);
            out[HeightField::unknown_index(gr, i, j)] =
                (1.0 + st.hq * st.hq) * st.hpp - 2.0 * st.hp * st.hq * st.hpq +
                st.hp * st.hp * st.hqq + gamma_j * st.hp * st.hp * st.hp;
        }
    }
    const int np = gr.np;
    for (int i = 0; i <= gr.nq; ++i) {
        const double hq = h.hq_at(i, np);
        const double hp = top_hp(h, i);
        out[HeightField::unknown_index(gr, i, np)] =
            1.0 + hq * hq + (2.0 * g * h(i, np) - q_head) * hp * hp;
    }
    return out;
}

BandedMatrix jacobian(const VorticityModel& model, double g, double q_head,
                      const HeightField& h) {
    const Grid& gr = h.grid();
    const int nq = gr.nq, np = gr.np;
    const int n = gr.unknowns();
    const int kl = 2 * (nq + 1);
    const int ku = nq + 2;
    BandedMatrix jac(n, kl, ku);

    const double cq = 1.0 / (2.0 * gr.dq);
    const double cp = 1.0 / (2.0 * gr.dp);
    const double aq = 1.0 / (gr.dq * gr.dq);
    const double ap = 1.0 / (gr.dp * gr.dp);
    const double cm = 1.0 / (4.0 * gr.dq * gr.dp);

    auto fold_col = [&](int i, int j) {
        if (i < 0) i = -i;
        if (i > nq) i = 2 * nq - i;
        return HeightField::unknown_index(gr, i, j);
    };

    for (int j = 1; j < np; ++j) {
        const double gamma_j = model.gamma(-gr.p(j));
        for (int i = 0; i <= nq; ++i) {
            const Stencil st = interior_stencil(h, i, j);
            const int row = HeightField::unknown_index(gr, i, j);

            // coefficients of the linearized operator acting on m:
            //   A m_pp + B m_pq + C m_qq + Dq m_q + Dp m_p
            const double A = 1.0 + st.hq * st.hq;
            const double B = -2.0 * st.hp * st.hq;
            const double C = st.hp * st.hp;
            const double Dq = 2.0 * (st.hq * st.hpp - st.hp * st.hpq);
            const double Dp = 2.0 * st.hp * st.hqq - 2.0 * st.hq * st.hpq +
                              3.0 * gamma_j * st.hp * st.hp;

            auto add = [&](int di, int dj, double v) {
                if (j + dj == 0 || v == 0.0) return; // Dirichlet bottom row
                jac.add(row, fold_col(i + di, j + dj), v);
            };
            add(0, 0, -2.0 * A * ap - 2.0 * C * aq);
            add(+1, 0, C * aq + Dq * cq);
            add(-1, 0, C * aq - Dq * cq);
            add(0, +1, A * ap + Dp * cp);
            add(0, -1, A * ap - Dp * cp);
            add(+1, +1, B * cm);
            add(-1, -1, B * cm);
            add(-1, +1, -B * cm);
            add(+1, -1, -B * cm);
        }
    }

    for (int i = 0; i <= nq; ++i) {
        const double hq = h.hq_at(i, np);
        const double hp = top_hp(h, i);
        const int row = HeightField::unknown_index(gr, i, np);
        const double obl = 2.0 * (2.0 * g * h(i, np) - q_head) * hp;

        auto add = [&](int di, int dj, double v) {
            if (v == 0.0) return;
            jac.add(row, fold_col(i + di, np + dj), v);
        };
        add(+1, 0, 2.0 * hq * cq);
        add(-1, 0, -2.0 * hq * cq);
        add(0, 0, obl * 3.0 * cp + 2.0 * g * hp * hp);
        add(0, -1, obl * -4.0 * cp);
        add(0, -2, obl * 1.0 * cp);
    }
    return jac;
}

std::vector<double> dq_residual(const VorticityModel& /*model*/, double /*g*/,
                                double /*q_head*/, const HeightField& h) {
    const Grid& gr = h.grid();
    std::vector<double> out(gr.unknowns(), 0.0);
    for (int i = 0; i <= gr.nq; ++i) {
        const double hp = top_hp(h, i);
        out[HeightField::unknown_index(gr, i, gr.np)] = -hp * hp;
    }
    return out;
}

std::pair<HeightField, NewtonReport> newton_solve(const VorticityModel& model, double g,
                                                  double q_head, const HeightField& h0,
                                                  double tol, int max_iter) {
    HeightField h = h0;
    NewtonReport rep;

    std::vector<double> r = residual(model, g, q_head, h);
    double rnorm = sup_norm(r);

    while (rnorm > tol && rep.iterations < max_iter) {
        BandedMatrix jac = jacobian(model, g, q_head, h);
        std::vector<double> rhs(r.size());
        for (std::size_t k = 0; k < r.size(); ++k) rhs[k] = -r[k];
        std::vector<double> delta;
        try {
            delta = linear_solve(jac, rhs);
        } catch (const SingularMatrixError&) {
            rep.final_residual = rnorm;
            rep.converged = false;
            return {h, rep};
        }

        const std::vector<double> x = h.to_unknowns();
        double alpha = 1.0;
        bool accepted = false;
        HeightField h_try = h;
        for (int halving = 0; halving <= 8; ++halving) {
            std::vector<double> x_try(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) x_try[k] = x[k] + alpha * delta[k];
            h_try.set_unknowns(x_try);
            const std::vector<double> r_try = residual(model, g, q_head, h_try);
            const double rn_try = sup_norm(r_try);
            if (rn_try < rnorm) {
                h = h_try;
                r = r_try;
                rnorm = rn_try;
                accepted = true;
                if (halving > 0) rep.damping_used = true;
                break;
            }
            alpha *= 0.5;
        }
        ++rep.iterations;
        if (!accepted) break; // line search stalled
    }

    rep.final_residual = rnorm;
    rep.converged = rnorm <= tol;
    if (rep.converged && h.min_hp() <= 0.0) {
        rep.converged = false; // stagnation breach
    }
    return {h, rep};
}

HeightField laminar_field(const LaminarFlow& flow, const Grid& grid) {
    if (int(flow.h_profile.size()) != grid.np + 1 || flow.p0 != grid.p0) {
        throw std::invalid_argument("laminar_field: flow sampling does not match the grid");
    }
    HeightField h(grid);
    for (int j = 0; j <= grid.np; ++j) {
        const double v = flow.h_profile[j];
        for (int i = 0; i <= grid.nq; ++i) h.at(i, j) = v;
    }
    return h;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace rotwave
