#include "rotwave/fields.hpp"

#include "rotwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rotwave {

namespace {

// h_qq with even reflection at the lateral edges
double hqq_at(const HeightField& h, int i, int j) {
    const double dq2 = h.grid().dq * h.grid().dq;
    return (h.mirrored(i + 1, j) - 2.0 * h(i, j) + h.mirrored(i - 1, j)) / dq2;
}

} // namespace

std::vector<double> WaveSolution::streamline(int j) const {
    std::vector<double> y(grid.nq + 1);
    for (int i = 0; i <= grid.nq; ++i) y[i] = h(i, j) - depth;
    return y;
}

WaveSolution reconstruct(const HeightField& h) {
    const Grid& gr = h.grid();
    WaveSolution ws;
    ws.grid = gr;
    ws.h = h;

    const int stride = gr.nq + 1;
    ws.u_rel.resize((gr.np + 1) * stride);
    ws.v.resize((gr.np + 1) * stride);
    for (int j = 0; j <= gr.np; ++j) {
        for (int i = 0; i <= gr.nq; ++i) {
            const double hp = h.hp_at(i, j);
            if (!(hp > 0.0)) {
                throw StagnationError("reconstruct: discrete h_p <= 0 (stagnation)");
            }
            ws.u_rel[j * stride + i] = -1.0 / hp;
            ws.v[j * stride + i] = -h.hq_at(i, j) / hp;
        }
    }

    // trapezoid mean over [0,pi]; the even extension makes this the
    // full-period mean water level
    double mean = 0.5 * (h(0, gr.np) + h(gr.nq, gr.np));
    for (int i = 1; i < gr.nq; ++i) mean += h(i, gr.np);
    ws.depth = mean / gr.nq;

    ws.eta.resize(stride);
    for (int i = 0; i <= gr.nq; ++i) ws.eta[i] = h(i, gr.np) - ws.depth;

    ws.displacement.resize(gr.np + 1);
    for (int j = 0; j <= gr.np; ++j) ws.displacement[j] = h(0, j) - h(gr.nq, j);
    return ws;
}

double bernoulli_surface_defect(const WaveSolution& ws, double g, double q_head) {
    const int np = ws.grid.np;
    double worst = 0.0;
    for (int i = 0; i <= ws.grid.nq; ++i) {
        const double u = ws.field_at(ws.u_rel, i, np);
        const double vv = ws.field_at(ws.v, i, np);
        const double val = u * u + vv * vv + 2.0 * g * (ws.eta[i] + ws.depth) - q_head;
        worst = std::max(worst, std::abs(val));
    }
    return worst;
}

GeometryReport surface_geometry(const WaveSolution& ws, double tau_geom) {
    const Grid& gr = ws.grid;
    const int nq = gr.nq;
    GeometryReport rep;
    rep.tau = tau_geom;

    const double crest = *std::max_element(ws.eta.begin(), ws.eta.end());
    const double trough = *std::min_element(ws.eta.begin(), ws.eta.end());
    rep.amplitude = crest - trough;
    rep.applicable = rep.amplitude >= 10.0 * tau_geom;

    // eta'' with parity-aware stencils at the endpoints
    std::vector<double> epp(nq + 1);
    const double dq2 = gr.dq * gr.dq;
    epp[0] = 2.0 * (ws.eta[1] - ws.eta[0]) / dq2;
    epp[nq] = 2.0 * (ws.eta[nq - 1] - ws.eta[nq]) / dq2;
    for (int i = 1; i < nq; ++i) epp[i] = (ws.eta[i + 1] - 2.0 * ws.eta[i] + ws.eta[i - 1]) / dq2;
    rep.crest_curvature = epp[0];
    rep.trough_curvature = epp[nq];

    rep.eta_monotone = true;
    for (int i = 1; i < nq; ++i) {
        const double ep = (ws.eta[i + 1] - ws.eta[i - 1]) / (2.0 * gr.dq);
        if (!(ep < -tau_geom)) rep.eta_monotone = false;
    }

    rep.v_positive = true;
    for (int j = 1; j <= gr.np; ++j) {
        for (int i = 1; i < nq; ++i) {
            if (!(ws.field_at(ws.v, i, j) > tau_geom)) rep.v_positive = false;
        }
    }

    // inflections on the open interval: sign changes of eta'' between interior
    // nodes, skipping values inside the noise floor
    int last_sign = 0;
    int last_idx = -1;
    for (int i = 1; i < nq; ++i) {
        if (std::abs(epp[i]) <= tau_geom) continue;
        const int s = epp[i] > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) {
            ++rep.inflection_count;
            const double a = epp[last_idx], b = epp[i];
            const double qa = gr.q(last_idx), qb = gr.q(i);
            rep.inflection_locations.push_back(qa + (qb - qa) * (0.0 - a) / (b - a));
        }
        last_sign = s;
        last_idx = i;
    }

    auto [L, mono] = displacement_profile(ws, true, tau_geom);
    (void)mono;
    rep.displacement_monotone = true;
    for (int j = 0; j < gr.np; ++j) {
        if (!(L[j + 1] - L[j] > tau_geom)) rep.displacement_monotone = false;
    }

    rep.nodal_hq = nodal_pattern(ws.h, tau_geom).hq_negative;
    return rep;
}

std::pair<std::vector<double>, bool> displacement_profile(const WaveSolution& ws, bool favorable,
                                                          double tau_geom) {
    (void)favorable; // the flag is advisory for the caller's acceptance logic
    std::vector<double> L = ws.displacement;
    bool mono = true;
    for (std::size_t j = 0; j + 1 < L.size(); ++j) {
        if (!(L[j + 1] - L[j] > -tau_geom)) mono = false;
    }
    return {L, mono};
}

NodalReport nodal_pattern(const HeightField& h, double tau_geom) {
    const Grid& gr = h.grid();
    const int nq = gr.nq, np = gr.np;
    NodalReport rep;

    double max_hq = 0.0;
    for (int j = 1; j <= np; ++j)
        for (int i = 1; i < nq; ++i) max_hq = std::max(max_hq, std::abs(h.hq_at(i, j)));
    if (max_hq <= tau_geom) {
        rep.trivial_input = true;
        return rep;
    }

    rep.hq_negative = true;
    for (int j = 1; j <= np; ++j) {
        for (int i = 1; i < nq; ++i) {
            if (!(h.hq_at(i, j) < -tau_geom)) rep.hq_negative = false;
        }
    }

    const double two_dp = 2.0 * gr.dp;
    rep.hqp_negative_bottom = true;
    for (int i = 1; i < nq; ++i) {
        const double hqp =
            (-3.0 * h.hq_at(i, 0) + 4.0 * h.hq_at(i, 1) - h.hq_at(i, 2)) / two_dp;
        if (!(hqp < -tau_geom)) rep.hqp_negative_bottom = false;
    }

    rep.hqq_negative_left = true;
    rep.hqq_positive_right = true;
    for (int j = 1; j < np; ++j) {
        if (!(hqq_at(h, 0, j) < -tau_geom)) rep.hqq_negative_left = false;
        if (!(hqq_at(h, nq, j) > tau_geom)) rep.hqq_positive_right = false;
    }

    auto hqqp_bottom = [&](int i) {
        return (-3.0 * hqq_at(h, i, 0) + 4.0 * hqq_at(h, i, 1) - hqq_at(h, i, 2)) / two_dp;
    };
    auto hqqp_top = [&](int i) {
        return (3.0 * hqq_at(h, i, np) - 4.0 * hqq_at(h, i, np - 1) + hqq_at(h, i, np - 2)) /
               two_dp;
    };
    rep.corner_bottom_left = hqqp_bottom(0) < -tau_geom;
    rep.corner_bottom_right = hqqp_bottom(nq) > tau_geom;
    rep.corner_top_left = hqq_at(h, 0, np) < -tau_geom || hqqp_top(0) > tau_geom;
    rep.corner_top_right = hqq_at(h, nq, np) > tau_geom || hqqp_top(nq) < -tau_geom;
    return rep;
}

} // namespace rotwave
