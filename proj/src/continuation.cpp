#include "rotwave/continuation.hpp"

#include "rotwave/errors.hpp"
#include "rotwave/laminar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rotwave {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

struct Tangent {
    double tq = 0.0;
    std::vector<double> th;
};

// Solves [J b; w th^T tq] [dx dq]^T = [r s]^T by bordering with one
// refinement pass (the plain block elimination loses digits when J is nearly
// singular, which is exactly the situation at the first step off the
// bifurcation point).
struct BorderedSolver {
    const BandedMatrix& jac;
    const std::vector<double>& b;
    const Tangent& t;
    double w;
    BandedLU lu;
    std::vector<double> v; // J^{-1} b

    BorderedSolver(const BandedMatrix& jac_, const std::vector<double>& b_, const Tangent& t_,
                   double w_)
        : jac(jac_), b(b_), t(t_), w(w_), lu(jac_) {
        if (lu.singular()) throw SingularMatrixError("bordered corrector: singular Jacobian", 0.0);
        v = lu.solve(b);
    }

    std::pair<std::vector<double>, double> solve_once(const std::vector<double>& r,
                                                      double s) const {
        const std::vector<double> u = lu.solve(r);
        const double denom = t.tq - w * dot(t.th, v);
        if (denom == 0.0 || !std::isfinite(denom)) {
            throw SingularMatrixError("bordered corrector: degenerate border", 0.0);
        }
        const double dq = (s - w * dot(t.th, u)) / denom;
        std::vector<double> dx(u.size());
        for (std::size_t k = 0; k < u.size(); ++k) dx[k] = u[k] - dq * v[k];
        return {dx, dq};
    }

    std::pair<std::vector<double>, double> solve(const std::vector<double>& r, double s) const {
        auto [dx, dq] = solve_once(r, s);
        // residual of the bordered system, then one correction pass
        std::vector<double> jr = jac.apply(dx);
        std::vector<double> rr(r.size());
        for (std::size_t k = 0; k < r.size(); ++k) rr[k] = r[k] - jr[k] - b[k] * dq;
        const double sr = s - (w * dot(t.th, dx) + t.tq * dq);
        auto [ddx, ddq] = solve_once(rr, sr);
        for (std::size_t k = 0; k < dx.size(); ++k) dx[k] += ddx[k];
        return {dx, dq + ddq};
    }
};

struct CorrectorResult {
    bool converged = false;
    double q_head = 0.0;
    std::vector<double> x;
    NewtonReport report;
};

CorrectorResult correct(const VorticityModel& model, double g, const Grid& grid,
                        double q_pred, const std::vector<double>& x_pred, const Tangent& t,
                        const ContinuationParams& params) {
    const double w = 1.0 / double(grid.unknowns());
    CorrectorResult res;
    res.q_head = q_pred;
    res.x = x_pred;

    HeightField h(grid);
    h.set_unknowns(res.x);

    auto constraint = [&](const std::vector<double>& x, double q) {
        double acc = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) acc += t.th[k] * (x[k] - x_pred[k]);
        return w * acc + t.tq * (q - q_pred);
    };

    std::vector<double> r = residual(model, g, res.q_head, h);
    double nval = constraint(res.x, res.q_head);
    double norm = std::max(sup_norm(r), std::abs(nval));

    while (norm > params.newton_tol && res.report.iterations < params.newton_max_iter) {
        BandedMatrix jac = jacobian(model, g, res.q_head, h);
        const std::vector<double> b = dq_residual(model, g, res.q_head, h);

        std::vector<double> dx;
        double dq = 0.0;
        try {
            BorderedSolver bs(jac, b, t, w);
            std::vector<double> rhs(r.size());
            for (std::size_t k = 0; k < r.size(); ++k) rhs[k] = -r[k];
            std::tie(dx, dq) = bs.solve(rhs, -nval);
        } catch (const SingularMatrixError&) {
            res.report.final_residual = norm;
            return res;
        }

        double alpha = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= 8; ++halving) {
            std::vector<double> x_try(res.x.size());
            for (std::size_t k = 0; k < res.x.size(); ++k) x_try[k] = res.x[k] + alpha * dx[k];
            const double q_try = res.q_head + alpha * dq;
            h.set_unknowns(x_try);
            const std::vector<double> r_try = residual(model, g, q_try, h);
            const double n_try = constraint(x_try, q_try);
            const double norm_try = std::max(sup_norm(r_try), std::abs(n_try));
            if (norm_try < norm) {
                res.x = std::move(x_try);
                res.q_head = q_try;
                r = r_try;
                nval = n_try;
                norm = norm_try;
                accepted = true;
                if (halving > 0) res.report.damping_used = true;
                break;
            }
            alpha *= 0.5;
        }
        ++res.report.iterations;
        if (!accepted) break;
    }

    res.report.final_residual = norm;
    res.report.converged = norm <= params.newton_tol;
    res.converged = res.report.converged;
    return res;
}

BranchPoint make_point(double s, double q_head, HeightField h, NewtonReport rep) {
    BranchPoint pt;
    pt.s = s;
    pt.q_head = q_head;
    pt.amplitude = std::abs(h(0, h.grid().np) - h(h.grid().nq, h.grid().np));
    pt.min_hp = h.min_hp();
    pt.max_hp = h.max_hp();
    pt.min_cu = 1.0 / pt.max_hp;
    pt.newton = rep;
    pt.h = std::move(h);
    return pt;
}

bool inside_O_delta(const BranchPoint& pt, double g, double delta) {
    if (!(pt.min_hp > delta)) return false;
    const HeightField& h = pt.h;
    for (int i = 0; i <= h.grid().nq; ++i) {
        if (!(2.0 * g * h(i, h.grid().np) < pt.q_head - delta)) return false;
    }
    return true;
}

} // namespace

std::string to_string(Nu nu) { return nu == Nu::plus ? "+" : "-"; }

std::string to_string(Termination t) {
    switch (t) {
    case Termination::stagnation_threshold: return "stagnation_threshold";
    case Termination::left_O_delta: return "left_O_delta";
    case Termination::step_limit: return "step_limit";
    case Termination::solver_failure: return "solver_failure";
    }
    return "unknown";
}

std::pair<double, HeightField> initial_tangent(const BifurcationPoint& bp, const Grid& grid) {
    HeightField phi = phi_star_field(bp, grid);
    const std::vector<double> x = phi.to_unknowns();
    const double nrm = std::sqrt(dot(x, x)); // tq = 0, so the h-part carries the norm
    std::vector<double> xs(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) xs[k] = x[k] / nrm;
    phi.set_unknowns(xs);
    return {0.0, phi};
}

Branch continue_branch(const VorticityModel& model, double g, const BifurcationPoint& bp,
                       Nu nu, const Grid& grid, const ContinuationParams& params) {
    if (!(params.ds_min <= params.ds0 && params.ds0 <= params.ds_max) || !(params.delta > 0.0)) {
        throw std::invalid_argument("continue_branch: inconsistent step params");
    }
    const double nu_sign = nu == Nu::plus ? 1.0 : -1.0;

    Branch branch;
    branch.nu = nu;

    const LaminarFlow flow = build_laminar(model, bp.lambda_star, grid.p0, g, grid.np);
    HeightField h0 = laminar_field(flow, grid);

    NewtonReport rep0;
    rep0.converged = true;
    rep0.final_residual = sup_norm(residual(model, g, bp.q_star, h0));
    branch.points.push_back(make_point(0.0, bp.q_star, h0, rep0));

    const double hp_cap =
        params.hp_cap > 0.0 ? params.hp_cap
                            : params.hp_cap_factor / std::sqrt(bp.lambda_star); // H_p(0) = lambda^{-1/2}

    auto [tq0, th0_field] = initial_tangent(bp, grid);
    Tangent t;
    t.tq = tq0 * nu_sign;
    t.th = th0_field.to_unknowns();
    for (double& v : t.th) v *= nu_sign;

    std::vector<double> x_cur = h0.to_unknowns();
    double q_cur = bp.q_star;
    double s_cur = 0.0;
    double ds = params.ds0;
    branch.termination = Termination::step_limit;

    int accepted_steps = 0;
    while (accepted_steps < params.max_steps) {
        std::vector<double> x_pred(x_cur.size());
        for (std::size_t k = 0; k < x_cur.size(); ++k) x_pred[k] = x_cur[k] + ds * t.th[k];
        const double q_pred = q_cur + ds * t.tq;

        CorrectorResult res = correct(model, g, grid, q_pred, x_pred, t, params);
        if (!res.converged) {
            if (ds <= params.ds_min) {
                branch.termination = Termination::solver_failure;
                return branch;
            }
            ds = std::max(0.5 * ds, params.ds_min);
            continue;
        }

        HeightField h_new(grid);
        h_new.set_unknowns(res.x);
        const double s_new = s_cur + nu_sign * ds;
        BranchPoint pt = make_point(s_new, res.q_head, std::move(h_new), res.report);

        if (pt.min_hp <= 0.0 || !inside_O_delta(pt, g, params.delta)) {
            branch.termination = Termination::left_O_delta;
            return branch;
        }

        // secant tangent for the next step, oriented along the march
        Tangent t_new;
        t_new.th.resize(x_cur.size());
        for (std::size_t k = 0; k < x_cur.size(); ++k) t_new.th[k] = res.x[k] - x_cur[k];
        t_new.tq = res.q_head - q_cur;
        const double nrm = std::sqrt(dot(t_new.th, t_new.th) + t_new.tq * t_new.tq);
        for (double& v : t_new.th) v /= nrm;
        t_new.tq /= nrm;
        if (dot(t_new.th, t.th) + t_new.tq * t.tq < 0.0) {
            for (double& v : t_new.th) v = -v;
            t_new.tq = -t_new.tq;
        }
        t = std::move(t_new);

        x_cur = std::move(res.x);
        q_cur = pt.q_head;
        s_cur = s_new;
        ++accepted_steps;

        const bool capped = pt.max_hp >= hp_cap;
        branch.points.push_back(std::move(pt));
        if (capped) {
            branch.termination = Termination::stagnation_threshold;
            return branch;
        }

        if (branch.points.back().newton.iterations <= 3) {
            ds = std::min(ds * 1.3, params.ds_max);
        }
    }
    return branch;
}

double laminar_distance(const HeightField& h, const VorticityModel& model, double g,
                        double q_head) {
    const Grid& grid = h.grid();
    const double gamma0 = model.gamma_extrema(grid.p0).first;
    const double lo = -2.0 * gamma0 + 1e-8;
    const double inf = std::numeric_limits<double>::infinity();
    if (!(q_head > lo)) return inf; // Q(lambda) > lambda > lo for every laminar flow

    auto head = [&](double lambda) { return bernoulli_head(model, lambda, grid.p0, g) - q_head; };

    const int nscan = 256;
    const double hi = q_head;
    std::vector<double> roots;
    double prev_l = lo, prev_f = head(lo);
    for (int k = 1; k <= nscan; ++k) {
        const double lam = lo + (hi - lo) * double(k) / nscan;
        const double f = head(lam);
        if ((prev_f <= 0.0 && f >= 0.0) || (prev_f >= 0.0 && f <= 0.0)) {
            double a = prev_l, b = lam, fa = prev_f;
            for (int it = 0; it < 100 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = head(mid);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_l = lam;
        prev_f = f;
    }
    if (roots.empty()) return inf;

    double best = inf;
    for (double lam : roots) {
        const LaminarFlow flow = build_laminar(model, lam, grid.p0, g, grid.np, 0.0);
        double d = 0.0;
        for (int j = 0; j <= grid.np; ++j) {
            for (int i = 0; i <= grid.nq; ++i) {
                d = std::max(d, std::abs(h(i, j) - flow.h_profile[j]));
            }
        }
        best = std::min(best, d);
    }
    return best;
}

std::vector<BranchSummaryRow> branch_summary(const Branch& branch) {
    std::vector<BranchSummaryRow> rows;
    rows.reserve(branch.points.size());
    for (const BranchPoint& pt : branch.points) {
        rows.push_back({pt.s, pt.q_head, pt.amplitude, pt.min_hp, pt.max_hp, pt.min_cu,
                        pt.newton.iterations});
    }
    return rows;
}

} // namespace rotwave
