#pragma once

#include "rotwave/banded.hpp"
#include "rotwave/grid.hpp"
#include "rotwave/laminar.hpp"
#include "rotwave/vorticity.hpp"

#include <utility>
#include <vector>

namespace rotwave {

/// Outcome of a damped Newton solve.
struct NewtonReport {
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    bool damping_used = false;
};

/// Discrete F(Q,h) on the unknown nodes (rows j=1..np; bottom row is the
/// Dirichlet row). Interior nodes carry the second-order central-difference
///   F1 = (1+h_q^2) h_pp - 2 h_p h_q h_pq + h_p^2 h_qq + gamma(-p) h_p^3,
/// top-row nodes carry
///   F2 = 1 + h_q^2 + (2 g h - Q) h_p^2
/// with a 3-point one-sided h_p. Lateral edges use even reflection ghosts.
std::vector<double> residual(const VorticityModel& model, double g, double q_head,
                             const HeightField& h);

/// Exact derivative of the discrete residual with respect to the nodal
/// unknowns, assembled as a banded operator (kl = 2(nq+1), ku = nq+2).
BandedMatrix jacobian(const VorticityModel& model, double g, double q_head,
                      const HeightField& h);

/// dF/dQ: zero on interior rows, -h_p^2 (one-sided) on the top row.
std::vector<double> dq_residual(const VorticityModel& model, double g, double q_head,
                                const HeightField& h);

/// Damped Newton iteration at fixed Q: full steps with halving on
/// residual-norm increase (max 8 halvings) until the sup-norm residual is
/// <= tol or max_iter is reached. A result with discrete h_p <= 0 anywhere is
/// declared failed (stagnation breach).
std::pair<HeightField, NewtonReport> newton_solve(const VorticityModel& model, double g,
                                                  double q_head, const HeightField& h0,
                                                  double tol = 1e-10, int max_iter = 25);

/// Samples a laminar flow onto a grid (constant in q). Requires the flow
/// profile resolution to match grid.np and the same p0.
HeightField laminar_field(const LaminarFlow& flow, const Grid& grid);

double sup_norm(const std::vector<double>& v);

} // namespace rotwave
