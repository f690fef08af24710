#pragma once

#include "rotwave/dispersion.hpp"
#include "rotwave/grid.hpp"
#include "rotwave/heightpde.hpp"
#include "rotwave/vorticity.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rotwave {

struct ContinuationParams {
    double ds0 = 1e-3;
    double ds_min = 1e-6;
    double ds_max = 2e-2;
    int max_steps = 200;
    double delta = 1e-3;        // O_delta margin on h_p and the surface bound
    double hp_cap = 0.0;        // <= 0: resolved to hp_cap_factor * H_p(0; lambda*)
    double hp_cap_factor = 50.0;
    double newton_tol = 1e-10;
    int newton_max_iter = 25;
};

enum class Nu { plus, minus };
enum class Termination { stagnation_threshold, left_O_delta, step_limit, solver_failure };

std::string to_string(Nu nu);
std::string to_string(Termination t);

/// One accepted continuation state.
struct BranchPoint {
    double s = 0.0;      // accumulated arclength, signed by nu
    double q_head = 0.0; // Q
    HeightField h;
    double amplitude = 0.0; // crest-minus-trough |h(0,top) - h(pi,top)|
    double min_hp = 0.0;
    double max_hp = 0.0;
    double min_cu = 0.0; // min over nodes of 1/h_p = c - u (stagnation proxy)
    NewtonReport newton;
};

struct Branch {
    Nu nu = Nu::plus;
    std::vector<BranchPoint> points; // points[0] is the bifurcation state
    Termination termination = Termination::step_limit;
};

/// Tangent (Qdot, hdot) = (0, phi*) at the bifurcation point, normalized so
/// the combined Euclidean norm over the unknowns is 1 (nu=+ orientation:
/// hdot(0, top) > 0).
std::pair<double, HeightField> initial_tangent(const BifurcationPoint& bp, const Grid& grid);

/// Pseudo-arclength predictor-corrector along K^nu, with the bordered system
///   F(Q,h) = 0,
///   w <hdot_prev, h - h_pred> + Qdot_prev (Q - Q_pred) = 0,  w = 1/#unknowns.
/// Steps adapt: halve on corrector failure, grow x1.3 after successes taking
/// <= 3 Newton iterations, clamped to [ds_min, ds_max].
Branch continue_branch(const VorticityModel& model, double g, const BifurcationPoint& bp,
                       Nu nu, const Grid& grid, const ContinuationParams& params);

/// Sup-norm distance to the laminar family at matching head: root-finds
/// lambda with Q(lambda) = q_head and returns the smallest
/// ||h - H(.;lambda)||_sup over the matching roots, +infinity when none.
double laminar_distance(const HeightField& h, const VorticityModel& model, double g,
                        double q_head);

struct BranchSummaryRow {
    double s, q_head, amplitude, min_hp, max_hp, min_cu;
    int newton_iterations;
};

std::vector<BranchSummaryRow> branch_summary(const Branch& branch);

} // namespace rotwave
