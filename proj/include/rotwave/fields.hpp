#pragma once

#include "rotwave/grid.hpp"

#include <utility>
#include <vector>

namespace rotwave {

/// Physical wave reconstructed from a height field: surface elevation about
/// the mean water level, relative velocities u-c = -1/h_p and v = -h_q/h_p,
/// and the crest-to-trough displacement L(p) = h(0,p) - h(pi,p) per level.
struct WaveSolution {
    Grid grid;
    double depth = 0.0;               // q-mean of the top row
    std::vector<double> eta;          // nq+1 surface samples, zero mean
    std::vector<double> u_rel;        // (np+1)x(nq+1), node-major like HeightField
    std::vector<double> v;
    std::vector<double> displacement; // L(p_j), j=0..np
    HeightField h;

    double field_at(const std::vector<double>& f, int i, int j) const {
        return f[j * (grid.nq + 1) + i];
    }
    /// Streamline elevation y(q) = h(q,p_j) - d for one p-level.
    std::vector<double> streamline(int j) const;
};

/// Throws StagnationError if the discrete h_p is not positive everywhere.
WaveSolution reconstruct(const HeightField& h);

/// sup over the top row of |u_rel^2 + v^2 + 2g(eta+d) - Q|.
double bernoulli_surface_defect(const WaveSolution& ws, double g, double q_head);

struct GeometryReport {
    bool applicable = false; // false: amplitude below 10*tau, booleans unreliable
    double amplitude = 0.0;  // max eta - min eta
    bool eta_monotone = false;       // eta' < -tau at interior surface nodes
    bool v_positive = false;         // v > tau on the open interior and top row
    int inflection_count = 0;        // sign changes of eta'' on (0,pi)
    std::vector<double> inflection_locations;
    double crest_curvature = 0.0;    // eta''(0)
    double trough_curvature = 0.0;   // eta''(pi)
    bool displacement_monotone = false; // L strictly increasing in p
    bool nodal_hq = false;           // h_q < -tau in D and on the top edge
    double tau = 0.0;
};

/// Surface diagnostics with strictness tested against the noise floor
/// tau_geom. Parity is enforced structurally: eta'(0) = eta'(pi) = 0.
GeometryReport surface_geometry(const WaveSolution& ws, double tau_geom = 1e-8);

/// L(p_j) per level and a monotonicity flag (forward differences > -tau).
/// When `favorable` is false the flag is informational only.
std::pair<std::vector<double>, bool> displacement_profile(const WaveSolution& ws, bool favorable,
                                                          double tau_geom = 1e-8);

/// Sign conditions on h_q and its derivatives over the named boundary pieces.
struct NodalReport {
    bool trivial_input = false;    // max |h_q| below tau: nothing to classify
    bool hq_negative = false;      // h_q < 0 in D and on the top edge
    bool hqp_negative_bottom = false;
    bool hqq_negative_left = false;
    bool hqq_positive_right = false;
    bool corner_bottom_left = false;  // h_qqp(0,p0) < 0
    bool corner_bottom_right = false; // h_qqp(pi,p0) > 0
    bool corner_top_left = false;     // h_qq(0,0) < 0 or h_qqp(0,0) > 0
    bool corner_top_right = false;    // h_qq(pi,0) > 0 or h_qqp(pi,0) < 0
    bool all() const {
        return hq_negative && hqp_negative_bottom && hqq_negative_left && hqq_positive_right &&
               corner_bottom_left && corner_bottom_right && corner_top_left && corner_top_right;
    }
};

NodalReport nodal_pattern(const HeightField& h, double tau_geom = 1e-8);

} // namespace rotwave
