#pragma once

#include "rotwave/grid.hpp"
#include "rotwave/vorticity.hpp"

#include <vector>

namespace rotwave {

/// One shot of the cosine-mode reduction of the linearized problem:
/// (a^3 M')' = a M with a(p) = sqrt(lambda + 2 Gamma(p)), M(p0)=0, M'(p0)=1.
/// The free-surface condition g M(0) = lambda^{3/2} M'(0) holds exactly at a
/// bifurcation point; `mismatch` is its defect g*M(0) - lambda^{3/2}*M'(0).
struct SturmLiouvilleState {
    double lambda = 0.0;
    std::vector<double> m_profile; // M(p_j), j=0..np
    double mprime_end = 0.0;       // M'(0)
    double mismatch = 0.0;
};

/// Integrates the reduction with a fixed-step classical 4th-order scheme on
/// the uniform np-cell grid. Requires lambda > -2 Gamma_0 and np >= 16.
SturmLiouvilleState sl_shoot(const VorticityModel& model, double lambda, double p0, double g,
                             int np);

/// Bifurcation point of the linearized problem (fundamental cos q mode).
struct BifurcationPoint {
    double lambda_star = 0.0;
    double q_star = 0.0; // Q(lambda_star)
    double depth = 0.0;  // H(0; lambda_star)
    int np = 0;
    std::vector<double> eigen_m;     // M normalized to sup-norm 1, M(0) = 1
    int extra_sign_changes = 0;      // further mismatch sign changes seen past the root
};

/// Locates the smallest lambda* where the mismatch changes sign, by geometric
/// bracketing followed by bisection and secant polish
/// (|dlambda|/lambda* < 1e-10). Throws NoBifurcationError if no sign change
/// is bracketed up to the scan cap.
BifurcationPoint find_lambda_star(const VorticityModel& model, double p0, double g, int np);

/// phi*(q,p) = M(p) cos(q) sampled on the grid. Requires grid.np == bp.np
/// and grid.p0 consistent with the shot.
HeightField phi_star_field(const BifurcationPoint& bp, const Grid& grid);

} // namespace rotwave
