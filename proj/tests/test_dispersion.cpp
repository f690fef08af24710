#include "rotwave/dispersion.hpp"

#include "rotwave/errors.hpp"
#include "rotwave/laminar.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rotwave;

namespace {

// closed-form dispersion relation for gamma = 0: lambda = g tanh(|p0|/sqrt(lambda));
// independent bisection oracle
double irrotational_lambda_star(double p0, double g) {
    auto f = [&](double lam) { return lam - g * std::tanh(-p0 / std::sqrt(lam)); };
    double a = 1e-6, b = 10.0 * g;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if ((f(a) < 0.0) == (f(m) < 0.0)) a = m;
        else b = m;
    }
    return 0.5 * (a + b);
}

} // namespace

TEST_SUITE("dispersion") {

TEST_CASE("irrotational shot matches the closed-form solution") {
    const VorticityModel m = VorticityModel::constant(0.0, 1.0);
    const double p0 = -1.0, g = 9.8, lambda = 3.0;
    const int np = 128;
    const SturmLiouvilleState st = sl_shoot(m, lambda, p0, g, np);

    REQUIRE(st.m_profile.size() == std::size_t(np + 1));
    CHECK(st.m_profile[0] == 0.0);

    // M(p) = sqrt(lambda) sinh((p - p0)/sqrt(lambda))
    const double rt = std::sqrt(lambda);
    for (int j = 0; j <= np; j += 16) {
        const double p = p0 + (0.0 - p0) * j / np;
        CHECK(st.m_profile[j] ==
              doctest::Approx(rt * std::sinh((p - p0) / rt)).epsilon(1e-9));
    }
    CHECK(st.mprime_end == doctest::Approx(std::cosh(-p0 / rt)).epsilon(1e-9));

    const double mism_exact =
        g * rt * std::sinh(-p0 / rt) - lambda * rt * std::cosh(-p0 / rt);
    CHECK(st.mismatch == doctest::Approx(mism_exact).epsilon(1e-9));
}

TEST_CASE("mismatch signs on either side of lambda*") {
    const VorticityModel m = VorticityModel::constant(0.0, 1.0);
    CHECK(sl_shoot(m, 9.8, -1.0, 9.8, 64).mismatch < 0.0);
    CHECK(sl_shoot(m, 1.0, -1.0, 9.8, 64).mismatch > 0.0);
}

TEST_CASE("initial condition holds for any model") {
    for (const VorticityModel& m :
         {VorticityModel::constant(-0.5, 1.0), VorticityModel::affine(0.4, -1.0, 1.0)}) {
        CHECK(sl_shoot(m, 5.0, -1.0, 9.8, 64).m_profile[0] == 0.0);
    }
}

TEST_CASE("parameter validation") {
    const VorticityModel m = VorticityModel::constant(1.0, 1.0); // Gamma_0 = -1
    CHECK_THROWS_AS(sl_shoot(m, 1.5, -1.0, 9.8, 64), std::invalid_argument);
    CHECK_THROWS_AS(sl_shoot(m, 3.0, -1.0, 9.8, 8), std::invalid_argument);
}

TEST_CASE("find_lambda_star vs the tanh oracle") {
    const VorticityModel m = VorticityModel::constant(0.0, 1.0);
    const BifurcationPoint bp = find_lambda_star(m, -1.0, 9.8, 200);
    const double oracle = irrotational_lambda_star(-1.0, 9.8);
    CHECK(std::abs(bp.lambda_star - oracle) / oracle < 1e-5);
    CHECK(bp.q_star == doctest::Approx(bernoulli_head(m, bp.lambda_star, -1.0, 9.8)));

    SUBCASE("lambda* grows with g") {
        const double l1 = find_lambda_star(m, -1.0, 9.8, 64).lambda_star;
        const double l2 = find_lambda_star(m, -1.0, 4.0 * 9.8, 64).lambda_star;
        CHECK(l2 > l1);
        // the oracle agrees on the ordering
        CHECK(irrotational_lambda_star(-1.0, 4.0 * 9.8) > oracle);
    }
}

TEST_CASE("no bifurcation point for a grossly inadmissible model") {
    const VorticityModel m = VorticityModel::constant(8.0, 1.0);
    CHECK_THROWS_AS(find_lambda_star(m, -1.0, 2.0, 64), NoBifurcationError);
}

TEST_CASE("eigenfunction normalization and cosine parity") {
    const VorticityModel m = VorticityModel::constant(-0.5, 1.0);
    const BifurcationPoint bp = find_lambda_star(m, -1.0, 9.8, 32);
    CHECK(bp.eigen_m.front() == 0.0);
    CHECK(bp.eigen_m.back() == doctest::Approx(1.0));
    double sup = 0.0;
    for (double v : bp.eigen_m) sup = std::max(sup, std::abs(v));
    CHECK(sup == doctest::Approx(1.0));

    const Grid grid(16, 32, -1.0);
    const HeightField phi = phi_star_field(bp, grid);
    for (int j = 0; j <= grid.np; ++j) {
        for (int i = 0; i <= grid.nq; ++i) {
            // phi(q + pi, p) = -phi(q, p): on the half grid, i <-> nq - i
            CHECK(phi(i, j) == doctest::Approx(-phi(grid.nq - i, j)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(phi_star_field(bp, Grid(16, 20, -1.0)), std::invalid_argument);
}

TEST_CASE("Richardson ratio of lambda* is 4th order") {
    const VorticityModel m = VorticityModel::affine(-0.3, -0.6, 1.0);
    const double l1 = find_lambda_star(m, -1.0, 9.8, 32).lambda_star;
    const double l2 = find_lambda_star(m, -1.0, 9.8, 64).lambda_star;
    const double l3 = find_lambda_star(m, -1.0, 9.8, 128).lambda_star;
    const double ratio = std::abs(l1 - l2) / std::abs(l2 - l3);
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

TEST_CASE("computed M satisfies a 4th-order discretization of the reduction") {
    // residual of a^3 M'' + 3 a gamma(-p) M' - a M = 0 under 5-point stencils;
    // both the operator truncation and the integrator error are O(dp^4), so
    // halving the step must shrink the defect ~16x
    const VorticityModel m = VorticityModel::constant(-0.5, 1.0);
    const double p0 = -1.0, g = 9.8, lambda = 5.0;

    auto defect = [&](int np) {
        const SturmLiouvilleState st = sl_shoot(m, lambda, p0, g, np);
        const double dp = -p0 / np;
        double worst = 0.0;
        for (int j = 2; j <= np - 2; ++j) {
            const double p = p0 + j * dp;
            const double a2 = lambda + 2.0 * m.big_gamma(p);
            const double a = std::sqrt(a2);
            const auto& M = st.m_profile;
            const double d1 =
                (M[j - 2] - 8.0 * M[j - 1] + 8.0 * M[j + 1] - M[j + 2]) / (12.0 * dp);
            const double d2 = (-M[j - 2] + 16.0 * M[j - 1] - 30.0 * M[j] + 16.0 * M[j + 1] -
                               M[j + 2]) /
                              (12.0 * dp * dp);
            worst = std::max(worst,
                             std::abs(a2 * a * d2 + 3.0 * a * m.gamma(-p) * d1 - a * M[j]));
        }
        return worst;
    };

    const double r1 = defect(64);
    const double r2 = defect(128);
    const double ratio = r1 / r2;
    MESSAGE("defect(64) = ", r1, ", C = r/dp^4 = ", r1 / std::pow(1.0 / 64, 4));
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

} // TEST_SUITE
