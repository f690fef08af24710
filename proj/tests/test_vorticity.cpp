#include "rotwave/vorticity.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

using namespace rotwave;

namespace {

// independent quadrature oracle: composite Simpson, fixed fine mesh
double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    double s = f(a) + f(b);
    const double h = (b - a) / n;
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

} // namespace

TEST_SUITE("vorticity") {

TEST_CASE("gamma evaluation") {
    CHECK(VorticityModel::constant(0.0, 1.0).gamma(0.5) == 0.0);
    CHECK(VorticityModel::constant(-0.5, 1.0).gamma(0.3) == -0.5);
    CHECK(VorticityModel::affine(1.0, 2.0, 1.0).gamma(0.25) == doctest::Approx(1.5).epsilon(1e-15));

    const VorticityModel m = VorticityModel::constant(1.0, 1.0);
    CHECK_THROWS_AS(m.gamma(-0.1), std::domain_error);
    CHECK_THROWS_AS(m.gamma(1.1), std::domain_error);
}

TEST_CASE("big_gamma closed forms and quadrature oracle") {
    const double p0 = -1.0;

    SUBCASE("Gamma(0) is exactly zero") {
        for (const VorticityModel& m :
             {VorticityModel::constant(2.3, 1.0), VorticityModel::affine(1.0, 2.0, 1.0),
              VorticityModel::polynomial({0.3, -1.0, 0.7}, 1.0)}) {
            CHECK(m.big_gamma(0.0) == 0.0);
        }
    }

    SUBCASE("constant") {
        const VorticityModel m = VorticityModel::constant(-0.7, 1.0);
        for (double p : {-0.25, -0.5, -1.0}) {
            CHECK(m.big_gamma(p) == doctest::Approx(-0.7 * p).epsilon(1e-14));
        }
    }

    SUBCASE("affine matches the worked value") {
        const VorticityModel m = VorticityModel::affine(1.0, 2.0, 1.0);
        CHECK(m.big_gamma(-0.5) == doctest::Approx(-0.75).epsilon(1e-13));
    }

    SUBCASE("quadrature oracle agrees to 1e-10 relative") {
        const std::vector<VorticityModel> models = {
            VorticityModel::constant(0.8, 1.0),
            VorticityModel::affine(-0.4, 1.3, 1.0),
            VorticityModel::polynomial({0.2, -1.1, 0.5, 2.0}, 1.0),
        };
        for (const VorticityModel& m : models) {
            for (double p : {-0.3, -0.77, (double)p0}) {
                const double oracle = simpson([&](double s) { return m.gamma(-s); }, p0, p) -
                                      simpson([&](double s) { return m.gamma(-s); }, p0, 0.0);
                // oracle = int_0^p gamma(-s) ds assembled from two [p0,.] pieces
                const double got = m.big_gamma(p);
                CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("gamma_extrema") {
    CHECK(VorticityModel::constant(0.0, 1.0).gamma_extrema(-1.0) ==
          std::pair<double, double>{0.0, 0.0});

    auto [lo1, hi1] = VorticityModel::constant(1.0, 1.0).gamma_extrema(-1.0);
    CHECK(lo1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(hi1 == doctest::Approx(0.0).epsilon(1e-12));

    auto [lo2, hi2] = VorticityModel::constant(-1.0, 1.0).gamma_extrema(-1.0);
    CHECK(lo2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hi2 == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("extrema bracket Gamma on a 10x finer grid") {
        const VorticityModel m = VorticityModel::polynomial({1.0, -6.0, 6.0}, 1.0);
        const double p0 = -1.0;
        auto [lo, hi] = m.gamma_extrema(p0);
        const int n = 20480;
        for (int k = 0; k <= n; ++k) {
            const double p = p0 * double(k) / n;
            const double v = m.big_gamma(p);
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
        CHECK(lo <= 0.0); // Gamma(0) = 0 is always attained
    }
}

TEST_CASE("amplitude condition") {
    SUBCASE("irrotational: zero integrand") {
        const VorticityReport rep =
            check_amplitude_condition(VorticityModel::constant(0.0, 1.0), -1.0, 9.8);
        CHECK(rep.condition_lhs == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rep.condition_rhs == doctest::Approx(9.8));
        CHECK(rep.admissible);
        CHECK(rep.favorable);
    }

    SUBCASE("sign classification") {
        CHECK(check_amplitude_condition(VorticityModel::constant(-0.5, 1.0), -1.0, 9.8).favorable);
        CHECK_FALSE(
            check_amplitude_condition(VorticityModel::affine(0.0, 1.0, 1.0), -1.0, 9.8).favorable);
    }

    SUBCASE("constant omega=3 has closed-form lhs") {
        // Gamma = 3p, so 2Gamma - 2Gamma_0 = 6(p+1) and the integral is
        // sqrt(6) (2/7 + 12/5) on p0 = -1.
        const double lhs_exact = std::sqrt(6.0) * (2.0 / 7.0 + 12.0 / 5.0);
        const VorticityReport rep =
            check_amplitude_condition(VorticityModel::constant(3.0, 1.0), -1.0, 9.8);
        CHECK(rep.condition_lhs == doctest::Approx(lhs_exact).epsilon(1e-8));
        CHECK(check_amplitude_condition(VorticityModel::constant(3.0, 1.0), -1.0, 6.0).admissible ==
              false);
        CHECK(check_amplitude_condition(VorticityModel::constant(3.0, 1.0), -1.0, 7.0).admissible);
    }

    SUBCASE("admissible is monotone in g") {
        const VorticityModel m = VorticityModel::constant(3.0, 1.0);
        bool seen_admissible = false;
        for (double g = 5.0; g <= 9.0; g += 0.25) {
            const bool adm = check_amplitude_condition(m, -1.0, g).admissible;
            if (seen_admissible) CHECK(adm);
            seen_admissible = seen_admissible || adm;
        }
        CHECK(seen_admissible);
    }
}

TEST_CASE("tabulated model") {
    // samples of a favorable vorticity: gamma decreasing and negative
    std::vector<double> psi, gam;
    for (int k = 0; k <= 16; ++k) {
        const double x = k / 16.0;
        psi.push_back(x);
        gam.push_back(-0.2 - 0.5 * x * x);
    }
    const VorticityModel m = VorticityModel::tabulated(psi, gam);

    CHECK(m.kind() == VorticityKind::tabulated);
    CHECK(m.big_gamma(0.0) == 0.0);
    CHECK(m.gamma(0.5) == doctest::Approx(-0.2 - 0.5 * 0.25).epsilon(1e-3));

    SUBCASE("integral route matches quadrature of the interpolant") {
        const double oracle = simpson([&](double s) { return m.gamma(-s); }, -1.0, -0.6) -
                              simpson([&](double s) { return m.gamma(-s); }, -1.0, 0.0);
        CHECK(m.big_gamma(-0.6) == doctest::Approx(oracle).epsilon(1e-10));
    }

    SUBCASE("classified favorable") {
        CHECK(check_amplitude_condition(m, -1.0, 9.8).favorable);
    }

    SUBCASE("bad tables are rejected") {
        CHECK_THROWS_AS(VorticityModel::tabulated({0.0, 0.5}, {1.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(VorticityModel::tabulated({0.0, 0.5, 0.4}, {1.0, 1.0, 1.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(VorticityModel::tabulated({0.1, 0.5, 0.9}, {1.0, 1.0, 1.0}),
                        std::invalid_argument);
    }
}

} // TEST_SUITE
