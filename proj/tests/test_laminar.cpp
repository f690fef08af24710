#include "rotwave/laminar.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rotwave;

TEST_SUITE("laminar") {

TEST_CASE("irrotational closed form H(p) = (p - p0)/sqrt(lambda)") {
    const VorticityModel m = VorticityModel::constant(0.0, 1.0);
    CHECK(laminar_height(m, 1.0, -1.0, -1.0) == 0.0);
    CHECK(laminar_height(m, 1.0, -1.0, -0.25) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(laminar_height(m, 1.0, -1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(laminar_height(m, 4.0, -1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("constant vorticity closed form") {
    // gamma = 1: Gamma(p) = p, H(0;4) = int (4+2s)^{-1/2} = 2 - sqrt(2)
    const VorticityModel m = VorticityModel::constant(1.0, 1.0);
    CHECK(laminar_height(m, 4.0, -1.0, 0.0) ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(bernoulli_head(m, 4.0, -1.0, 9.8) ==
          doctest::Approx(4.0 + 19.6 * (2.0 - std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("bernoulli head, irrotational") {
    const VorticityModel m = VorticityModel::constant(0.0, 1.0);
    CHECK(bernoulli_head(m, 1.0, -1.0, 9.8) == doctest::Approx(20.6).epsilon(1e-12));
    CHECK(bernoulli_head(m, 4.0, -1.0, 9.8) == doctest::Approx(13.8).epsilon(1e-12));
}

TEST_CASE("singular lambda rejected") {
    // gamma = 1 on p0 = -1: Gamma_0 = -1, so lambda must exceed 2
    const VorticityModel m = VorticityModel::constant(1.0, 1.0);
    CHECK_THROWS_AS(laminar_height(m, 1.9, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_laminar(m, 2.0, -1.0, 9.8, 16), std::invalid_argument);
    CHECK_NOTHROW(build_laminar(m, 2.1, -1.0, 9.8, 16));
}

TEST_CASE("build_laminar samples and invariants") {
    const VorticityModel m0 = VorticityModel::constant(0.0, 1.0);
    const LaminarFlow f = build_laminar(m0, 1.0, -1.0, 9.8, 10);

    REQUIRE(f.h_profile.size() == 11);
    for (int j = 0; j <= 10; ++j) {
        const double p = -1.0 + 0.1 * j;
        CHECK(f.h_profile[j] == doctest::Approx(p + 1.0).epsilon(1e-12));
    }
    CHECK(f.hp_profile[10] == doctest::Approx(1.0 / std::sqrt(f.lambda)).epsilon(1e-14));
    CHECK(f.depth == f.h_profile.back());
    CHECK(f.q_head == doctest::Approx(f.lambda + 2.0 * 9.8 * f.depth).epsilon(1e-15));

    SUBCASE("surface identity 1 + (2gd - Q) Hp(0)^2 = 0") {
        for (const VorticityModel& m :
             {m0, VorticityModel::constant(-0.5, 1.0), VorticityModel::affine(0.3, -0.8, 1.0)}) {
            const LaminarFlow flow = build_laminar(m, 3.7, -1.0, 9.8, 64);
            const double hp0 = flow.hp_profile.back();
            const double defect = 1.0 + (2.0 * flow.g * flow.depth - flow.q_head) * hp0 * hp0;
            CHECK(std::abs(defect) < 1e-10);
        }
    }

    SUBCASE("strictly increasing profile") {
        const LaminarFlow flow = build_laminar(VorticityModel::constant(-0.5, 1.0), 2.5, -1.0,
                                               9.8, 100);
        for (std::size_t j = 0; j + 1 < flow.h_profile.size(); ++j) {
            CHECK(flow.h_profile[j + 1] - flow.h_profile[j] > 0.0);
        }
        for (double hp : flow.hp_profile) CHECK(hp > 0.0);
    }
}

} // TEST_SUITE
