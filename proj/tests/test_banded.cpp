#include "rotwave/banded.hpp"

#include "rotwave/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace rotwave;

namespace {

// dense Gaussian elimination with partial pivoting, test-local oracle
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = int(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

} // namespace

TEST_SUITE("banded") {

TEST_CASE("identity returns the rhs") {
    const int n = 17;
    BandedMatrix eye(n, 2, 2);
    for (int i = 0; i < n; ++i) eye.add(i, i, 1.0);
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = std::sin(i + 1.0);
    const std::vector<double> x = linear_solve(eye, rhs);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(rhs[i]).epsilon(1e-15));
}

TEST_CASE("random banded system agrees with the dense oracle") {
    const int n = 40, kl = 3, ku = 2;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    BandedMatrix m(n, kl, ku);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
            const double v = unif(rng) + (i == j ? 4.0 : 0.0); // keep it well-conditioned
            m.add(i, j, v);
            dense[i][j] = v;
        }
    }
    std::vector<double> rhs(n);
    for (double& v : rhs) v = unif(rng);

    const std::vector<double> x = linear_solve(m, rhs);
    const std::vector<double> xo = dense_solve(dense, rhs);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(xo[i]).epsilon(1e-10));

    SUBCASE("matvec agrees with dense multiply") {
        const std::vector<double> y = m.apply(x);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += dense[i][j] * x[j];
            CHECK(y[i] == doctest::Approx(s).epsilon(1e-12));
        }
    }
}

TEST_CASE("singular matrices raise") {
    std::vector<double> rhs(6, 1.0);

    SUBCASE("zero row") {
        BandedMatrix z(6, 1, 1);
        for (int i = 0; i < 6; ++i) {
            if (i != 3) z.add(i, i, 2.0);
        }
        CHECK_THROWS_AS(linear_solve(z, rhs), SingularMatrixError);
    }

    SUBCASE("duplicated rows") {
        // rows 2 and 3 carry the same entries on a wide band
        BandedMatrix d(6, 2, 2);
        for (int i = 0; i < 6; ++i) d.add(i, i, 1.0);
        d.add(2, 2, -1.0); // row 2: (0, 0.7, 0, 0.7, 0, 0)
        d.add(2, 1, 0.7);
        d.add(2, 3, 0.7);
        d.add(3, 3, -1.0); // row 3: same pattern
        d.add(3, 1, 0.7);
        d.add(3, 2, 0.0);
        d.add(3, 3, 0.7);
        CHECK_THROWS_AS(linear_solve(d, rhs), SingularMatrixError);
    }
}

TEST_CASE("out-of-band writes are rejected") {
    BandedMatrix m(5, 1, 1);
    CHECK_THROWS_AS(m.add(0, 2, 1.0), std::out_of_range);
    CHECK_THROWS_AS(m.add(4, 2, 1.0), std::out_of_range);
    CHECK(m.get(0, 2) == 0.0);
}

} // TEST_SUITE
