#include "rotwave/banded.hpp"

#include "rotwave/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotwave {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(std::size_t(ldab_) * n, 0.0) {
    if (n <= 0 || kl < 0 || ku < 0) throw std::invalid_argument("BandedMatrix: bad dimensions");
}

void BandedMatrix::add(int row, int col, double v) {
    if (row < 0 || row >= n_ || col < 0 || col >= n_ || col - row > ku_ || row - col > kl_) {
        throw std::out_of_range("BandedMatrix::add: entry outside the band");
    }
    ab_[std::size_t(col) * ldab_ + kl_ + ku_ + row - col] += v;
}

double BandedMatrix::get(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_ || col - row > ku_ || row - col > kl_) {
        return 0.0;
    }
    return ab_[std::size_t(col) * ldab_ + kl_ + ku_ + row - col];
}

std::vector<double> BandedMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (int col = 0; col < n_; ++col) {
        const double xc = x[col];
        if (xc == 0.0) continue;
        const int r0 = std::max(0, col - ku_);
        const int r1 = std::min(n_ - 1, col + kl_);
        for (int row = r0; row <= r1; ++row) {
            y[row] += ab_[std::size_t(col) * ldab_ + kl_ + ku_ + row - col] * xc;
        }
    }
    return y;
}

double BandedMatrix::norm_inf() const {
    std::vector<double> rowsum(n_, 0.0);
    for (int col = 0; col < n_; ++col) {
        const int r0 = std::max(0, col - ku_);
        const int r1 = std::min(n_ - 1, col + kl_);
        for (int row = r0; row <= r1; ++row) {
            rowsum[row] += std::abs(ab_[std::size_t(col) * ldab_ + kl_ + ku_ + row - col]);
        }
    }
    return *std::max_element(rowsum.begin(), rowsum.end());
}

double BandedMatrix::norm_one() const {
    double m = 0.0;
    for (int col = 0; col < n_; ++col) {
        double s = 0.0;
        const int r0 = std::max(0, col - ku_);
        const int r1 = std::min(n_ - 1, col + kl_);
        for (int row = r0; row <= r1; ++row) {
            s += std::abs(ab_[std::size_t(col) * ldab_ + kl_ + ku_ + row - col]);
        }
        m = std::max(m, s);
    }
    return m;
}

BandedLU::BandedLU(const BandedMatrix& m)
    : n_(m.n()), kl_(m.kl()), ku_(m.ku()), ldab_(m.ldab()), anorm_(m.norm_one()),
      ab_(m.storage()), ipiv_(m.n()) {
    const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab_,
                                           ipiv_.data());
    if (info < 0) throw std::invalid_argument("BandedLU: bad argument to dgbtrf");
    singular_ = info > 0;
}

double BandedLU::rcond() const {
    if (singular_) return 0.0;
    double rc = 0.0;
    const lapack_int info = LAPACKE_dgbcon(LAPACK_COL_MAJOR, '1', n_, kl_, ku_, ab_.data(), ldab_,
                                           ipiv_.data(), anorm_, &rc);
    if (info != 0) return 0.0;
    return rc;
}

std::vector<double> BandedLU::solve(const std::vector<double>& rhs) const {
    if (int(rhs.size()) != n_) throw std::invalid_argument("BandedLU::solve: size mismatch");
    if (singular_) throw SingularMatrixError("BandedLU: exact zero pivot in factorization", 0.0);
    std::vector<double> x = rhs;
    const lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(),
                                           ldab_, ipiv_.data(), x.data(), n_);
    if (info != 0) throw NumericError("BandedLU::solve: dgbtrs failed");
    return x;
}

std::vector<double> linear_solve(const BandedMatrix& op, const std::vector<double>& rhs) {
    if (int(rhs.size()) != op.n()) throw std::invalid_argument("linear_solve: size mismatch");
    BandedLU lu(op);
    if (lu.singular()) {
        throw SingularMatrixError("linear_solve: numerically singular matrix", 0.0);
    }
    std::vector<double> x = lu.solve(rhs);

    auto residual_norm = [&](const std::vector<double>& xv, std::vector<double>& r) {
        r = op.apply(xv);
        double rn = 0.0;
        for (int i = 0; i < op.n(); ++i) {
            r[i] = rhs[i] - r[i];
            rn = std::max(rn, std::abs(r[i]));
        }
        return rn;
    };

    std::vector<double> r;
    double rn = residual_norm(x, r);
    double xn = 0.0, bn = 0.0;
    for (int i = 0; i < op.n(); ++i) {
        xn = std::max(xn, std::abs(x[i]));
        bn = std::max(bn, std::abs(rhs[i]));
    }
    const double scale = op.norm_inf() * xn + bn;
    if (rn > 1e-12 * scale) {
        const std::vector<double> dx = lu.solve(r);
        for (int i = 0; i < op.n(); ++i) x[i] += dx[i];
        rn = residual_norm(x, r);
        if (rn > 1e-10 * scale) {
            throw SingularMatrixError("linear_solve: residual contract missed", lu.rcond());
        }
    }
    return x;
}

} // namespace rotwave
