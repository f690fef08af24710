#pragma once

#include <vector>

namespace rotwave {

/// Square banded matrix with kl sub- and ku super-diagonals, stored in the
/// LAPACK general-band layout (with room for factorization fill-in).
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    int n() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }

    /// Accumulates v into (row, col); out-of-band indices are an error.
    void add(int row, int col, double v);
    double get(int row, int col) const;

    std::vector<double> apply(const std::vector<double>& x) const;

    /// max-row-sum norm (infinity norm)
    double norm_inf() const;
    /// max-column-sum norm (1-norm), as needed by the condition estimator
    double norm_one() const;

    std::vector<double>& storage() { return ab_; }
    const std::vector<double>& storage() const { return ab_; }
    int ldab() const { return ldab_; }

private:
    int n_, kl_, ku_, ldab_;
    std::vector<double> ab_; // column-major, entry (i,j) at ab_[j*ldab + kl + ku + i - j]
};

/// LU factorization of a banded matrix (partial pivoting). Factoring copies
/// the matrix, so the original stays usable for residuals and refinement.
class BandedLU {
public:
    explicit BandedLU(const BandedMatrix& m);

    bool singular() const { return singular_; }
    /// Reciprocal condition estimate in the 1-norm (0 when exactly singular).
    double rcond() const;

    /// Back-substitution; throws SingularMatrixError if factorization failed.
    std::vector<double> solve(const std::vector<double>& rhs) const;

private:
    int n_, kl_, ku_, ldab_;
    double anorm_;
    bool singular_ = false;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

/// Direct banded solve with an accuracy contract: one step of iterative
/// refinement, then the relative residual must be <= 1e-10 or a
/// SingularMatrixError with a condition diagnostic is thrown.
std::vector<double> linear_solve(const BandedMatrix& op, const std::vector<double>& rhs);

} // namespace rotwave
