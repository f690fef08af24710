#include "rotwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotwave {

Grid::Grid(int nq_cells, int np_cells, double p_bottom)
    : nq(nq_cells), np(np_cells), p0(p_bottom) {
    if (nq < 8 || np < 8) throw std::invalid_argument("Grid: nq and np must be >= 8");
    if (!(p0 < 0.0)) throw std::invalid_argument("Grid: p0 must be negative");
    dq = std::numbers::pi / nq;
    dp = -p0 / np;
}

HeightField::HeightField(const Grid& grid)
    : grid_(grid), v_((grid.nq + 1) * (grid.np + 1), 0.0) {}

double HeightField::mirrored(int i, int j) const {
    if (i < 0) i = -i;
    if (i > grid_.nq) i = 2 * grid_.nq - i;
    return v_[idx(i, j)];
}

std::vector<double> HeightField::to_unknowns() const {
    std::vector<double> x(grid_.unknowns());
    int k = 0;
    for (int j = 1; j <= grid_.np; ++j)
        for (int i = 0; i <= grid_.nq; ++i) x[k++] = (*this)(i, j);
    return x;
}

void HeightField::set_unknowns(const std::vector<double>& x) {
    if (int(x.size()) != grid_.unknowns())
        throw std::invalid_argument("HeightField::set_unknowns: size mismatch");
    int k = 0;
    for (int j = 1; j <= grid_.np; ++j)
        for (int i = 0; i <= grid_.nq; ++i) at(i, j) = x[k++];
}

double HeightField::hp_at(int i, int j) const {
    const double dp = grid_.dp;
    if (j == 0) return (-3.0 * (*this)(i, 0) + 4.0 * (*this)(i, 1) - (*this)(i, 2)) / (2.0 * dp);
    if (j == grid_.np)
        return (3.0 * (*this)(i, j) - 4.0 * (*this)(i, j - 1) + (*this)(i, j - 2)) / (2.0 * dp);
    return ((*this)(i, j + 1) - (*this)(i, j - 1)) / (2.0 * dp);
}

double HeightField::hq_at(int i, int j) const {
    return (mirrored(i + 1, j) - mirrored(i - 1, j)) / (2.0 * grid_.dq);
}

double HeightField::min_hp() const {
    double m = hp_at(0, 0);
    for (int j = 0; j <= grid_.np; ++j)
        for (int i = 0; i <= grid_.nq; ++i) m = std::min(m, hp_at(i, j));
    return m;
}

double HeightField::max_hp() const {
    double m = hp_at(0, 0);
    for (int j = 0; j <= grid_.np; ++j)
        for (int i = 0; i <= grid_.nq; ++i) m = std::max(m, hp_at(i, j));
    return m;
}

HeightField reflect_q(const HeightField& h) {
    HeightField r(h.grid());
    for (int j = 0; j <= h.grid().np; ++j)
        for (int i = 0; i <= h.grid().nq; ++i) r.at(i, j) = h(h.grid().nq - i, j);
    return r;
}

} // namespace rotwave
