#pragma once

#include <vector>

namespace rotwave {

/// Uniform node grid on the half-period rectangle [0,pi] x [p0,0].
/// nq cells in q, np cells in p; nodes (q_i, p_j) with i=0..nq, j=0..np,
/// j=0 the bottom (p=p0) and j=np the top (p=0).
struct Grid {
    int nq = 0;
    int np = 0;
    double p0 = 0.0;
    double dq = 0.0;
    double dp = 0.0;

    Grid() = default;
    Grid(int nq_cells, int np_cells, double p_bottom);

    double q(int i) const { return i * dq; }
    double p(int j) const { return p0 + j * dp; }
    int unknowns() const { return (nq + 1) * np; } // bottom Dirichlet row eliminated

    bool operator==(const Grid& other) const {
        return nq == other.nq && np == other.np && p0 == other.p0;
    }
};

/// Nodal values of the height function h(q,p) on a Grid. The bottom row is
/// the Dirichlet row h=0; the field represents the even 2*pi-periodic
/// extension (reflection at q=0 and q=pi).
class HeightField {
public:
    HeightField() = default;
    explicit HeightField(const Grid& grid);

    const Grid& grid() const { return grid_; }

    double operator()(int i, int j) const { return v_[idx(i, j)]; }
    double& at(int i, int j) { return v_[idx(i, j)]; }

    /// Value with even reflection in q (i may run past the lateral edges).
    double mirrored(int i, int j) const;

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    /// Flat unknown vector: rows j=1..np, i=0..nq (bottom row excluded).
    std::vector<double> to_unknowns() const;
    void set_unknowns(const std::vector<double>& x);
    static int unknown_index(const Grid& g, int i, int j) { return (j - 1) * (g.nq + 1) + i; }

    /// Discrete h_p: central differences inside, 3-point one-sided at the
    /// bottom and top rows.
    double hp_at(int i, int j) const;
    /// Discrete h_q: central with even reflection (0 at i=0 and i=nq).
    double hq_at(int i, int j) const;

    double min_hp() const;
    double max_hp() const;

private:
    int idx(int i, int j) const { return j * (grid_.nq + 1) + i; }

    Grid grid_;
    std::vector<double> v_;
};

/// Even reflection about q = pi/2 on the extended period: node i -> nq - i.
/// Maps a crest-at-0 sample to the phase-shifted crest-at-pi sample.
HeightField reflect_q(const HeightField& h);

} // namespace rotwave
