#pragma once

// Momentum cells with invariant-measure weights.

#include "spinor_qi/spinor_core.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace spinor_qi {

struct Cell {
    FourVector p;  ///< on-shell 4-momentum at the cell centre
    double w{};    ///< invariant weight d^3p / ((2 pi)^3 2 p^0)
};

struct MomentumGrid {
    double m{};  ///< 0 for the light cone
    std::vector<Cell> cells;

    std::size_t size() const { return cells.size(); }
    const Cell& operator[](std::size_t i) const { return cells[i]; }
};

inline double invariant_weight(double d3p, double energy) {
    return d3p / (std::pow(2.0 * pi, 3) * 2.0 * energy);
}

inline FourVector on_shell(double m, double px, double py, double pz) {
    return {std::sqrt(m * m + px * px + py * py + pz * pz), px, py, pz};
}

/// n^3 cubic cells on [-half, half]^3 (centres at +-(i+1/2)h, never the origin for even n).
inline MomentumGrid cubic_grid(int n, double half, double m) {
    MomentumGrid g;
    g.m = m;
    const double h = 2.0 * half / n;
    const double d3 = h * h * h;
    g.cells.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const FourVector p = on_shell(m, -half + (i + 0.5) * h, -half + (j + 0.5) * h,
                                              -half + (k + 0.5) * h);
                if (p.t == 0.0) continue;
                g.cells.push_back({p, invariant_weight(d3, p.t)});
            }
    return g;
}

/// Cells at given 3-momenta, each covering volume d3k.
inline MomentumGrid cells_from_momenta(const std::vector<std::array<double, 3>>& ks, double d3k,
                                       double m = 0.0) {
    MomentumGrid g;
    g.m = m;
    for (const auto& k : ks) {
        const FourVector p = on_shell(m, k[0], k[1], k[2]);
        if (p.t == 0.0) throw error(errc::zero_vector, "cell at zero momentum");
        g.cells.push_back({p, invariant_weight(d3k, p.t)});
    }
    return g;
}

} // namespace spinor_qi
