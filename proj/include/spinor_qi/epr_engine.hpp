#pragma once

// Closed-form EPR predictions: detector probabilities, linear-polarization
// correlations, CHSH, and 2-photon norms in reducible and irreducible
// representations.

#include "spinor_qi/grid.hpp"
#include "spinor_qi/parallel.hpp"
#include "spinor_qi/photon_rep.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <tuple>
#include <vector>

namespace spinor_qi {

/// Vacuum profile O0 on a grid, normalized to sum w |O0|^2 = 1.
struct CutoffProfile {
    std::vector<double> w;
    std::vector<cplx> o0;

    static CutoffProfile make(const MomentumGrid& grid, const MomentumFn& rule) {
        CutoffProfile c;
        double n2 = 0.0;
        for (const Cell& cell : grid.cells) {
            c.w.push_back(cell.w);
            c.o0.push_back(rule(cell.p));
            n2 += cell.w * std::norm(c.o0.back());
        }
        if (!(n2 > 0.0)) throw error(errc::zero_norm, "vacuum profile vanishes on the grid");
        const double s = 1.0 / std::sqrt(n2);
        for (cplx& v : c.o0) v *= s;
        return c;
    }

    /// Isotropic Gaussian exp(-|k|^2 / (2 sigma^2)).
    static CutoffProfile gaussian(const MomentumGrid& grid, double sigma) {
        return make(grid, [sigma](const FourVector& k) {
            return cplx(std::exp(-k.spatial_norm() * k.spatial_norm() / (2 * sigma * sigma)));
        });
    }

    static CutoffProfile uniform(const MomentumGrid& grid) {
        return make(grid, [](const FourVector&) { return cplx(1.0); });
    }

    std::size_t size() const { return o0.size(); }

    double norm2() const {
        double s = 0.0;
        for (std::size_t i = 0; i < size(); ++i) s += w[i] * std::norm(o0[i]);
        return s;
    }

    /// chi = |O0|^2 / max |O0|^2.
    std::vector<double> chi() const {
        double mx = 0.0;
        for (cplx v : o0) mx = std::max(mx, std::norm(v));
        std::vector<double> c(size());
        for (std::size_t i = 0; i < size(); ++i) c[i] = std::norm(o0[i]) / mx;
        return c;
    }

    void validate(double tol = 1e-6) const {
        if (std::abs(norm2() - 1.0) > tol) throw error(errc::not_normalized, "sum w |O0|^2 != 1");
    }
};

/// Cell-membership mask over a grid.
struct DetectorRegion {
    std::vector<char> mask;

    static DetectorRegion from_predicate(const MomentumGrid& g,
                                         const std::function<bool(const FourVector&)>& pred) {
        DetectorRegion r;
        r.mask.reserve(g.size());
        for (const Cell& c : g.cells) r.mask.push_back(pred(c.p) ? 1 : 0);
        return r;
    }

    static DetectorRegion all(const MomentumGrid& g) { return {std::vector<char>(g.size(), 1)}; }
    static DetectorRegion none(const MomentumGrid& g) { return {std::vector<char>(g.size(), 0)}; }

    static DetectorRegion cells(const MomentumGrid& g, const std::vector<std::size_t>& idx) {
        DetectorRegion r = none(g);
        for (std::size_t i : idx) r.mask.at(i) = 1;
        return r;
    }

    /// |k - centre| <= radius in 3-momentum space.
    static DetectorRegion ball(const MomentumGrid& g, std::array<double, 3> centre, double radius) {
        return from_predicate(g, [=](const FourVector& k) {
            const double dx = k.x - centre[0], dy = k.y - centre[1], dz = k.z - centre[2];
            return dx * dx + dy * dy + dz * dz <= radius * radius;
        });
    }

    /// n . k > offset.
    static DetectorRegion half_space(const MomentumGrid& g, std::array<double, 3> n, double offset) {
        return from_predicate(g, [=](const FourVector& k) {
            return n[0] * k.x + n[1] * k.y + n[2] * k.z > offset;
        });
    }

    std::size_t size() const { return mask.size(); }
    bool contains(std::size_t i) const { return mask[i] != 0; }

    std::size_t count() const {
        std::size_t n = 0;
        for (char c : mask) n += c != 0;
        return n;
    }

    DetectorRegion operator&(const DetectorRegion& o) const { return combine(o, [](bool a, bool b) { return a && b; }); }
    DetectorRegion operator|(const DetectorRegion& o) const { return combine(o, [](bool a, bool b) { return a || b; }); }
    DetectorRegion operator-(const DetectorRegion& o) const { return combine(o, [](bool a, bool b) { return a && !b; }); }

    DetectorRegion complement() const {
        DetectorRegion r{mask};
        for (char& c : r.mask) c = !c;
        return r;
    }

private:
    template <class Op>
    DetectorRegion combine(const DetectorRegion& o, Op op) const {
        if (o.size() != size()) throw error(errc::invalid_argument, "regions over different grids");
        DetectorRegion r{mask};
        for (std::size_t i = 0; i < size(); ++i) r.mask[i] = op(mask[i] != 0, o.mask[i] != 0);
        return r;
    }
};

/// Reducible(N, O0) or irreducible representation of the oscillator algebra.
struct RepChoice {
    enum class Kind { reducible, irreducible };

    Kind kind = Kind::irreducible;
    int N = 0;
    CutoffProfile o0;

    static RepChoice reducible(int N, CutoffProfile o0) {
        if (N < 1) throw error(errc::invalid_argument, "N must be >= 1");
        o0.validate();
        return {Kind::reducible, N, std::move(o0)};
    }

    static RepChoice irreducible() { return {}; }

    bool is_reducible() const { return kind == Kind::reducible; }
};

namespace detail {

inline void require_antisymmetric(const EPRKernel& ker) {
    if (antisymmetry_defect(ker) > 1e-10)
        throw error(errc::invalid_argument, "EPR kernel must be antisymmetric");
}

/// W(i, j) = w w' |psi|^2 chi chi'.
inline Eigen::MatrixXd pair_weights(const EPRKernel& ker, const RepChoice& rep) {
    const std::size_t n = ker.size();
    std::vector<double> chi(n, 1.0);
    if (rep.is_reducible()) {
        if (rep.o0.size() != n) throw error(errc::invalid_argument, "profile and kernel grids differ");
        chi = rep.o0.chi();
    }
    Eigen::MatrixXd W(n, n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            W(i, j) = ker.grid[i].w * ker.grid[j].w * std::norm(ker.psi(i, j)) * chi[i] * chi[j];
    });
    return W;
}

/// sum over i in a, j in b of W(i, j), taken over unordered pairs so that
/// mass(a, b) == mass(b, a) bit for bit.
inline double mass(const Eigen::MatrixXd& W, const DetectorRegion& a, const DetectorRegion& b) {
    std::vector<double> rows(static_cast<std::size_t>(W.rows()), 0.0);
    parallel_for(rows.size(), [&](std::size_t i) {
        double s = a.contains(i) && b.contains(i) ? W(i, i) : 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const int c = (a.contains(i) && b.contains(j)) + (a.contains(j) && b.contains(i));
            if (c > 0) s += c * (0.5 * (W(i, j) + W(j, i)));
        }
        rows[i] = s;
    });
    double s = 0.0;
    for (double r : rows) s += r;
    return s;
}

inline double total_mass(const Eigen::MatrixXd& W, const RepChoice& rep) {
    if (rep.is_reducible() && rep.N < 2)
        throw error(errc::zero_denominator, "Psi(N)|0,N> = 0 for N = 1");
    const double z = W.sum();
    if (!(z > 0.0)) throw error(errc::zero_denominator, "kernel has zero weighted norm");
    return z;
}

inline void check_regions(const EPRKernel& ker, const DetectorRegion& a, const DetectorRegion& b) {
    if (a.size() != ker.size() || b.size() != ker.size())
        throw error(errc::invalid_argument, "region does not match the kernel grid");
}

} // namespace detail

/// p = 2 int_A int_B |psi|^2 chi chi' / int int |psi|^2 chi chi'.
inline double probability_p(const DetectorRegion& omega, const DetectorRegion& omegap,
                            const EPRKernel& ker, const RepChoice& rep) {
    detail::require_antisymmetric(ker);
    detail::check_regions(ker, omega, omegap);
    const Eigen::MatrixXd W = detail::pair_weights(ker, rep);
    return 2.0 * detail::mass(W, omega, omegap) / detail::total_mass(W, rep);
}

/// Effective p in E = -cos 2(alpha - beta) p_eff; equals p(Omega x Omega') for disjoint regions.
inline double effective_p(const DetectorRegion& omega, const DetectorRegion& omegap,
                          const EPRKernel& ker, const RepChoice& rep) {
    detail::require_antisymmetric(ker);
    detail::check_regions(ker, omega, omegap);
    const Eigen::MatrixXd W = detail::pair_weights(ker, rep);
    const double z = detail::total_mass(W, rep);
    const DetectorRegion o0 = omega & omegap;
    const DetectorRegion o1 = omega - o0, o1p = omegap - o0;
    auto p = [&](const DetectorRegion& a, const DetectorRegion& b) {
        return 2.0 * detail::mass(W, a, b) / z;
    };
    return p(o1, o1p) + p(o1, o0) + p(o0, o1p) - p(o0, o0.complement());
}

/// E(alpha, beta) = -cos 2(alpha - beta) (p11' + p10 + p01' - p0(R-0)), Omega0 = Omega n Omega'.
inline double epr_average(double alpha, double beta, const DetectorRegion& omega,
                          const DetectorRegion& omegap, const EPRKernel& ker, const RepChoice& rep) {
    return -std::cos(2 * (alpha - beta)) * effective_p(omega, omegap, ker, rep);
}

struct CHSHResult {
    std::array<double, 4> E{};  ///< E(a1,b1), E(a1,b2), E(a2,b1), E(a2,b2)
    double S = 0.0;
    int minus_slot = 3;         ///< which term carries the minus sign in the maximizing form
    bool violation = false;     ///< S > 2
    double p_eff = 0.0;
    bool p_condition = false;   ///< p_eff > 1/sqrt2
};

/// CHSH value from four correlations: maximum over the four sign placements of
/// |E11 + E12 + E21 + E22 - 2 E_slot|, each of which is a valid CHSH combination.
inline std::pair<double, int> chsh_value(const std::array<double, 4>& E) {
    const double total = E[0] + E[1] + E[2] + E[3];
    double best = -1.0;
    int slot = 3;
    for (int s : {3, 0, 1, 2}) {
        const double v = std::abs(total - 2 * E[s]);
        if (v > best + 1e-15) {
            best = v;
            slot = s;
        }
    }
    return {best, slot};
}

inline CHSHResult chsh(double a1, double a2, double b1, double b2, const DetectorRegion& omega,
                       const DetectorRegion& omegap, const EPRKernel& ker, const RepChoice& rep) {
    CHSHResult r;
    r.p_eff = effective_p(omega, omegap, ker, rep);
    const double as[] = {a1, a1, a2, a2}, bs[] = {b1, b2, b1, b2};
    for (int i = 0; i < 4; ++i) r.E[i] = -std::cos(2 * (as[i] - bs[i])) * r.p_eff;
    std::tie(r.S, r.minus_slot) = chsh_value(r.E);
    r.violation = r.S > 2.0;
    r.p_condition = r.p_eff > inv_sqrt2;
    return r;
}

/// (1 - 1/N) sum w w' |psi|^2 |O0|^2 |O0'|^2.
inline double two_photon_norm(const EPRKernel& ker, const RepChoice& rep) {
    if (!rep.is_reducible()) throw error(errc::invalid_argument, "two_photon_norm needs a reducible rep");
    if (rep.o0.size() != ker.size()) throw error(errc::invalid_argument, "profile and kernel grids differ");
    const std::size_t n = ker.size();
    std::vector<double> rows(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += ker.grid[j].w * std::norm(ker.psi(i, j)) * std::norm(rep.o0.o0[j]);
        rows[i] = ker.grid[i].w * std::norm(rep.o0.o0[i]) * s;
    });
    double s = 0.0;
    for (double r : rows) s += r;
    return (1.0 - 1.0 / rep.N) * s;
}

/// 1/N^2 + (1 - 1/N) sum w |O0|^4, as displayed for the diagonal kernel c int dk a+^dag a-^dag.
inline double psi2_norm(int N, const CutoffProfile& o0) {
    if (N < 1) throw error(errc::invalid_argument, "N must be >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < o0.size(); ++i) s += o0.w[i] * std::norm(o0.o0[i]) * std::norm(o0.o0[i]);
    return 1.0 / (double(N) * N) + (1.0 - 1.0 / N) * s;
}

/// 2 (1 - 1/N) sum w w' (k.k')^2 |O0|^2 |O0'|^2.
inline double scalar_norm_example(int N, const MomentumGrid& grid, const CutoffProfile& o0) {
    if (N < 1) throw error(errc::invalid_argument, "N must be >= 1");
    if (o0.size() != grid.size()) throw error(errc::invalid_argument, "profile and grid differ");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double kk = grid[i].p.dot(grid[j].p);
            s += grid[i].w * grid[j].w * kk * kk * std::norm(o0.o0[i]) * std::norm(o0.o0[j]);
        }
    return 2.0 * (1.0 - 1.0 / N) * s;
}

} // namespace spinor_qi
