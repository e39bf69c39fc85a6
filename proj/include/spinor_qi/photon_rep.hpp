#pragma once

// Massless layer: the pi-spinor field on the light cone, Wigner phases,
// twistor-like spin-frames, polarization bases and EPR kernels.

#include "spinor_qi/grid.hpp"
#include "spinor_qi/parallel.hpp"
#include "spinor_qi/spinor_core.hpp"

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace spinor_qi {

/// Validates a future-pointing null momentum.
inline FourVector null_momentum(const FourVector& k) {
    if (!(k.t > 0.0)) throw error(errc::past_pointing, "k is not future-pointing");
    if (std::abs(k.norm2()) > 1e-10 * k.t * k.t) throw error(errc::not_null, "k is not null");
    return k;
}

inline FourVector null_from_3(double kx, double ky, double kz) {
    return null_momentum(on_shell(0.0, kx, ky, kz));
}

/// pi(k) with flagpole k; leading component real-positive (second one when k0 + k3 = 0).
inline TwoSpinor pi_of_k(const FourVector& k) { return spinor_from_flagpole(k, 0.0); }

/// Spin-frame partner of pi: the unique omega Hermitian-orthogonal to pi with omega_A pi^A = 1.
inline TwoSpinor frame_partner(const TwoSpinor& pi) {
    const double n2 = std::norm(pi.c0) + std::norm(pi.c1);
    if (n2 == 0.0) throw error(errc::zero_spinor, "pi is zero");
    return TwoSpinor{std::conj(pi.c1), -std::conj(pi.c0)} / n2;
}

/// Theta(L, k) = -arg(omega_A(k) (L pi)^A(k)) with (L pi)(k) = L pi(Lambda^{-1} k); in (-pi, pi].
inline double wigner_phase(const SL2C& L, const FourVector& k) {
    const TwoSpinor lp = L * pi_of_k(act_inverse(L, k));
    return -std::arg(contract(frame_partner(pi_of_k(k)), lp));
}

/// Same, with an explicit partner omega of pi(k).
inline double wigner_phase(const SL2C& L, const FourVector& k, const TwoSpinor& omega) {
    const TwoSpinor lp = L * pi_of_k(act_inverse(L, k));
    return -std::arg(contract(omega, lp));
}

/// omega_A(R, k) = R_{AA'} conj(pi)^{A'}(k) / (R.k), returned with upper components.
inline TwoSpinor twistor_omega(const FourVector& R, const FourVector& k) {
    if (!(R.t > 0.0) || std::abs(R.norm2() - 1.0) > 1e-8)
        throw error(errc::non_timelike_r, "R must be future-pointing with R.R = 1");
    const double rk = R.dot(k);
    if (!(rk > 1e-14 * k.t)) throw error(errc::non_timelike_r, "R.k vanishes");
    const Mat2 rl = epsilon().transpose() * vector_to_hermitian(R) * epsilon();
    const Eigen::Vector2cd w_low = rl * pi_of_k(k).conj().vec() / rk;
    return raise(TwoSpinor::from(w_low));
}

/// alpha(+-) = (alpha1 +- i alpha2) / sqrt2.
inline std::pair<cplx, cplx> pol_convert(cplx a1, cplx a2) {
    const cplx i(0, 1);
    return {(a1 + i * a2) * inv_sqrt2, (a1 - i * a2) * inv_sqrt2};
}

/// Inverse of pol_convert.
inline std::pair<cplx, cplx> pol_unconvert(cplx ap, cplx am) {
    const cplx i(0, 1);
    return {(ap + am) * inv_sqrt2, (ap - am) / (i * sqrt2)};
}

/// Rotation of the (x, y) linear-polarization legs by 2 Theta.
inline Eigen::Matrix2d rotate_linear(double theta) {
    const double c = std::cos(2 * theta), s = std::sin(2 * theta);
    Eigen::Matrix2d r;
    r << c, s, -s, c;
    return r;
}

// ---------------------------------------------------------------------------
// EPR kernels

using KernelRule = std::function<cplx(const FourVector&, const FourVector&)>;

struct EPRKernel {
    enum class Symmetry { antisymmetric, general };

    MomentumGrid grid;
    Eigen::MatrixXcd psi;  ///< psi(cell, cell')
    Symmetry tag = Symmetry::general;

    std::size_t size() const { return grid.size(); }
};

inline double antisymmetry_defect(const Eigen::MatrixXcd& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw error(errc::zero_kernel, "kernel is zero");
    return (psi + psi.transpose()).norm() / n;
}

/// ||psi + psi^T||_2 / ||psi||_2 over the grid.
inline double antisymmetry_defect(const EPRKernel& k) { return antisymmetry_defect(k.psi); }

/// Samples a rule on the grid; an antisymmetric tag is verified.
inline EPRKernel sample_kernel(const MomentumGrid& grid, const KernelRule& rule,
                               EPRKernel::Symmetry tag = EPRKernel::Symmetry::general) {
    EPRKernel k{grid, Eigen::MatrixXcd(grid.size(), grid.size()), tag};
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) k.psi(i, j) = rule(grid[i].p, grid[j].p);
    if (tag == EPRKernel::Symmetry::antisymmetric && k.psi.norm() > 0.0 &&
        antisymmetry_defect(k) > 1e-12)
        throw error(errc::invalid_argument, "kernel tagged antisymmetric is not");
    return k;
}

using MomentumFn = std::function<cplx(const FourVector&)>;

/// psi(k, k') = f(k) g(k') - f(k') g(k).
inline KernelRule product_antisym(MomentumFn f, MomentumFn g) {
    return [f = std::move(f), g = std::move(g)](const FourVector& k, const FourVector& kp) {
        return f(k) * g(kp) - f(kp) * g(k);
    };
}

/// Closed-form transform psi(Lk, Lk') e^{-2i Theta(L, Lk)} e^{2i Theta(L, Lk')}.
inline EPRKernel transform_kernel(const MomentumGrid& grid, const KernelRule& rule, const SL2C& L) {
    const Mat4 lam = lorentz_of(L);
    const std::size_t n = grid.size();
    std::vector<FourVector> lk(n);
    std::vector<cplx> ph(n);
    for (std::size_t i = 0; i < n; ++i) {
        lk[i] = lam * grid[i].p;
        ph[i] = std::polar(1.0, 2.0 * wigner_phase(L, lk[i]));
    }
    EPRKernel out{grid, Eigen::MatrixXcd(n, n), EPRKernel::Symmetry::general};
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            out.psi(i, j) = rule(lk[i], lk[j]) * std::conj(ph[i]) * ph[j];
    });
    return out;
}

/// Grid-array transform; requires the cell set to be closed under k -> Lambda k.
inline EPRKernel transform_kernel(const EPRKernel& ker, const SL2C& L, double match_tol = 1e-9) {
    const Mat4 lam = lorentz_of(L);
    const std::size_t n = ker.size();
    std::vector<std::size_t> img(n);
    std::vector<cplx> ph(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FourVector lk = lam * ker.grid[i].p;
        bool found = false;
        for (std::size_t j = 0; j < n; ++j) {
            if ((ker.grid[j].p - lk).max_abs() <= match_tol * std::max(1.0, lk.t)) {
                img[i] = j;
                found = true;
                break;
            }
        }
        if (!found) throw error(errc::grid_not_closed, "Lambda k leaves the cell set");
        ph[i] = std::polar(1.0, 2.0 * wigner_phase(L, lk));
    }
    EPRKernel out{ker.grid, Eigen::MatrixXcd(n, n), EPRKernel::Symmetry::general};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.psi(i, j) = ker.psi(img[i], img[j]) * std::conj(ph[i]) * ph[j];
    return out;
}

/// Weighted L2 norm^2: sum w w' |psi|^2.
inline double kernel_norm2(const EPRKernel& k) {
    double s = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < k.size(); ++j)
            s += k.grid[i].w * k.grid[j].w * std::norm(k.psi(i, j));
    return s;
}

// ---------------------------------------------------------------------------
// Scalar-state linear-EPR condition

using ScalarF = std::function<cplx(cplx)>;
using AngleRule = std::function<double(const FourVector&)>;

/// Checks F(e^{i phi} z) = e^{2 i phi} F(z) on sample points.
inline void check_homogeneity(const ScalarF& F, const std::vector<cplx>& zs, double tol = 1e-9) {
    const double phis[] = {0.3, 1.1, 2.5, -0.7};
    for (cplx z : zs)
        for (double phi : phis) {
            const cplx lhs = F(std::polar(1.0, phi) * z);
            const cplx rhs = std::polar(1.0, 2 * phi) * F(z);
            if (std::abs(lhs - rhs) > tol * (1.0 + std::abs(rhs)))
                throw error(errc::homogeneity_violated, "F(e^{i phi} z) != e^{2 i phi} F(z)");
        }
}

/// max over sampled pairs of |F-(conj z) -/+ F+(z) e^{2i(theta + theta')}|, z = pi_A(k) pi^A(k'),
/// minimized over the sign choice. Zero means the state has the linear-EPR form.
inline double linear_epr_condition(const ScalarF& Fplus, const ScalarF& Fminus, const AngleRule& theta,
                                   const std::vector<std::pair<FourVector, FourVector>>& samples) {
    std::vector<cplx> zs;
    zs.reserve(samples.size());
    for (const auto& [k, kp] : samples) zs.push_back(contract(pi_of_k(k), pi_of_k(kp)));
    check_homogeneity(Fplus, zs);
    check_homogeneity(Fminus, zs);
    double best = std::numeric_limits<double>::infinity();
    for (double sgn : {1.0, -1.0}) {
        double worst = 0.0;
        for (std::size_t n = 0; n < samples.size(); ++n) {
            const auto& [k, kp] = samples[n];
            const cplx rhs = sgn * Fplus(zs[n]) * std::polar(1.0, 2 * (theta(k) + theta(kp)));
            worst = std::max(worst, std::abs(Fminus(std::conj(zs[n])) - rhs));
        }
        best = std::min(best, worst);
    }
    return best;
}

} // namespace spinor_qi
