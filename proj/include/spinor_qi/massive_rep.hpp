#pragma once

// Massive spin-1/2: omega/pi splitting of momenta, Pauli-Lubanski projections,
// spin-energy projectors, the unitary Wigner matrix and the
// Peres-Scudo-Terno reduced-spin entropy experiment.

#include "spinor_qi/grid.hpp"
#include "spinor_qi/parallel.hpp"
#include "spinor_qi/spinor_core.hpp"

#include <Eigen/Eigenvalues>

#include <functional>
#include <utility>
#include <variant>
#include <vector>

namespace spinor_qi {

// ---------------------------------------------------------------------------
// Momenta and omega-frames

struct MassiveMomentum {
    FourVector p;
    double m{};

    static MassiveMomentum make(const FourVector& p, double m) {
        if (!(m > 0.0)) throw error(errc::invalid_argument, "mass must be positive");
        if (std::abs(p.norm2() - m * m) > 1e-8 * std::max(m * m, p.t * p.t))
            throw error(errc::invalid_argument, "momentum is off the mass shell");
        if (!(p.t > 0.0)) throw error(errc::past_pointing, "momentum is not future-pointing");
        return {p, m};
    }

    static MassiveMomentum from_3(double m, double px, double py, double pz) {
        return make(on_shell(m, px, py, pz), m);
    }
};

struct OmegaFrame {
    TwoSpinor omega, pi;
    MassiveMomentum p;
};

/// omega = tau / sqrt(p . flagpole(tau)), so p . (omega omegabar) = 1.
inline TwoSpinor omega_from_tau(const TwoSpinor& tau, const FourVector& p) {
    if (tau.norm() == 0.0) throw error(errc::zero_spinor, "tau is zero");
    const double pt = p.dot(flagpole(tau));
    if (!(pt > 0.0)) throw error(errc::gauge_undefined, "p . t vanishes");
    return tau / std::sqrt(pt);
}

/// p_{AB'} as a [A][B'] matrix (both indices lowered).
inline Mat2 lower_both(const Mat2& upper) {
    return epsilon().transpose() * upper * epsilon();
}

/// pi^A = p^{AB'} conj(omega)_{B'}.
inline OmegaFrame pi_partner(const TwoSpinor& omega, const MassiveMomentum& p) {
    const double norm = p.p.dot(flagpole(omega));
    if (std::abs(norm - 1.0) > 1e-8)
        throw error(errc::bad_normalization, "p . (omega omegabar) != 1");
    const Mat2 P = vector_to_hermitian(p.p);
    const TwoSpinor pi = P * lower(omega).conj();
    return {omega, pi, p};
}

/// pi (pi)bar + (m^2/2) omega (omega)bar.
inline FourVector reconstruct_momentum(const OmegaFrame& f) {
    return flagpole(f.pi) + flagpole(f.omega) * (f.p.m * f.p.m / 2.0);
}

/// Inverse extraction: p_{AC'} pi^A = (m^2/2) conj(omega)_{C'}.
inline TwoSpinor omega_from_pi(const TwoSpinor& pi, const MassiveMomentum& p) {
    if (!(p.m > 0.0)) throw error(errc::massless_unsupported, "omega undetermined for m = 0");
    const Mat2 pl = lower_both(vector_to_hermitian(p.p));
    const Eigen::Vector2cd wbar_low = pl.transpose() * pi.vec() * (2.0 / (p.m * p.m));
    return raise(TwoSpinor::from(wbar_low).conj());
}

// ---------------------------------------------------------------------------
// Pauli-Lubanski projections

/// (t.p)^2 - t^2 p^2 as sum_i B_0i^2 - sum_{i<j} B_ij^2 with B = t ^ p, which
/// vanishes to rounding when t is parallel to p.
inline double pl_radicand(const FourVector& t, const FourVector& p) {
    auto b = [&](int i, int j) { return t[i] * p[j] - t[j] * p[i]; };
    const double e = b(0, 1) * b(0, 1) + b(0, 2) * b(0, 2) + b(0, 3) * b(0, 3);
    const double m = b(1, 2) * b(1, 2) + b(1, 3) * b(1, 3) + b(2, 3) * b(2, 3);
    return e - m;
}

/// +-(1/2) sqrt((t.p)^2 - t^2 p^2); radicand in [-1e-12, 0) is clamped to 0.
inline std::pair<double, double> pl_eigenvalues(const FourVector& t, const FourVector& p) {
    double r = pl_radicand(t, p);
    if (r < -1e-12) throw error(errc::negative_radicand, "inconsistent (t, p)");
    if (r < 0.0) r = 0.0;
    const double l = 0.5 * std::sqrt(r);
    return {l, -l};
}

inline std::pair<double, double> pl_eigenvalues(const FourVector& t, const MassiveMomentum& p) {
    return pl_eigenvalues(t, p.p);
}

/// W(t,p)_R^S = (1/2)(t_{RX'} p^{SX'} - p_{RX'} t^{SX'}) for a complex direction t.
inline Mat2 pl_spinor_matrix(const Vec4c& t, const FourVector& p) {
    const Mat2 T = vector_to_hermitian(t), P = vector_to_hermitian(p);
    return 0.5 * (lower_both(T) * P.transpose() - lower_both(P) * T.transpose());
}

/// Componentwise |lambda(t,p) - lambda(t + theta p, p)|, max of the two.
inline double gauge_shift_check(const FourVector& t, double theta, const MassiveMomentum& p) {
    const auto a = pl_eigenvalues(t, p.p);
    const auto b = pl_eigenvalues(t + p.p * theta, p.p);
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

/// Projection t^a W_a(p)_{calA}^{calB} of the omega-representation PL vector.
/// W_a is the 2x2 matrix of complex world-vectors read off the spinor form.
inline Mat2 pl_matrix_omega(const OmegaFrame& f, const Vec4c& t) {
    const double m = f.p.m;
    const Vec4c pp = spinor_vector(f.pi, f.pi);
    const Vec4c ww = spinor_vector(f.omega, f.omega);
    const Vec4c pw = spinor_vector(f.pi, f.omega);
    const Vec4c wp = spinor_vector(f.omega, f.pi);
    // spinor_vector gives upper-index vectors; t . v uses the bilinear product.
    const cplx tpp = cdot(t, pp), tww = cdot(t, ww), tpw = cdot(t, pw), twp = cdot(t, wp);
    Mat2 w;
    w << tpp - m * m / 2 * tww, -m * sqrt2 * tpw, -m * sqrt2 * twp, m * m / 2 * tww - tpp;
    return 0.5 * w;
}

/// Named projection directions of pl_matrix_omega.
enum class PLDirection { omega_omegabar, pi_omegabar, omega_pibar };

inline Vec4c pl_direction(const OmegaFrame& f, PLDirection d) {
    switch (d) {
    case PLDirection::omega_omegabar: return spinor_vector(f.omega, f.omega);
    case PLDirection::pi_omegabar: return spinor_vector(f.pi, f.omega);
    case PLDirection::omega_pibar: return spinor_vector(f.omega, f.pi);
    }
    return Vec4c::Zero();
}

inline Mat2 pl_matrix_omega(const OmegaFrame& f, PLDirection d) {
    return pl_matrix_omega(f, pl_direction(f, d));
}

/// Massless case: (1/2) diag(1,-1) (t.k).
inline Mat2 pl_matrix_massless(const FourVector& k, const Vec4c& t) {
    const cplx tk = cdot(t, Vec4c(k.vec().cast<cplx>()));
    Mat2 w;
    w << 0.5 * tk, 0, 0, -0.5 * tk;
    return w;
}

// ---------------------------------------------------------------------------
// Bispinor projectors. Bispinors hold lower components (psi_A, chi_A'); a map
// with index structure _A^B has matrix entry [A][B].

/// alpha_A beta^B.
inline Mat2 mixed(const TwoSpinor& alpha, const TwoSpinor& beta) {
    return lower(alpha).vec() * beta.vec().transpose();
}

/// conj(alpha)_{A'} conj(beta)^{B'}.
inline Mat2 mixed_bar(const TwoSpinor& alpha, const TwoSpinor& beta) {
    return mixed(alpha, beta).conjugate();
}

inline Mat4c block_diag(const Mat2& a, const Mat2& b) {
    Mat4c r = Mat4c::Zero();
    r.block<2, 2>(0, 0) = a;
    r.block<2, 2>(2, 2) = b;
    return r;
}

/// Spin projectors Pi^(+) and Pi^(-) of the null direction omega.
inline std::pair<Mat4c, Mat4c> spin_projectors(const OmegaFrame& f) {
    const Mat4c plus = block_diag(mixed(f.omega, f.pi), -mixed_bar(f.pi, f.omega));
    const Mat4c minus = block_diag(-mixed(f.pi, f.omega), mixed_bar(f.omega, f.pi));
    return {plus, minus};
}

/// Sign-of-energy projectors Pi_+ and Pi_-.
inline std::pair<Mat4c, Mat4c> energy_projectors(const MassiveMomentum& p) {
    if (!(p.m > 0.0)) throw error(errc::massless_unsupported, "Pi_pm divides by m");
    const Mat2 P = vector_to_hermitian(p.p);
    const Mat2 pa = epsilon().transpose() * P;                            // p_A^{B'}
    const Mat2 pb = (P * epsilon()).transpose();                          // p^B_{A'} as [A'][B]
    const double c = sqrt2 / p.m;
    auto make = [&](double s) {
        Mat4c r;
        r.block<2, 2>(0, 0) = Mat2::Identity();
        r.block<2, 2>(0, 2) = -s * c * pa;
        r.block<2, 2>(2, 0) = s * c * pb;
        r.block<2, 2>(2, 2) = Mat2::Identity();
        return Mat4c(0.5 * r);
    };
    return {make(1.0), make(-1.0)};
}

/// The four spin-energy projectors Pi_s^(s').
struct SpinEnergyProjectors {
    Mat4c plus_plus;    ///< Pi_+^(+)
    Mat4c plus_minus;   ///< Pi_+^(-)
    Mat4c minus_plus;   ///< Pi_-^(+)
    Mat4c minus_minus;  ///< Pi_-^(-)
};

inline SpinEnergyProjectors spin_energy_projectors(const OmegaFrame& f) {
    const auto [ep, em] = energy_projectors(f.p);
    const auto [sp, sm] = spin_projectors(f);
    return {ep * sp, ep * sm, em * sp, em * sm};
}

/// W(omega,p) at the bispinor level.
inline Mat4c pl_omega_bispinor(const OmegaFrame& f) {
    const Mat2 u = 0.5 * (mixed(f.pi, f.omega) + mixed(f.omega, f.pi));
    const Mat2 p = -0.5 * (mixed_bar(f.pi, f.omega) + mixed_bar(f.omega, f.pi));
    return block_diag(u, p);
}

/// Image vector of a rank-1 projector: its largest column.
inline Eigen::Vector4cd projector_image(const Mat4c& proj) {
    Eigen::Index best = 0;
    proj.colwise().norm().maxCoeff(&best);
    return proj.col(best).normalized();
}

// ---------------------------------------------------------------------------
// Gauges and the Wigner matrix

struct HelicityGauge {};
struct PrincipalNullGauge {
    TwoSpinor tau;
};
using GaugeSpec = std::variant<HelicityGauge, PrincipalNullGauge>;

/// omega(p) for a gauge. The helicity gauge uses the null direction
/// (1, -p_hat)/(p0 + |p|), which is the helicity t = (1/|p|, 0) shifted by a
/// multiple of p; its spinor carries a real-positive leading component.
inline TwoSpinor omega_field(const GaugeSpec& g, const FourVector& p) {
    if (const auto* pn = std::get_if<PrincipalNullGauge>(&g)) return omega_from_tau(pn->tau, p);
    const double ps = p.spatial_norm();
    if (ps < 1e-12 * p.t) throw error(errc::gauge_undefined, "helicity gauge at zero 3-momentum");
    const TwoSpinor tau = spinor_from_flagpole(FourVector(1.0, -p.x / ps, -p.y / ps, -p.z / ps));
    return omega_from_tau(tau, p);
}

inline OmegaFrame omega_frame(const GaugeSpec& g, const MassiveMomentum& p) {
    return pi_partner(omega_field(g, p.p), p);
}

struct WignerU {
    Mat2 u;
    FourVector p;
    SL2C L;
};

/// U(Lambda, p): entries conj(w.Lpi), -(m/sqrt2) conj(w.Lw), (m/sqrt2) w.Lw, w.Lpi,
/// with L pi(p) = L pi(Lambda^{-1} p).
inline WignerU wigner_u(const SL2C& L, const MassiveMomentum& p, const GaugeSpec& g) {
    const MassiveMomentum q{act_inverse(L, p.p), p.m};
    const OmegaFrame fp = omega_frame(g, p);
    const OmegaFrame fq = omega_frame(g, q);
    const TwoSpinor lw = L * fq.omega, lp = L * fq.pi;
    const cplx c = contract(fp.omega, lp);
    const cplx d = p.m * inv_sqrt2 * contract(fp.omega, lw);
    Mat2 u;
    u << std::conj(c), -std::conj(d), d, c;
    return {u, p.p, L};
}

/// Eigenvectors of an SL(2,C) element, unit norm (one for parabolic elements,
/// two for +-identity and diagonalizable ones).
inline std::vector<TwoSpinor> principal_null_spinors(const SL2C& L) {
    const Mat2& m = L.matrix();
    const cplx tr = m.trace();
    const cplx disc = std::sqrt(tr * tr - 4.0);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());

    auto eigvec = [&](cplx lam) {
        const TwoSpinor a{m(0, 1), lam - m(0, 0)}, b{lam - m(1, 1), m(1, 0)};
        const TwoSpinor v = a.norm() >= b.norm() ? a : b;
        return v / v.norm();
    };

    if (std::abs(disc) > 1e-7 * scale) {
        return {eigvec((tr + disc) / 2.0), eigvec((tr - disc) / 2.0)};
    }
    const cplx lam = tr / 2.0;
    if ((m - lam * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12 * scale)
        return {TwoSpinor{1.0, 0.0}, TwoSpinor{0.0, 1.0}};
    return {eigvec(lam)};
}

// ---------------------------------------------------------------------------
// Entropies

/// Eigenvalues of a Hermitian matrix normalized by its trace, clamped at 0.
inline Eigen::VectorXd density_spectrum(const Eigen::MatrixXcd& rho) {
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw error(errc::zero_norm, "density matrix has zero trace");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho / tr, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseMax(0.0);
}

/// Von Neumann entropy in bits, 0 log 0 = 0.
inline double entropy_bits(const Eigen::MatrixXcd& rho) {
    double s = 0.0;
    for (double l : density_spectrum(rho))
        if (l > 0.0) s -= l * std::log2(l);
    return s;
}

/// Renyi entropy of order alpha != 1, in bits.
inline double renyi_bits(const Eigen::MatrixXcd& rho, double alpha) {
    double s = 0.0;
    for (double l : density_spectrum(rho)) s += std::pow(l, alpha);
    return std::log2(s) / (1.0 - alpha);
}

// ---------------------------------------------------------------------------
// Peres-Scudo-Terno experiment

/// Closed-form amplitude f(s, p) sampled on demand, so Lambda^{-1} p needs no interpolation.
using SpinProfile = std::function<std::array<cplx, 2>(const FourVector&)>;

struct MomentumSpinState {
    MomentumGrid grid;
    SpinProfile f;

    double norm2() const {
        std::vector<double> part(grid.size());
        parallel_for(grid.size(), [&](std::size_t i) {
            const auto a = f(grid[i].p);
            part[i] = grid[i].w * (std::norm(a[0]) + std::norm(a[1]));
        });
        double s = 0.0;
        for (double v : part) s += v;
        return s;
    }
};

/// Product state F(s) G(p) with G a normalized-on-grid Gaussian
/// exp(-|p - centre|^2 / (4 sigma^2)) in the 3-momentum.
inline MomentumSpinState gaussian_product_state(const MomentumGrid& grid, std::array<cplx, 2> F,
                                                double sigma, std::array<double, 3> centre = {}) {
    const double fn = std::sqrt(std::norm(F[0]) + std::norm(F[1]));
    if (fn == 0.0) throw error(errc::zero_spinor, "spin amplitude is zero");
    F = {F[0] / fn, F[1] / fn};
    auto g = [sigma, centre](const FourVector& p) {
        const double dx = p.x - centre[0], dy = p.y - centre[1], dz = p.z - centre[2];
        return std::exp(-(dx * dx + dy * dy + dz * dz) / (4.0 * sigma * sigma));
    };
    double z = 0.0;
    for (const auto& c : grid.cells) z += c.w * g(c.p) * g(c.p);
    const double nrm = 1.0 / std::sqrt(z);
    MomentumSpinState s{grid, [F, g, nrm](const FourVector& p) -> std::array<cplx, 2> {
                            const double a = nrm * g(p);
                            return {F[0] * a, F[1] * a};
                        }};
    return s;
}

/// rho(s,s') = sum_cells w f(s) conj(f(s')), optionally after Lambda.
inline Mat2 reduced_spin_density(const MomentumSpinState& st, const SL2C* L, const GaugeSpec& g) {
    const auto& grid = st.grid;
    std::vector<Mat2> part(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const FourVector& p = grid[i].p;
        Eigen::Vector2cd v;
        if (L == nullptr) {
            const auto a = st.f(p);
            v << a[0], a[1];
        } else {
            const MassiveMomentum pm{p, grid.m};
            const WignerU u = wigner_u(*L, pm, g);
            const auto a = st.f(act_inverse(*L, p));
            v = u.u * Eigen::Vector2cd(a[0], a[1]);
        }
        part[i] = grid[i].w * v * v.adjoint();
    });
    Mat2 rho = Mat2::Zero();
    for (const auto& m : part) rho += m;
    return rho;
}

struct PSTResult {
    double entropy_before{}, entropy_after{};
    Mat2 rho_before, rho_after;
};

inline PSTResult pst_experiment(const MomentumSpinState& st, const SL2C& L, const GaugeSpec& g,
                                double norm_tol = 1e-8) {
    if (std::abs(st.norm2() - 1.0) > norm_tol)
        throw error(errc::not_normalized, "state norm differs from 1");
    PSTResult r;
    r.rho_before = reduced_spin_density(st, nullptr, g);
    r.rho_after = reduced_spin_density(st, &L, g);
    r.entropy_before = entropy_bits(r.rho_before);
    r.entropy_after = entropy_bits(r.rho_after);
    return r;
}

} // namespace spinor_qi
