#pragma once

// Brute-force Fock oracle for the reducible representation: cells x two
// truncated polarization oscillators per copy, tensored N times.

#include "spinor_qi/epr_engine.hpp"
#include "spinor_qi/grid.hpp"
#include "spinor_qi/photon_rep.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace spinor_qi {

using SpMat = Eigen::SparseMatrix<cplx>;
using FockVector = Eigen::VectorXcd;

inline constexpr std::size_t oracle_dimension_cap = 2'000'000;

enum class Pol { plus = 0, minus = 1 };

struct OracleConfig {
    MomentumGrid grid;          ///< one cell per momentum; weights enter the vacuum only
    std::vector<cplx> o0;       ///< vacuum profile, sum w |O0|^2 = 1
    int n_max = 2;
    int N = 1;

    static OracleConfig make(const MomentumGrid& grid, const CutoffProfile& prof, int N, int n_max = 2) {
        OracleConfig c{grid, prof.o0, n_max, N};
        c.validate();
        return c;
    }

    std::size_t cells() const { return grid.size(); }
    std::size_t levels() const { return static_cast<std::size_t>(n_max + 1); }
    std::size_t copy_dim() const { return cells() * levels() * levels(); }

    std::size_t dim() const {
        std::size_t d = 1;
        for (int n = 0; n < N; ++n) {
            if (d > oracle_dimension_cap / copy_dim() + 1) return oracle_dimension_cap + 1;
            d *= copy_dim();
        }
        return d;
    }

    void validate() const {
        if (cells() < 1) throw error(errc::invalid_argument, "oracle needs at least one cell");
        if (N < 1) throw error(errc::invalid_argument, "N must be >= 1");
        if (n_max < 2) throw error(errc::truncation_too_low, "n_max must be >= 2");
        if (o0.size() != cells()) throw error(errc::invalid_argument, "profile size != cell count");
        double s = 0.0;
        for (std::size_t i = 0; i < cells(); ++i) s += grid[i].w * std::norm(o0[i]);
        if (std::abs(s - 1.0) > 1e-9) throw error(errc::not_normalized, "sum w |O0|^2 != 1");
        if (dim() > oracle_dimension_cap)
            throw error(errc::dimension_overflow, "oracle dimension exceeds 2e6");
    }
};

struct ModeOp {
    std::string label;
    SpMat op;
};

namespace detail {

inline SpMat sp_identity(std::size_t n) {
    SpMat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m.setIdentity();
    return m;
}

/// Truncated oscillator annihilator on levels 0..L-1.
inline SpMat ladder(std::size_t L) {
    std::vector<Eigen::Triplet<cplx>> t;
    for (std::size_t n = 1; n < L; ++n)
        t.emplace_back(static_cast<int>(n - 1), static_cast<int>(n), std::sqrt(double(n)));
    SpMat a(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L));
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

inline SpMat kron(const SpMat& a, const SpMat& b) {
    SpMat r = Eigen::kroneckerProduct(a, b).eval();
    r.makeCompressed();
    return r;
}

inline SpMat cell_projector(std::size_t M, std::size_t i) {
    SpMat p(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
    p.insert(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return p;
}

} // namespace detail

/// Operator family a(s,i,N), n(s,i,N), I(i,N) on (cells x levels^2)^{(x)N}.
class FockRep {
public:
    explicit FockRep(OracleConfig cfg) : cfg_(std::move(cfg)) {
        cfg_.validate();
        const std::size_t M = cfg_.cells(), L = cfg_.levels();
        const SpMat a = detail::ladder(L), idL = detail::sp_identity(L);
        level_a_[0] = detail::kron(a, idL);
        level_a_[1] = detail::kron(idL, a);
        const double inv_sqrt_n = 1.0 / std::sqrt(double(cfg_.N));
        for (std::size_t i = 0; i < M; ++i) {
            const SpMat P = detail::cell_projector(M, i);
            for (int s = 0; s < 2; ++s) {
                const SpMat a1 = detail::kron(P, level_a_[s]);
                a_[s].push_back(SpMat(copy_sum(a1) * cplx(inv_sqrt_n)));
                const SpMat n1 = detail::kron(P, SpMat(level_a_[s].adjoint() * level_a_[s]));
                n_[s].push_back(copy_sum(n1));
            }
            I_.push_back(SpMat(copy_sum(detail::kron(P, detail::sp_identity(L * L))) *
                               cplx(1.0 / cfg_.N)));
        }
    }

    const OracleConfig& config() const { return cfg_; }
    std::size_t dim() const { return cfg_.dim(); }

    const SpMat& a(Pol s, std::size_t i) const { return a_[int(s)][i]; }
    SpMat adag(Pol s, std::size_t i) const { return a_[int(s)][i].adjoint(); }
    const SpMat& n(Pol s, std::size_t i) const { return n_[int(s)][i]; }
    const SpMat& I(std::size_t i) const { return I_[i]; }

    /// Level-space annihilator of polarization s on one copy (levels^2).
    const SpMat& level_a(Pol s) const { return level_a_[int(s)]; }

    /// Sum over copies of a single-copy operator.
    SpMat copy_sum(const SpMat& single) const {
        const std::size_t d = cfg_.copy_dim();
        SpMat out(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
        for (int c = 0; c < cfg_.N; ++c) {
            std::size_t left = 1, right = 1;
            for (int k = 0; k < c; ++k) left *= d;
            for (int k = c + 1; k < cfg_.N; ++k) right *= d;
            out += detail::kron(detail::kron(detail::sp_identity(left), single), detail::sp_identity(right));
        }
        out.makeCompressed();
        return out;
    }

    /// Basis states where every mode of every copy has occupation <= n_max - 1.
    std::vector<char> safe_mask() const {
        const std::size_t d = cfg_.copy_dim(), L = cfg_.levels();
        std::vector<char> m(dim(), 1);
        for (std::size_t idx = 0; idx < dim(); ++idx) {
            std::size_t r = idx;
            for (int c = 0; c < cfg_.N; ++c) {
                const std::size_t local = r % d;
                r /= d;
                const std::size_t nm = local % L, np = (local / L) % L;
                if (np + 1 >= L || nm + 1 >= L) m[idx] = 0;
            }
        }
        return m;
    }

private:
    OracleConfig cfg_;
    std::array<SpMat, 2> level_a_;
    std::array<std::vector<SpMat>, 2> a_, n_;
    std::vector<SpMat> I_;
};

inline FockRep build_rep(const OracleConfig& cfg) { return FockRep(cfg); }

/// (sum_i sqrt(w_i) O0(i) |i> (x) |0,0>)^{(x)N}.
inline FockVector vacuum(const FockRep& rep) {
    const OracleConfig& c = rep.config();
    const std::size_t L2 = c.levels() * c.levels();
    FockVector one = FockVector::Zero(static_cast<Eigen::Index>(c.copy_dim()));
    for (std::size_t i = 0; i < c.cells(); ++i)
        one(static_cast<Eigen::Index>(i * L2)) = std::sqrt(c.grid[i].w) * c.o0[i];
    FockVector v = one;
    for (int n = 1; n < c.N; ++n) v = Eigen::kroneckerProduct(v, one).eval();
    return v;
}

/// Psi(N)|0,N> with Psi = sum_ij psi_ij a(+,i,N)^dag a(-,j,N)^dag.
inline FockVector apply_psi(const EPRKernel& ker, const FockRep& rep) {
    const std::size_t M = rep.config().cells();
    if (ker.size() != M) throw error(errc::invalid_argument, "kernel and oracle cell counts differ");
    const FockVector vac = vacuum(rep);
    std::vector<FockVector> vm;
    vm.reserve(M);
    for (std::size_t j = 0; j < M; ++j) vm.push_back(rep.adag(Pol::minus, j) * vac);
    FockVector out = FockVector::Zero(vac.size());
    for (std::size_t i = 0; i < M; ++i) {
        FockVector acc = FockVector::Zero(vac.size());
        for (std::size_t j = 0; j < M; ++j)
            if (ker.psi(i, j) != cplx(0.0)) acc += ker.psi(i, j) * vm[j];
        out += rep.adag(Pol::plus, i) * acc;
    }
    return out;
}

/// c int dk a(+,k,N)^dag a(-,k,N)^dag |0,N>, with int dk -> sum w and delta(k,k) -> 1/w.
inline FockVector apply_psi2(const FockRep& rep, cplx c = 1.0) {
    const FockVector vac = vacuum(rep);
    FockVector out = FockVector::Zero(vac.size());
    for (std::size_t i = 0; i < rep.config().cells(); ++i)
        out += (c / rep.config().grid[i].w) * (rep.adag(Pol::plus, i) * (rep.adag(Pol::minus, i) * vac));
    return out;
}

/// Level-space Y_theta = n_theta - n_theta' for a_theta = a1 cos - a2 sin, a_theta' = a2 cos + a1 sin.
inline SpMat y_theta_level(const FockRep& rep, double theta) {
    const cplx i(0, 1);
    const SpMat& ap = rep.level_a(Pol::plus);
    const SpMat& am = rep.level_a(Pol::minus);
    const SpMat a1 = (ap + am) * cplx(inv_sqrt2);
    const SpMat a2 = (ap - am) * (1.0 / (i * sqrt2));
    const double c = std::cos(theta), s = std::sin(theta);
    const SpMat at = a1 * cplx(c) - a2 * cplx(s);
    const SpMat atp = a2 * cplx(c) + a1 * cplx(s);
    return SpMat(at.adjoint() * at) - SpMat(atp.adjoint() * atp);
}

/// Y_theta summed over the region's cells.
inline ModeOp y_theta(double theta, const DetectorRegion& region, const FockRep& rep) {
    const OracleConfig& c = rep.config();
    if (region.size() != c.cells()) throw error(errc::invalid_argument, "region and oracle differ");
    const SpMat lvl = y_theta_level(rep, theta);
    SpMat single(static_cast<Eigen::Index>(c.copy_dim()), static_cast<Eigen::Index>(c.copy_dim()));
    for (std::size_t i = 0; i < c.cells(); ++i)
        if (region.contains(i)) single += detail::kron(detail::cell_projector(c.cells(), i), lvl);
    return {"Y_theta", rep.copy_sum(single)};
}

/// <Psi| Y'_beta(Omega') Y_alpha(Omega) |Psi> / <Psi|Psi>.
inline double oracle_epr_average(double alpha, double beta, const DetectorRegion& omega,
                                 const DetectorRegion& omegap, const EPRKernel& ker, const FockRep& rep) {
    const FockVector v = apply_psi(ker, rep);
    const double n2 = v.squaredNorm();
    if (!(n2 > 1e-300)) throw error(errc::zero_norm, "Psi(N)|0,N> vanishes");
    const FockVector u = y_theta(alpha, omega, rep).op * v;
    const FockVector w = y_theta(beta, omegap, rep).op * v;
    return w.dot(u).real() / n2;
}

/// W_a = sum_i (k_i)_a (n(+,i,N) - n(-,i,N)), lower index a.
inline std::array<ModeOp, 4> pl_number_operator(const FockRep& rep) {
    const OracleConfig& c = rep.config();
    std::array<ModeOp, 4> W;
    const double sign[4] = {1.0, -1.0, -1.0, -1.0};
    for (int a = 0; a < 4; ++a) {
        W[a].label = "W_" + std::to_string(a);
        W[a].op = SpMat(static_cast<Eigen::Index>(rep.dim()), static_cast<Eigen::Index>(rep.dim()));
        for (std::size_t i = 0; i < c.cells(); ++i) {
            const double ka = sign[a] * c.grid[i].p.vec()(a);
            W[a].op += (rep.n(Pol::plus, i) - rep.n(Pol::minus, i)) * cplx(ka);
        }
    }
    return W;
}

// ---------------------------------------------------------------------------
// Cyclic-vacuum toy on two qubits

using IVec4 = std::array<int, 4>;
using IMat2 = std::array<std::array<int, 2>, 2>;

struct CyclicVacuumReport {
    IVec4 omega{};                      ///< |Psi+> up to 1/sqrt2
    std::array<IVec4, 4> first{};       ///< (1, A, B, AB) (x) 1 acting on omega
    std::array<IVec4, 4> second{};      ///< 1 (x) (1, A, B, AB) acting on omega
    std::array<IVec4, 4> bell{};        ///< Psi+, Psi-, Phi+, Phi- up to 1/sqrt2
    bool identities = false;            ///< first[k] == bell[k]
    bool second_same_orbit = false;     ///< second[k] == +-bell[k]
    double chsh = 0.0;
};

namespace detail {

/// (X (x) Y) on a basis-ordered 2-qubit integer vector, index = 2 q1 + q2.
inline IVec4 apply2(const IMat2& X, const IMat2& Y, const IVec4& v) {
    IVec4 r{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) r[2 * a + b] += X[a][c] * Y[b][d] * v[2 * c + d];
    return r;
}

inline IMat2 imul(const IMat2& X, const IMat2& Y) {
    IMat2 r{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r[a][b] = X[a][0] * Y[0][b] + X[a][1] * Y[1][b];
    return r;
}

} // namespace detail

inline CyclicVacuumReport cyclic_vacuum_demo() {
    const IMat2 one{{{1, 0}, {0, 1}}}, A{{{1, 0}, {0, -1}}}, B{{{0, 1}, {1, 0}}};
    const IMat2 ops[4] = {one, A, B, detail::imul(A, B)};
    CyclicVacuumReport r;
    r.omega = {0, 1, 1, 0};
    r.bell = {IVec4{0, 1, 1, 0}, IVec4{0, 1, -1, 0}, IVec4{1, 0, 0, 1}, IVec4{1, 0, 0, -1}};
    r.identities = r.second_same_orbit = true;
    for (int k = 0; k < 4; ++k) {
        r.first[k] = detail::apply2(ops[k], one, r.omega);
        r.second[k] = detail::apply2(one, ops[k], r.omega);
        r.identities = r.identities && r.first[k] == r.bell[k];
        IVec4 neg = r.bell[k];
        for (int& x : neg) x = -x;
        r.second_same_orbit = r.second_same_orbit && (r.second[k] == r.bell[k] || r.second[k] == neg);
    }
    Eigen::Matrix2d Z, X;
    Z << 1, 0, 0, -1;
    X << 0, 1, 1, 0;
    Eigen::Vector4d psi(0, inv_sqrt2, inv_sqrt2, 0);
    auto obs = [&](double t) -> Eigen::Matrix2d { return std::cos(t) * Z + std::sin(t) * X; };
    auto E = [&](double a, double b) -> double {
        const Eigen::Matrix4d op = Eigen::kroneckerProduct(obs(a), obs(b)).eval();
        return psi.dot(op * psi);
    };
    const double a1 = 0.0, a2 = pi / 2, b1 = -pi / 4, b2 = pi / 4;
    r.chsh = std::abs(E(a1, b1) + E(a1, b2) + E(a2, b1) - E(a2, b2));
    return r;
}

} // namespace spinor_qi
