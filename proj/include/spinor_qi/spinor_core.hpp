#pragma once

// Two-spinor algebra: epsilon contractions, flagpoles, Infeld-van der Waerden
// maps, the SL(2,C) -> Lorentz homomorphism, spin-frames and tetrads.
//
// Conventions
//   * TwoSpinor holds upper-index components (a^0, a^1) = (xi, eta).
//   * SL2C acts on upper components by matrix multiplication.
//   * eps_01 = 1; lowering is a_B = a^A eps_AB, so (a_0, a_1) = (-a^1, a^0).
//   * Signature (+,-,-,-).
//   * H(v)^{AA'} = g_a^{AA'} v^a = (1/sqrt2) [[t+z, x+iy], [x-iy, t-z]],
//     which makes H(flagpole(phi)) = phi phi^dagger.

#include "spinor_qi/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace spinor_qi {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;

inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
inline constexpr double pi = std::numbers::pi;

/// Default tolerances: group properties and algebraic identities.
inline constexpr double tol_group = 1e-10;
inline constexpr double tol_alg = 1e-12;

// ---------------------------------------------------------------------------
// TwoSpinor

struct TwoSpinor {
    cplx c0{}, c1{};

    TwoSpinor() = default;
    constexpr TwoSpinor(cplx a, cplx b) : c0(a), c1(b) {}

    cplx operator[](int i) const { return i == 0 ? c0 : c1; }

    TwoSpinor operator+(const TwoSpinor& o) const { return {c0 + o.c0, c1 + o.c1}; }
    TwoSpinor operator-(const TwoSpinor& o) const { return {c0 - o.c0, c1 - o.c1}; }
    TwoSpinor operator-() const { return {-c0, -c1}; }
    friend TwoSpinor operator*(cplx s, const TwoSpinor& a) { return {s * a.c0, s * a.c1}; }
    TwoSpinor operator*(cplx s) const { return {c0 * s, c1 * s}; }
    TwoSpinor operator/(cplx s) const { return {c0 / s, c1 / s}; }

    double norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }
    TwoSpinor conj() const { return {std::conj(c0), std::conj(c1)}; }

    Eigen::Vector2cd vec() const { return {c0, c1}; }
    static TwoSpinor from(const Eigen::Vector2cd& v) { return {v(0), v(1)}; }
};

/// a_A b^A = eps_AB a^A b^B = a0*b1 - a1*b0.
inline cplx contract(const TwoSpinor& a, const TwoSpinor& b) {
    return a.c0 * b.c1 - a.c1 * b.c0;
}

/// Lower-index components (a_0, a_1) = (-a^1, a^0).
inline TwoSpinor lower(const TwoSpinor& a) { return {-a.c1, a.c0}; }

/// Inverse of lower(): upper components from lower ones.
inline TwoSpinor raise(const TwoSpinor& a_low) { return {a_low.c1, -a_low.c0}; }

inline TwoSpinor operator*(const Mat2& m, const TwoSpinor& a) {
    return {m(0, 0) * a.c0 + m(0, 1) * a.c1, m(1, 0) * a.c0 + m(1, 1) * a.c1};
}

// ---------------------------------------------------------------------------
// FourVector

struct FourVector {
    double t{}, x{}, y{}, z{};

    FourVector() = default;
    constexpr FourVector(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}

    double operator[](int i) const {
        switch (i) {
        case 0: return t;
        case 1: return x;
        case 2: return y;
        default: return z;
        }
    }

    FourVector operator+(const FourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    FourVector operator-(const FourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    FourVector operator-() const { return {-t, -x, -y, -z}; }
    FourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
    friend FourVector operator*(double s, const FourVector& v) { return v * s; }
    FourVector operator/(double s) const { return {t / s, x / s, y / s, z / s}; }

    double dot(const FourVector& o) const { return t * o.t - x * o.x - y * o.y - z * o.z; }
    double norm2() const { return dot(*this); }
    double spatial_norm() const { return std::sqrt(x * x + y * y + z * z); }
    double max_abs() const {
        return std::max({std::abs(t), std::abs(x), std::abs(y), std::abs(z)});
    }

    Eigen::Vector4d vec() const { return {t, x, y, z}; }
    static FourVector from(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }
};

inline double dot(const FourVector& a, const FourVector& b) { return a.dot(b); }

inline FourVector operator*(const Mat4& m, const FourVector& v) {
    return FourVector::from(m * v.vec());
}

/// Minkowski metric diag(1,-1,-1,-1).
inline Mat4 minkowski() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

/// Bilinear (not sesquilinear) Minkowski product of complex 4-vectors.
inline cplx cdot(const Vec4c& a, const Vec4c& b) {
    return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

// ---------------------------------------------------------------------------
// Infeld-van der Waerden maps

/// Complex 4-vector -> X^{AA'} (Hermitian when the vector is real).
inline Mat2 vector_to_hermitian(const Vec4c& v) {
    const cplx i(0, 1);
    Mat2 h;
    h << v(0) + v(3), v(1) + i * v(2), v(1) - i * v(2), v(0) - v(3);
    return h * inv_sqrt2;
}

inline Mat2 vector_to_hermitian(const FourVector& v) {
    return vector_to_hermitian(Vec4c(v.vec().cast<cplx>()));
}

/// Inverse of vector_to_hermitian for an arbitrary 2x2 matrix (complex result).
inline Vec4c matrix_to_vector(const Mat2& h) {
    const cplx i(0, 1);
    return Vec4c((h(0, 0) + h(1, 1)) * inv_sqrt2, (h(0, 1) + h(1, 0)) * inv_sqrt2,
                 (h(0, 1) - h(1, 0)) / (i * sqrt2), (h(0, 0) - h(1, 1)) * inv_sqrt2);
}

/// Real part of the inverse map; exact for Hermitian input.
inline FourVector hermitian_to_vector(const Mat2& h) {
    const Vec4c v = matrix_to_vector(h);
    return {v(0).real(), v(1).real(), v(2).real(), v(3).real()};
}

/// Complex world-vector alpha^A conj(beta)^{A'}.
inline Vec4c spinor_vector(const TwoSpinor& a, const TwoSpinor& b) {
    return matrix_to_vector(a.vec() * b.vec().adjoint());
}

/// Infeld-van der Waerden matrix g_a^{AA'} (lower world index a).
inline Mat2 ivdw(int a) {
    Vec4c e = Vec4c::Zero();
    e(a) = 1.0;
    return vector_to_hermitian(e);
}

// ---------------------------------------------------------------------------
// Flagpoles

/// Null future-pointing vector of a spinor: (T, X, Y, Z) from xi, eta.
inline FourVector flagpole(const TwoSpinor& k) {
    const double a = std::norm(k.c0), b = std::norm(k.c1);
    const cplx c = k.c0 * std::conj(k.c1);
    return FourVector(a + b, 2.0 * c.real(), 2.0 * c.imag(), a - b) * inv_sqrt2;
}

/// Spinor whose flagpole is v; the first nonzero component carries arg = phase.
inline TwoSpinor spinor_from_flagpole(const FourVector& v, double phase = 0.0,
                                      double tol = tol_group) {
    const double scale = std::max(1.0, v.t * v.t);
    if (v.max_abs() == 0.0) throw error(errc::zero_vector, "flagpole of the zero vector");
    if (std::abs(v.norm2()) > tol * scale) throw error(errc::not_null, "vector is not null");
    if (v.t < 0.0) throw error(errc::past_pointing, "vector is past-pointing");

    const double tpz = (v.t + v.z) * inv_sqrt2;  // |xi|^2
    const double tmz = (v.t - v.z) * inv_sqrt2;  // |eta|^2
    const cplx xi_etabar = cplx(v.x, v.y) * inv_sqrt2;
    const cplx ph = std::polar(1.0, phase);
    if (tpz > 1e-14 * v.t) {
        const cplx xi = std::sqrt(tpz) * ph;
        return {xi, std::conj(xi_etabar) / std::conj(xi)};
    }
    return {0.0, std::sqrt(std::max(tmz, 0.0)) * ph};
}

// ---------------------------------------------------------------------------
// SL(2,C)

/// Unit-determinant 2x2 complex matrix acting on upper spinor components.
class SL2C {
public:
    SL2C() : m_(Mat2::Identity()) {}

    /// Validates det; renormalizes when |det-1| is in (tol_alg, 1e-6].
    explicit SL2C(const Mat2& m) : m_(m) {
        const cplx d = m.determinant();
        const double dev = std::abs(d - 1.0);
        if (dev > 1e-6 || !std::isfinite(dev))
            throw error(errc::not_unimodular, "|det - 1| exceeds 1e-6");
        if (dev > tol_alg) m_ /= std::sqrt(d);
    }

    static SL2C identity() { return SL2C(); }

    /// exp(A) for traceless A, in closed form.
    static SL2C exp_traceless(const Mat2& a) {
        const cplx s = std::sqrt(-a.determinant());
        const cplx sh = std::abs(s) < 1e-8 ? 1.0 + s * s / 6.0 : std::sinh(s) / s;
        Mat2 r = std::cosh(s) * Mat2::Identity() + sh * a;
        return SL2C(r);
    }

    /// exp(-i psi s(n)/2), s(n) = sqrt2 H((0,n)); z-axis: diag(e^{-i psi/2}, e^{i psi/2}).
    /// Its vector image is the rotation by -psi about n.
    static SL2C rotation(const std::array<double, 3>& axis, double psi) {
        return exp_traceless(generator(axis) * cplx(0, -psi / 2));
    }

    /// exp(chi s(n)/2): boost of rapidity chi along +n.
    static SL2C boost(const std::array<double, 3>& axis, double chi) {
        return exp_traceless(generator(axis) * cplx(chi / 2, 0));
    }

    const Mat2& matrix() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    SL2C operator*(const SL2C& o) const { return SL2C(m_ * o.m_); }
    TwoSpinor operator*(const TwoSpinor& a) const { return m_ * a; }
    SL2C operator-() const { return SL2C(Mat2(-m_)); }

    /// Inverse via the adjugate (det = 1).
    SL2C inverse() const {
        Mat2 r;
        r << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
        return SL2C(r);
    }

private:
    static Mat2 generator(const std::array<double, 3>& n) {
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (len == 0.0) throw error(errc::invalid_argument, "zero axis");
        const cplx i(0, 1);
        const double x = n[0] / len, y = n[1] / len, z = n[2] / len;
        Mat2 g;
        g << z, x + i * y, x - i * y, -z;
        return g;
    }

    Mat2 m_;
};

/// Real 4x4 M with H(Mv) = L H(v) L^dagger.
inline Mat4 lorentz_of(const SL2C& L) {
    Mat4 m;
    for (int b = 0; b < 4; ++b) {
        const Mat2 h = L.matrix() * ivdw(b) * L.matrix().adjoint();
        m.col(b) = hermitian_to_vector(h).vec();
    }
    return m;
}

/// Lambda^{-1} p without inverting the 4x4 matrix.
inline FourVector act_inverse(const SL2C& L, const FourVector& p) {
    return lorentz_of(L.inverse()) * p;
}

// ---------------------------------------------------------------------------
// Spin-frames and tetrads

struct SpinFrame {
    TwoSpinor o, i;

    /// Validates o_A iota^A = 1.
    static SpinFrame make(const TwoSpinor& o, const TwoSpinor& iota, double tol = tol_alg) {
        if (std::abs(contract(o, iota) - 1.0) > tol)
            throw error(errc::invalid_frame, "o_A iota^A != 1");
        return {o, iota};
    }

    static SpinFrame standard() { return {{1.0, 0.0}, {0.0, 1.0}}; }
};

struct NullTetrad {
    FourVector l, n;
    Vec4c m;  // complex leg o conj(iota); mbar is its conjugate
};

struct MinkowskiTetrad {
    FourVector t, x, y, z;
};

struct Tetrads {
    NullTetrad null;
    MinkowskiTetrad minkowski;
};

inline FourVector real_part(const Vec4c& v) {
    return {v(0).real(), v(1).real(), v(2).real(), v(3).real()};
}

inline Tetrads tetrads_from_frame(const SpinFrame& f) {
    if (std::abs(contract(f.o, f.i) - 1.0) > tol_alg)
        throw error(errc::invalid_frame, "o_A iota^A != 1");
    Tetrads r;
    r.null.l = flagpole(f.o);
    r.null.n = flagpole(f.i);
    r.null.m = spinor_vector(f.o, f.i);
    const Vec4c& m = r.null.m;
    const Vec4c mb = m.conjugate();
    r.minkowski.t = (r.null.l + r.null.n) * inv_sqrt2;
    r.minkowski.z = (r.null.l - r.null.n) * inv_sqrt2;
    r.minkowski.x = real_part((m + mb) * inv_sqrt2);
    r.minkowski.y = real_part((m - mb) * cplx(0, inv_sqrt2));
    return r;
}

/// eps_AB = o_A iota_B - iota_A o_B as a 2x2 matrix [A][B].
inline Mat2 epsilon_from_frame(const SpinFrame& f) {
    const Eigen::Vector2cd o = lower(f.o).vec(), i = lower(f.i).vec();
    return o * i.transpose() - i * o.transpose();
}

/// Canonical eps_AB.
inline Mat2 epsilon() {
    Mat2 e;
    e << 0, 1, -1, 0;
    return e;
}

/// Covariant metric g_ab computed three ways: eps eps', orthonormal legs, null legs.
struct MetricForms {
    Mat4 g1, g2, g3;
};

inline MetricForms metric_decompositions(const SpinFrame& f) {
    const Mat4 eta = minkowski();
    const Mat2 e = epsilon_from_frame(f);
    const Mat2 ebar = e.conjugate();

    MetricForms r;
    for (int a = 0; a < 4; ++a) {
        const Mat2 ga = ivdw(a);
        for (int b = 0; b < 4; ++b) {
            const Mat2 gb = ivdw(b);
            cplx s = 0;
            for (int A = 0; A < 2; ++A)
                for (int Ap = 0; Ap < 2; ++Ap)
                    for (int B = 0; B < 2; ++B)
                        for (int Bp = 0; Bp < 2; ++Bp)
                            s += ga(A, Ap) * gb(B, Bp) * e(A, B) * ebar(Ap, Bp);
            r.g1(a, b) = s.real();
        }
    }

    const Tetrads t = tetrads_from_frame(f);
    auto low = [&](const FourVector& v) -> Eigen::Vector4d { return eta * v.vec(); };
    const auto& mk = t.minkowski;
    r.g2 = low(mk.t) * low(mk.t).transpose() - low(mk.x) * low(mk.x).transpose() -
           low(mk.y) * low(mk.y).transpose() - low(mk.z) * low(mk.z).transpose();

    const Vec4c m = eta.cast<cplx>() * t.null.m;
    const Vec4c mb = m.conjugate();
    const Eigen::Vector4d l = low(t.null.l), n = low(t.null.n);
    const Mat4c g3 = (n * l.transpose() + l * n.transpose()).cast<cplx>() -
                     mb * m.transpose() - m * mb.transpose();
    r.g3 = g3.real();
    return r;
}

/// Bispinor gamma map: off-diagonal blocks sqrt2 q^{AA'} and its trace reverse.
inline Mat4c gamma_of(const FourVector& q) {
    const Mat2 a = sqrt2 * vector_to_hermitian(q);
    const Mat2 b = epsilon() * a.conjugate() * epsilon().transpose();
    Mat4c g = Mat4c::Zero();
    g.block<2, 2>(0, 2) = a;
    g.block<2, 2>(2, 0) = b;
    return g;
}

/// max-abs residual of {gamma_q, gamma_r} - 2 (q.r) 1.
inline double clifford_check(const FourVector& q, const FourVector& r) {
    const Mat4c gq = gamma_of(q), gr = gamma_of(r);
    const Mat4c ac = gq * gr + gr * gq - 2.0 * q.dot(r) * Mat4c::Identity();
    return ac.cwiseAbs().maxCoeff();
}

} // namespace spinor_qi
