#pragma once

// M-shaped delta-sequences: values, Fourier transforms, convolutions,
// sifting limits, measure-generalized deltas and plane-wave norms.

#include "spinor_qi/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

namespace spinor_qi::delta {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double a_M = 1.0 / two_pi;

struct DeltaParams {
    double a = a_M;    ///< value at 0
    double eps = 1.0;  ///< support width

    static DeltaParams make(double a, double eps) {
        if (!(a > 0.0) || !(eps > 0.0)) throw error(errc::invalid_argument, "a and eps must be positive");
        return {a, eps};
    }

    static DeltaParams M(double eps) { return make(a_M, eps); }
    static DeltaParams lambda(double eps) { return make(4.0 / eps, eps); }
};

/// alpha + beta k on [l, r).
struct Piece {
    double l, r, alpha, beta;

    double at(double k) const { return alpha + beta * k; }
};

/// The four linear pieces of the M shape, left to right.
inline std::array<Piece, 4> pieces(const DeltaParams& p) {
    const double e = p.eps, a = p.a;
    const double s_out = (4.0 / e) * (2.0 / e - a / 2.0);
    const double s_in = (4.0 / e) * (2.0 / e - 1.5 * a);
    return {Piece{-e / 2, -e / 4, 2.0 * (2.0 / e - a / 2.0), s_out},
            Piece{-e / 4, 0.0, a, -s_in},
            Piece{0.0, e / 4, a, s_in},
            Piece{e / 4, e / 2, 2.0 * (2.0 / e - a / 2.0), -s_out}};
}

inline double delta_eval(double k, const DeltaParams& p) {
    for (const Piece& q : pieces(p))
        if (k >= q.l && k < q.r) return q.at(k);
    return 0.0;
}

/// Exact integral of the piecewise-linear shape.
inline double delta_integral(const DeltaParams& p) {
    double s = 0.0;
    for (const Piece& q : pieces(p)) s += q.alpha * (q.r - q.l) + q.beta * (q.r * q.r - q.l * q.l) / 2.0;
    return s;
}

/// int k^n delta(k) dk, exact.
inline double delta_moment(int n, const DeltaParams& p) {
    double s = 0.0;
    for (const Piece& q : pieces(p))
        s += q.alpha * (std::pow(q.r, n + 1) - std::pow(q.l, n + 1)) / (n + 1) +
             q.beta * (std::pow(q.r, n + 2) - std::pow(q.l, n + 2)) / (n + 2);
    return s;
}

/// (1/2pi) int delta(k) e^{ikx} dk in closed form; Taylor series below |eps x| = 1e-4.
inline double delta_hat(double x, const DeltaParams& p) {
    const double u = p.eps * x;
    if (std::abs(u) < 1e-4) {
        double s = 0.0, fact = 1.0, xp = 1.0;
        for (int j = 0; j < 6; ++j) {
            if (j > 0) {
                fact *= (2.0 * j - 1) * (2.0 * j);
                xp *= -x * x;
            }
            s += xp * delta_moment(2 * j, p) / fact;
        }
        return s / two_pi;
    }
    const double sn = std::sin(u / 8.0);
    return (8.0 / std::numbers::pi) * (p.eps * p.a + (4.0 - p.eps * p.a) * std::cos(u / 4.0)) * sn * sn / (u * u);
}

namespace detail {

template <class F>
double gk(F&& f, double a, double b) {
    if (b <= a) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

} // namespace detail

/// d^order/dx^order of delta_hat by Gauss-Kronrod quadrature over the pieces (order 0, 1, 2).
inline double delta_hat_quadrature(double x, const DeltaParams& p, int order = 0) {
    double s = 0.0;
    for (const Piece& q : pieces(p)) {
        if (q.l < 0.0) continue;  // even shape: twice the k > 0 half
        s += detail::gk(
            [&](double k) {
                const double d = q.at(k);
                switch (order) {
                case 0: return d * std::cos(k * x);
                case 1: return -k * d * std::sin(k * x);
                default: return -k * k * d * std::cos(k * x);
                }
            },
            q.l, q.r);
    }
    return s / std::numbers::pi;
}

/// delta*(k) = int delta_n(k - k') delta_m(k') dk', exact piecewise-quadratic integration.
inline double delta_convolve(double k, const DeltaParams& n, const DeltaParams& m) {
    double s = 0.0;
    for (const Piece& q1 : pieces(n))
        for (const Piece& q2 : pieces(m)) {
            const double lo = std::max(k - q1.r, q2.l), hi = std::min(k - q1.l, q2.r);
            if (hi <= lo) continue;
            // (alpha1 + beta1 (k - t)) (alpha2 + beta2 t) = A + B t + C t^2
            const double c1 = q1.alpha + q1.beta * k;
            const double A = c1 * q2.alpha, B = c1 * q2.beta - q1.beta * q2.alpha, C = -q1.beta * q2.beta;
            auto F = [&](double t) { return t * (A + t * (B / 2.0 + t * C / 3.0)); };
            s += F(hi) - F(lo);
        }
    return s;
}

/// int delta*(k) dk by exact integration of each quadratic segment.
inline double convolve_integral(const DeltaParams& n, const DeltaParams& m) {
    std::vector<double> br;
    for (const Piece& q1 : pieces(n))
        for (const Piece& q2 : pieces(m))
            for (double b1 : {q1.l, q1.r})
                for (double b2 : {q2.l, q2.r}) br.push_back(b1 + b2);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double a = br[i], b = br[i + 1], c = (a + b) / 2;
        // Simpson is exact on quadratics
        s += (b - a) / 6.0 * (delta_convolve(a, n, m) + 4 * delta_convolve(c, n, m) + delta_convolve(b, n, m));
    }
    return s;
}

/// (1/2pi) int delta*(k) e^{ikx} dk by quadrature over the convolution's segments.
inline double convolve_hat(double x, const DeltaParams& n, const DeltaParams& m) {
    std::vector<double> br{0.0};
    for (const Piece& q1 : pieces(n))
        for (const Piece& q2 : pieces(m))
            for (double b1 : {q1.l, q1.r})
                for (double b2 : {q2.l, q2.r})
                    if (b1 + b2 > 0.0) br.push_back(b1 + b2);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
        s += detail::gk([&](double k) { return delta_convolve(k, n, m) * std::cos(k * x); }, br[i], br[i + 1]);
    return s / std::numbers::pi;
}

/// int delta(k)^2 dk, which diverges as eps -> 0.
inline double square_integral(const DeltaParams& p) { return delta_convolve(0.0, p, p); }

// ---------------------------------------------------------------------------
// Limits

/// Value at h = 0 of the quadratic through the last three (h, v) points (Neville).
inline double richardson_limit(const std::vector<double>& h, const std::vector<double>& v) {
    const std::size_t n = h.size();
    if (n != v.size() || n == 0) throw error(errc::invalid_argument, "bad extrapolation input");
    if (n < 3) return v.back();
    double x[3] = {h[n - 3], h[n - 2], h[n - 1]};
    double p[3] = {v[n - 3], v[n - 2], v[n - 1]};
    for (int k = 1; k < 3; ++k)
        for (int i = 0; i + k < 3; ++i) p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
    return p[0];
}

struct SiftRow {
    double eps, value, gap;
};

struct SiftTable {
    std::vector<SiftRow> rows;
    double target = 0.0;               ///< (f(0-) + f(0+)) / 2
    std::optional<double> order;       ///< observed order from the last two nonzero gaps
};

/// int f(k) delta(k, a, eps) dk by quadrature on each linear piece.
inline double sift(const std::function<double(double)>& f, const DeltaParams& p) {
    double s = 0.0;
    for (const Piece& q : pieces(p)) s += detail::gk([&](double k) { return f(k) * q.at(k); }, q.l, q.r);
    return s;
}

inline std::optional<double> observed_order(const std::vector<double>& h, const std::vector<double>& gap) {
    for (std::size_t i = gap.size(); i-- > 1;)
        if (gap[i] > 1e-15 && gap[i - 1] > 1e-15) return std::log(gap[i - 1] / gap[i]) / std::log(h[i - 1] / h[i]);
    return std::nullopt;
}

inline SiftTable sifting_test(const std::function<double(double)>& f, const std::vector<double>& schedule,
                              double f0_minus, double f0_plus, double a = a_M) {
    SiftTable t;
    t.target = (f0_minus + f0_plus) / 2.0;
    std::vector<double> h, g;
    for (double eps : schedule) {
        const double v = sift(f, DeltaParams::make(a, eps));
        t.rows.push_back({eps, v, std::abs(v - t.target)});
        h.push_back(eps);
        g.push_back(t.rows.back().gap);
    }
    t.order = observed_order(h, g);
    return t;
}

// ---------------------------------------------------------------------------
// Measure-generalized deltas

struct MeasureRule {
    std::function<double(double)> rho;  ///< density d mu / dp

    double at(double p) const {
        const double r = rho(p);
        if (!(r > 0.0)) throw error(errc::nonpositive_density, "rho(p) must be positive");
        return r;
    }
};

/// delta_mu(p, p') = rho(p')^{-1} delta(p - p', a rho(p), eps).
inline double measure_delta(double p, double pp, const DeltaParams& prm, const MeasureRule& mu) {
    const double rp = mu.at(p), rpp = mu.at(pp);
    return delta_eval(p - pp, DeltaParams::make(prm.a * rp, prm.eps)) / rpp;
}

/// int d mu(p') delta_mu(p, p') f(p').
inline double measure_sift(const std::function<double(double)>& f, double p, const DeltaParams& prm,
                           const MeasureRule& mu) {
    const DeltaParams scaled = DeltaParams::make(prm.a * mu.at(p), prm.eps);
    double s = 0.0;
    for (const Piece& q : pieces(scaled))
        s += detail::gk([&](double pp) { return mu.at(pp) * measure_delta(p, pp, prm, mu) * f(pp); },
                        p - q.r, p - q.l);
    return s;
}

// ---------------------------------------------------------------------------
// Plane waves

struct PlaneWaveSchedule {
    std::vector<double> eps_n;  ///< outer widths
    std::vector<double> eps_m;  ///< inner widths (limit taken first)
};

struct PlaneWaveRow {
    double eps_n, eps_m, offdiag, diag;
};

struct PlaneWaveNorm {
    double offdiag = 0.0;  ///< lim_n lim_m <k,1/n|k',1/m>
    double diag = 0.0;     ///< lim_n lim_m <k,1/n|k,1/m>
    std::vector<PlaneWaveRow> rows;
    std::vector<double> inner_offdiag, inner_diag;  ///< inner limits per eps_n
};

/// <k,1/n|k',1/m> = 2 pi delta*(k - k', 1/n, 1/m) with delta_M factors, under ordered limits.
inline PlaneWaveNorm plane_wave_norm(double k, double kp, const PlaneWaveSchedule& s) {
    PlaneWaveNorm r;
    for (double en : s.eps_n) {
        std::vector<double> off, dia;
        for (double em : s.eps_m) {
            const DeltaParams n = DeltaParams::M(en), m = DeltaParams::M(em);
            off.push_back(two_pi * delta_convolve(k - kp, n, m));
            dia.push_back(two_pi * delta_convolve(0.0, n, m));
            r.rows.push_back({en, em, off.back(), dia.back()});
        }
        r.inner_offdiag.push_back(richardson_limit(s.eps_m, off));
        r.inner_diag.push_back(richardson_limit(s.eps_m, dia));
    }
    r.offdiag = richardson_limit(s.eps_n, r.inner_offdiag);
    r.diag = richardson_limit(s.eps_n, r.inner_diag);
    return r;
}

struct TransportRow {
    double eps, gap;
};

/// |(1/i d/dx)^2 <x|k,eps> - k^2 e^{ikx}| with <x|k,eps> = 2 pi delta_hat_M(x, eps) e^{ikx}.
inline std::vector<TransportRow> derivative_transport(double x, double k, const std::vector<double>& schedule) {
    std::vector<TransportRow> rows;
    for (double eps : schedule) {
        const DeltaParams p = DeltaParams::M(eps);
        const double d0 = delta_hat(x, p), d1 = delta_hat_quadrature(x, p, 1), d2 = delta_hat_quadrature(x, p, 2);
        // -(d/dx)^2 [g e^{ikx}] e^{-ikx} = -(g'' + 2ik g' - k^2 g)
        const std::complex<double> lhs = -two_pi * std::complex<double>(d2 - k * k * d0, 2.0 * k * d1);
        rows.push_back({eps, std::abs(lhs - k * k)});
    }
    return rows;
}

} // namespace spinor_qi::delta
