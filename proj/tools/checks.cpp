#include "checks.hpp"

#include "spinor_qi/spinor_qi.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

namespace spinor_qi::checks {

namespace {

using namespace spinor_qi;

double tol(const Options& o, double d) { return o.tol ? *o.tol : d; }

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Rng {
    std::mt19937_64 gen;

    Rng(const Options& o, int salt) : gen(o.seed * 1000003ULL + static_cast<std::uint64_t>(salt)) {}

    double u(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    cplx c() { return {u(), u()}; }

    std::array<double, 3> axis() {
        std::array<double, 3> a{u(), u(), u()};
        while (a[0] * a[0] + a[1] * a[1] + a[2] * a[2] < 0.01) a = {u(), u(), u()};
        return a;
    }

    SL2C sl2c(double chi = 1.5) { return SL2C::boost(axis(), u(0.0, chi)) * SL2C::rotation(axis(), u(-pi, pi)); }
    FourVector vec(double r = 2.0) { return {u(-r, r), u(-r, r), u(-r, r), u(-r, r)}; }

    FourVector null(double r = 2.0) {
        const double x = u(-r, r), y = u(-r, r), z = u(-r, r);
        return {std::sqrt(x * x + y * y + z * z), x, y, z};
    }

    MassiveMomentum massive(double m = 1.0, double r = 2.0) { return MassiveMomentum::from_3(m, u(-r, r), u(-r, r), u(-r, r)); }
};

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

MomentumFn bump(std::array<double, 3> c, double width) {
    return [c, width](const FourVector& k) -> cplx {
        const double dx = k.x - c[0], dy = k.y - c[1], dz = k.z - c[2];
        return std::exp(-(dx * dx + dy * dy + dz * dz) / (2 * width * width));
    };
}

MomentumFn masked(MomentumFn f, std::function<bool(const FourVector&)> keep) {
    return [f = std::move(f), keep = std::move(keep)](const FourVector& k) -> cplx { return keep(k) ? f(k) : cplx(0.0); };
}

EPRKernel random_antisym(const MomentumGrid& g, Rng& rng) {
    EPRKernel k{g, Eigen::MatrixXcd::Zero(g.size(), g.size()), EPRKernel::Symmetry::antisymmetric};
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            k.psi(i, j) = rng.c();
            k.psi(j, i) = -k.psi(i, j);
        }
    return k;
}

CutoffProfile random_profile(const MomentumGrid& g, Rng& rng) {
    std::vector<cplx> amp;
    for (std::size_t i = 0; i < g.size(); ++i) amp.push_back(rng.c());
    CutoffProfile c;
    double n2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) n2 += g[i].w * std::norm(amp[i]);
    for (std::size_t i = 0; i < g.size(); ++i) {
        c.w.push_back(g[i].w);
        c.o0.push_back(amp[i] / std::sqrt(n2));
    }
    return c;
}

MomentumGrid random_cells(std::size_t M, Rng& rng, bool unit_weights = false) {
    std::vector<std::array<double, 3>> ks;
    for (std::size_t i = 0; i < M; ++i) ks.push_back({rng.u(), rng.u(), rng.u(0.2, 1.0)});
    MomentumGrid g = cells_from_momenta(ks, rng.u(0.5, 2.0));
    if (unit_weights)
        for (auto& c : g.cells) c.w = 1.0;
    return g;
}

// ---------------------------------------------------------------------------
// Acceptance criteria

Result c1_double_cover(const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(o, 1);
    const Mat4 eta = minkowski();
    std::vector<SL2C> Ls;
    for (int n = 0; n < 200; ++n) Ls.push_back(rng.sl2c());
    double metric = 0.0, hom = 0.0, sign = 0.0;
    for (std::size_t n = 0; n < Ls.size(); ++n) {
        const Mat4 M = lorentz_of(Ls[n]);
        metric = std::max(metric, max_abs(M.transpose() * eta * M - eta));
        const SL2C& B = Ls[(n + 1) % Ls.size()];
        hom = std::max(hom, max_abs(lorentz_of(Ls[n] * B) - M * lorentz_of(B)));
        sign = std::max(sign, max_abs(lorentz_of(-Ls[n]) - M));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double t = tol(o, 1e-10);
    return {metric <= t && hom <= t && sign <= t && secs < 1.0,
            "metric " + num(metric) + ", homomorphism " + num(hom) + ", -L " + num(sign) + ", " + num(secs) + " s"};
}

Result c2_tetrads(const Options& o) {
    Rng rng(o, 2);
    double g = 0.0, cl = 0.0;
    for (int n = 0; n < 50; ++n) {
        const SL2C L = rng.sl2c(1.0);
        const MetricForms f = metric_decompositions(SpinFrame::make(L * TwoSpinor{1.0, 0.0}, L * TwoSpinor{0.0, 1.0}));
        g = std::max({g, max_abs(f.g1 - f.g2), max_abs(f.g1 - f.g3), max_abs(f.g2 - f.g3)});
    }
    for (int n = 0; n < 100; ++n) cl = std::max(cl, clifford_check(rng.vec(), rng.vec()));
    const double t = tol(o, 1e-12);
    return {g <= t && cl <= t, "metric forms " + num(g) + ", Clifford " + num(cl)};
}

Result c3_pauli_lubanski(const Options& o) {
    Rng rng(o, 3);
    double hel = 0.0, par = 0.0, nul = 0.0, shift = 0.0;
    for (int n = 0; n < 50; ++n) {
        const auto p = rng.massive(1.0);
        const double ps = p.p.spatial_norm();
        const FourVector h(ps, p.p.t * p.p.x / ps, p.p.t * p.p.y / ps, p.p.t * p.p.z / ps);
        const auto [a, b] = pl_eigenvalues(h, p);
        hel = std::max({hel, std::abs(a - 0.5), std::abs(b + 0.5)});
        const auto [c, d] = pl_eigenvalues(p.p * rng.u(0.1, 5.0), p);
        par = std::max({par, std::abs(c), std::abs(d)});
        FourVector t = rng.null();
        t = t / t.dot(p.p);
        const auto [e, f] = pl_eigenvalues(t, p);
        nul = std::max({nul, std::abs(e - 0.5), std::abs(f + 0.5)});
        for (int k = 0; k <= 20; ++k) shift = std::max(shift, gauge_shift_check(h, -10.0 + k, p));
    }
    const bool ok = hel <= tol(o, 1e-14) && par <= tol(o, 1e-12) && nul <= tol(o, 1e-12) && shift <= tol(o, 1e-9);
    return {ok, "helicity " + num(hel) + ", parallel " + num(par) + ", null " + num(nul) + ", gauge shift " + num(shift)};
}

Result c4_wigner(const Options& o) {
    Rng rng(o, 4);
    const GaugeSpec g = HelicityGauge{};
    double uni = 0.0, det = 0.0, coc = 0.0;
    for (int n = 0; n < 50; ++n) {
        const SL2C A = rng.sl2c(1.0), B = rng.sl2c(1.0);
        const auto p = rng.massive();
        const Mat2 ua = wigner_u(A, p, g).u;
        uni = std::max(uni, (ua * ua.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff());
        det = std::max(det, std::abs(ua.determinant() - 1.0));
        const MassiveMomentum q{act_inverse(A, p.p), p.m};
        coc = std::max(coc, (wigner_u(A * B, p, g).u - ua * wigner_u(B, q, g).u).cwiseAbs().maxCoeff());
    }
    const bool ok = uni <= tol(o, 1e-10) && det <= tol(o, 1e-10) && coc <= tol(o, 1e-9);
    return {ok, "unitarity " + num(uni) + ", det " + num(det) + ", cocycle " + num(coc)};
}

Result c5_pst(const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const MomentumGrid grid = cubic_grid(16, 6.0, 1.0);
    const auto st = gaussian_product_state(grid, {inv_sqrt2, inv_sqrt2}, 1.0);
    const SL2C L = SL2C::boost({0, 0, 1}, 1.0);
    const PSTResult hel = pst_experiment(st, L, HelicityGauge{});
    const PSTResult pn = pst_experiment(st, L, PrincipalNullGauge{principal_null_spinors(L).front()});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double change = std::abs(pn.entropy_after - pn.entropy_before);
    const bool ok = hel.entropy_before <= tol(o, 1e-12) && hel.entropy_after > 0.01 && change <= tol(o, 1e-10) && secs < 30.0;
    return {ok, "before " + num(hel.entropy_before) + ", after " + num(hel.entropy_after) +
                    " bits, principal-null change " + num(change) + ", " + num(secs) + " s"};
}

Result c6_epr_oracle(const Options& o) {
    Rng rng(o, 6);
    double gap = 0.0;
    for (int s = 0; s < 20; ++s) {
        const std::size_t M = 2 + s % 2;
        const int N = 2 + (s / 2) % 2;
        const MomentumGrid g = random_cells(M, rng);
        const CutoffProfile prof = random_profile(g, rng);
        const EPRKernel ker = random_antisym(g, rng);
        DetectorRegion a = DetectorRegion::none(g), b = DetectorRegion::none(g);
        a.mask[0] = 1;
        b.mask[M - 1] = 1;
        for (std::size_t i = 1; i + 1 < M; ++i) (rng.u() < 0 ? a : b).mask[i] = 1;
        const double al = rng.u(-pi, pi), be = rng.u(-pi, pi);
        const FockRep rep(OracleConfig::make(g, prof, N));
        const double closed = -std::cos(2 * (al - be)) * probability_p(a, b, ker, RepChoice::reducible(N, prof));
        gap = std::max(gap, std::abs(oracle_epr_average(al, be, a, b, ker, rep) - closed));
    }

    const MomentumGrid g = cubic_grid(6, 3.0, 0.0);
    const DetectorRegion right = DetectorRegion::half_space(g, {1, 0, 0}, 0.0), left = right.complement();
    const EPRKernel ker = sample_kernel(g, product_antisym(masked(bump({-1.5, 0, 0}, 1.0), [](const FourVector& k) { return k.x < 0; }),
                                                           masked(bump({1.5, 0.5, 0}, 1.0), [](const FourVector& k) { return k.x > 0; })));
    const RepChoice rep = RepChoice::reducible(2, CutoffProfile::gaussian(g, 2.0));
    const double p1 = std::abs(probability_p(left, right, ker, rep) - 1.0);
    const DetectorRegion all = DetectorRegion::all(g);
    const double zero = std::abs(epr_average(0.3, 1.1, all, all, ker, rep));

    const bool ok = gap <= tol(o, 1e-9) && p1 <= tol(o, 1e-12) && zero <= tol(o, 1e-12);
    return {ok, "oracle gap " + num(gap) + ", |p - 1| " + num(p1) + ", full-grid average " + num(zero)};
}

Result c7_norms(const Options& o) {
    Rng rng(o, 7);
    double gap = 0.0, zero = 0.0, psi2_gap = 0.0;
    std::string worst;
    for (std::size_t M : {1u, 2u, 3u}) {
        const MomentumGrid g = random_cells(M, rng);
        const CutoffProfile prof = random_profile(g, rng);
        const EPRKernel ker = random_antisym(g, rng);
        double pair = 0.0;
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j)
                pair += g[i].w * g[j].w * std::norm(ker.psi(i, j)) * std::norm(prof.o0[i]) * std::norm(prof.o0[j]);

        const MomentumGrid gu = random_cells(M, rng, true);
        const CutoffProfile pu = random_profile(gu, rng);
        for (int N : {1, 2, 3}) {
            const FockRep rep(OracleConfig::make(g, prof, N));
            const FockVector v = apply_psi(ker, rep);
            gap = std::max(gap, std::abs(v.squaredNorm() - (1.0 - 1.0 / N) * pair));
            if (N == 1) zero = std::max(zero, v.norm());

            const FockRep ru(OracleConfig::make(gu, pu, N));
            const double oracle = apply_psi2(ru).squaredNorm(), formula = psi2_norm(N, pu);
            if (std::abs(oracle - formula) > psi2_gap) {
                psi2_gap = std::abs(oracle - formula);
                worst = "M=" + std::to_string(M) + " N=" + std::to_string(N) + ": oracle " + num(oracle) + " vs " + num(formula);
            }
        }
    }
    const bool ok = gap <= tol(o, 1e-9) && zero <= tol(o, 1e-12) && psi2_gap <= tol(o, 1e-9);
    std::string d = "two-photon gap " + num(gap) + ", N=1 norm " + num(zero) + ", diagonal-kernel gap " + num(psi2_gap);
    if (!worst.empty()) d += " (" + worst + ")";
    return {ok, d};
}

Result c8_chsh(const Options& o) {
    const MomentumGrid g = cubic_grid(6, 3.0, 0.0);
    const DetectorRegion right = DetectorRegion::half_space(g, {1, 0, 0}, 0.0), left = right.complement();
    const RepChoice rep = RepChoice::reducible(2, CutoffProfile::gaussian(g, 2.0));
    auto in_left = [](const FourVector& k) { return k.x < 0; };
    auto in_right = [](const FourVector& k) { return k.x > 0; };
    const MomentumFn f = masked(bump({-1.5, 0, 0}, 1.0), in_left);
    const MomentumFn g0 = masked(bump({1.5, 0, 0}, 1.0), in_right);
    const MomentumFn h = masked(bump({-1.5, 1.0, 0}, 1.0), in_left);

    const CHSHResult best = chsh(0, pi / 4, pi / 8, 3 * pi / 8, left, right, sample_kernel(g, product_antisym(f, g0)), rep);
    const double s_gap = std::abs(best.S - 2 * sqrt2);

    // brute force over angles in steps of pi/16 for each leakage level
    const double qt = tol(o, 1e-9);
    int agree = 0, total = 0, below = 0, above = 0;
    for (int n = 0; n <= 30; ++n) {
        const double leak = 0.1 * n;
        const MomentumFn gl = [=](const FourVector& k) { return g0(k) + leak * h(k); };
        const EPRKernel ker = sample_kernel(g, product_antisym(f, gl));
        const double pe = effective_p(left, right, ker, rep);
        double smax = 0.0;
        for (int a1 = 0; a1 < 16; ++a1)
            for (int a2 = 0; a2 < 16; ++a2)
                for (int b1 = 0; b1 < 16; ++b1)
                    for (int b2 = 0; b2 < 16; ++b2) {
                        const int as[] = {a1, a1, a2, a2}, bs[] = {b1, b2, b1, b2};
                        std::array<double, 4> E;
                        for (int i = 0; i < 4; ++i) E[i] = -std::cos(2 * (as[i] - bs[i]) * pi / 16) * pe;
                        smax = std::max(smax, chsh_value(E).first);
                    }
        if (std::abs(pe - inv_sqrt2) <= qt) continue;
        ++total;
        (pe > inv_sqrt2 ? above : below) += 1;
        agree += (smax > 2.0) == (pe > inv_sqrt2);
    }
    const bool ok = s_gap <= qt && agree == total && above > 0 && below > 0;
    return {ok, "|S - 2 sqrt2| " + num(s_gap) + ", scan agreement " + std::to_string(agree) + "/" + std::to_string(total) +
                    " (" + std::to_string(above) + " above, " + std::to_string(below) + " below threshold)"};
}

Result c9_kernel_covariance(const Options& o) {
    std::vector<std::array<double, 3>> plane;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            if (i != 0 || j != 0) plane.push_back({0.6 * i, 0.0, 0.6 * j});
    const MomentumGrid g2 = cells_from_momenta(plane, 0.2);
    const KernelRule anti = product_antisym(bump({1, 0, 0.3}, 0.7), bump({-0.4, 0, 1}, 0.7));
    const double generic = antisymmetry_defect(transform_kernel(g2, anti, SL2C::boost({0.3, 0.5, 0.8}, 0.5)));

    std::vector<std::array<double, 3>> line;
    for (double z : {0.3, 0.7, 1.2, 1.8, 2.5}) line.push_back({0, 0, z});
    const MomentumGrid g1 = cells_from_momenta(line, 0.1);
    const KernelRule anti_line = product_antisym(bump({0, 0, 0.8}, 0.5), bump({0, 0, 1.9}, 0.5));
    const double par = std::max(antisymmetry_defect(transform_kernel(g1, anti_line, SL2C::boost({0, 0, 1}, 0.5))),
                                antisymmetry_defect(transform_kernel(g1, anti_line, SL2C::rotation({0, 0, 1}, 1.1))));
    return {generic > 1e-3 && par <= tol(o, 1e-12), "generic boost defect " + num(generic) + ", axis-parallel defect " + num(par)};
}

Result c10_delta(const Options& o) {
    using namespace spinor_qi::delta;
    const auto t0 = std::chrono::steady_clock::now();
    double integral = 0.0;
    bool at_zero = true;
    for (double eps : {2.0, 0.5, 1e-2, 1e-4})
        for (double a : {a_M, 1.0, 4.0 / eps}) {
            const DeltaParams p = DeltaParams::make(a, eps);
            integral = std::max(integral, std::abs(delta_integral(p) - 1.0));
            at_zero = at_zero && delta_eval(0.0, p) == a;
        }
    const double step = std::abs(sift([](double k) { return k > 0 ? 1.0 : 0.0; }, DeltaParams::M(1e-4)) - 0.5);

    double fourier = 0.0;
    for (const DeltaParams& p : {DeltaParams::M(0.5), DeltaParams::make(1.0, 0.5), DeltaParams::lambda(0.3)})
        for (int i = 0; i < 20; ++i) {
            const double x = -30.0 + 3.1 * i;
            fourier = std::max(fourier, std::abs(delta_hat(x, p) - delta_hat_quadrature(x, p)));
        }

    const PlaneWaveNorm pw = plane_wave_norm(0.7, 0.7, {{0.04, 0.02, 0.01}, {1e-3, 5e-4, 2.5e-4}});
    const double diag = std::abs(pw.diag - 1.0);

    double sym = 0.0;
    const DeltaParams n = DeltaParams::M(0.6), m = DeltaParams::make(2.0, 0.25);
    for (int i = -10; i <= 10; ++i) sym = std::max(sym, std::abs(delta_convolve(0.04 * i, n, m) - delta_convolve(0.04 * i, m, n)));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool ok = integral <= tol(o, 4e-16) && at_zero && step < tol(o, 1e-3) && fourier <= tol(o, 1e-8) &&
                    diag <= tol(o, 1e-6) && sym <= tol(o, 1e-10) && secs < 10.0;
    return {ok, "integral " + num(integral) + ", delta(0) " + (at_zero ? "exact" : "inexact") + ", step " + num(step) +
                    ", Fourier " + num(fourier) + ", <k|k> " + num(diag) + ", convolution symmetry " + num(sym) + ", " +
                    num(secs) + " s"};
}

Result c11_cyclic(const Options& o) {
    const CyclicVacuumReport r = cyclic_vacuum_demo();
    const double gap = std::abs(r.chsh - 2 * sqrt2);
    return {r.identities && r.second_same_orbit && gap <= tol(o, 1e-12),
            std::string("identities ") + (r.identities ? "hold" : "fail") + ", second factor " +
                (r.second_same_orbit ? "same orbit" : "differs") + ", CHSH gap " + num(gap)};
}

// ---------------------------------------------------------------------------
// Module invariants

Result flagpole_roundtrip(const Options& o) {
    Rng rng(o, 101);
    double worst = 0.0;
    for (int n = 0; n < 200; ++n) {
        const FourVector v = rng.null();
        worst = std::max(worst, (flagpole(spinor_from_flagpole(v, rng.u(-pi, pi))) - v).max_abs());
        const SL2C L = rng.sl2c();
        const TwoSpinor k{rng.c(), rng.c()};
        const FourVector a = flagpole(L * k);
        worst = std::max(worst, (a - lorentz_of(L) * flagpole(k)).max_abs() / std::max(1.0, a.t));
    }
    return {worst <= tol(o, 1e-12), "max residual " + num(worst)};
}

Result pi_partner_reconstruction(const Options& o) {
    Rng rng(o, 102);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const auto p = rng.massive(rng.u(0.5, 2.0));
        const OmegaFrame f = pi_partner(omega_from_tau({rng.c(), rng.c()}, p.p), p);
        worst = std::max({worst, (reconstruct_momentum(f) - p.p).max_abs() / (p.p.t * p.p.t),
                          std::abs(contract(f.omega, f.pi) - 1.0) / p.p.t});
    }
    return {worst <= tol(o, 1e-11), "max residual " + num(worst)};
}

Result projector_algebra(const Options& o) {
    Rng rng(o, 103);
    double worst = 0.0;
    for (int n = 0; n < 30; ++n) {
        const auto p = rng.massive();
        const auto P = spin_energy_projectors(omega_frame(HelicityGauge{}, p));
        const Mat4c all[4] = {P.plus_plus, P.plus_minus, P.minus_plus, P.minus_minus};
        Mat4c sum = Mat4c::Zero();
        for (int a = 0; a < 4; ++a) {
            sum += all[a];
            worst = std::max(worst, (all[a] * all[a] - all[a]).cwiseAbs().maxCoeff() / (p.p.t * p.p.t));
        }
        worst = std::max(worst, (sum - Mat4c::Identity()).cwiseAbs().maxCoeff() / p.p.t);
    }
    return {worst <= tol(o, 1e-10), "max residual " + num(worst)};
}

Result renyi_principal_null(const Options& o) {
    const MomentumGrid grid = cubic_grid(10, 5.0, 1.0);
    const auto st = gaussian_product_state(grid, {0.6, cplx(0.0, 0.8)}, 1.0, {0.2, 0.0, 0.0});
    const SL2C L = SL2C::boost({0.3, 0.1, 1.0}, 0.8) * SL2C::rotation({0.3, 0.1, 1.0}, 0.4);
    double worst = 0.0;
    for (const auto& tau : principal_null_spinors(L)) {
        const PSTResult r = pst_experiment(st, L, PrincipalNullGauge{tau});
        worst = std::max(worst, (density_spectrum(r.rho_after) - density_spectrum(r.rho_before)).cwiseAbs().maxCoeff());
        for (double al : {2.0, 3.0}) worst = std::max(worst, std::abs(renyi_bits(r.rho_after, al) - renyi_bits(r.rho_before, al)));
    }
    return {worst <= tol(o, 1e-10), "max spectrum or Renyi change " + num(worst)};
}

Result wigner_phase_cocycle(const Options& o) {
    Rng rng(o, 104);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const SL2C A = rng.sl2c(), B = rng.sl2c();
        const FourVector k = rng.null();
        const double d = wigner_phase(A * B, k) - wigner_phase(A, k) - wigner_phase(B, act_inverse(A, k));
        worst = std::max({worst, std::abs(std::remainder(d, 2 * pi)),
                          std::abs(std::remainder(wigner_phase(A, k * 3.3) - wigner_phase(A, k), 2 * pi))});
    }
    return {worst <= tol(o, 1e-9), "max phase residual " + num(worst)};
}

Result twistor_equivariance(const Options& o) {
    Rng rng(o, 105);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const SL2C L = rng.sl2c(1.0);
        const FourVector R = on_shell(1.0, rng.u(), rng.u(), rng.u()), k = rng.null();
        const TwoSpinor lhs = L * twistor_omega(act_inverse(L, R), act_inverse(L, k));
        const TwoSpinor rhs = twistor_omega(R, k) * std::polar(1.0, wigner_phase(L, k));
        worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
    return {worst <= tol(o, 1e-9), "max residual " + num(worst)};
}

Result p_symmetry(const Options& o) {
    Rng rng(o, 106);
    const MomentumGrid g = cubic_grid(6, 3.0, 0.0);
    const RepChoice rep = RepChoice::reducible(2, CutoffProfile::gaussian(g, 2.0));
    bool exact = true;
    double angular = 0.0;
    for (int n = 0; n < 5; ++n) {
        const EPRKernel ker = sample_kernel(g, product_antisym(bump({rng.u(-2, 2), rng.u(-2, 2), 0}, 1.0), bump({0, rng.u(-2, 2), 1}, 1.2)));
        const DetectorRegion a = DetectorRegion::ball(g, {rng.u(-2, 2), 0, 0}, 1.5);
        const DetectorRegion b = DetectorRegion::ball(g, {0, rng.u(-2, 2), 0}, 1.5) - a;
        exact = exact && probability_p(a, b, ker, rep) == probability_p(b, a, ker, rep);
        const double e0 = epr_average(0.2, 0.2, a, b, ker, rep), e = epr_average(0.2, 0.9, a, b, ker, rep);
        if (std::abs(e0) > 1e-12) angular = std::max(angular, std::abs(e / e0 - std::cos(1.4)));
    }
    return {exact && angular <= tol(o, 1e-12), std::string("p symmetry ") + (exact ? "exact" : "inexact") + ", angular factor " + num(angular)};
}

Result ccr_safe_subspace(const Options& o) {
    double worst = 0.0;
    for (int N : {1, 2, 3}) {
        std::vector<std::array<double, 3>> ks = {{0.3, 0, 1}, {0, 0.5, 1}};
        const MomentumGrid g = cells_from_momenta(ks, 1.0);
        const FockRep rep(OracleConfig::make(g, CutoffProfile::uniform(g), N));
        const auto safe = rep.safe_mask();
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                SpMat d = SpMat(rep.a(Pol::plus, i) * rep.adag(Pol::plus, j)) - SpMat(rep.adag(Pol::plus, j) * rep.a(Pol::plus, i));
                if (i == j) d -= rep.I(i);
                for (int c = 0; c < d.outerSize(); ++c) {
                    if (!safe[static_cast<std::size_t>(c)]) continue;
                    for (SpMat::InnerIterator it(d, c); it; ++it) worst = std::max(worst, std::abs(it.value()));
                }
            }
        SpMat sum(static_cast<Eigen::Index>(rep.dim()), static_cast<Eigen::Index>(rep.dim()));
        for (std::size_t i = 0; i < 2; ++i) sum += rep.I(i);
        SpMat id(sum.rows(), sum.cols());
        id.setIdentity();
        worst = std::max(worst, SpMat(sum - id).norm());
    }
    return {worst <= tol(o, 1e-14), "max residual " + num(worst)};
}

Result ff_identity(const Options& o) {
    using namespace spinor_qi::delta;
    const DeltaParams n = DeltaParams::M(0.6), m = DeltaParams::make(2.0, 0.25);
    double worst = 0.0;
    for (double x : {0.0, 0.7, 4.0, 13.0, 29.0}) worst = std::max(worst, std::abs(convolve_hat(x, n, m) - two_pi * delta_hat(x, n) * delta_hat(x, m)));
    double last = 0.0;
    bool grows = true;
    for (double eps : {1.0, 0.1, 0.01, 1e-3}) {
        const double v = square_integral(DeltaParams::M(eps));
        grows = grows && v > last;
        last = v;
    }
    return {worst <= tol(o, 1e-8) && grows, "transform identity " + num(worst) + ", square integral " + (grows ? "grows" : "does not grow")};
}

} // namespace

const std::vector<Check>& registry() {
    static const std::vector<Check> r = {
        {1, "spinor_core", "sl2c double cover", c1_double_cover},
        {2, "spinor_core", "tetrad and metric identities", c2_tetrads},
        {3, "massive_rep", "Pauli-Lubanski eigenvalues", c3_pauli_lubanski},
        {4, "massive_rep", "Wigner matrix unitarity and cocycle", c4_wigner},
        {5, "massive_rep", "boosted spin entropy", c5_pst},
        {6, "epr_engine", "closed form vs Fock oracle", c6_epr_oracle},
        {7, "fock_oracle", "two-photon and diagonal-kernel norms", c7_norms},
        {8, "epr_engine", "CHSH value and p threshold", c8_chsh},
        {9, "photon_rep", "kernel covariance", c9_kernel_covariance},
        {10, "delta_m", "delta calculus", c10_delta},
        {11, "fock_oracle", "cyclic vacuum toy model", c11_cyclic},
        {0, "spinor_core", "flagpole round trip and equivariance", flagpole_roundtrip},
        {0, "massive_rep", "pi partner reconstruction", pi_partner_reconstruction},
        {0, "massive_rep", "spin-energy projector algebra", projector_algebra},
        {0, "massive_rep", "Renyi entropies under principal-null gauge", renyi_principal_null},
        {0, "photon_rep", "Wigner phase cocycle and scale invariance", wigner_phase_cocycle},
        {0, "photon_rep", "twistor omega equivariance", twistor_equivariance},
        {0, "epr_engine", "p symmetry and angular factor", p_symmetry},
        {0, "fock_oracle", "commutators and identity resolution", ccr_safe_subspace},
        {0, "delta_m", "convolution transform and square divergence", ff_identity},
    };
    return r;
}

Outcome run(const Check& c, const Options& opt) {
    Outcome out{&c, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        out.result = c.run(opt);
    } catch (const std::exception& e) {
        out.result = {false, std::string("exception: ") + e.what()};
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

const Check* find_criterion(int id) {
    for (const Check& c : registry())
        if (c.criterion == id) return &c;
    return nullptr;
}

} // namespace spinor_qi::checks
