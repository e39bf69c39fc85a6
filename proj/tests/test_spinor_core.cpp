#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace spinor_qi;
using Catch::Approx;

namespace {

double vdist(const FourVector& a, const FourVector& b) { return (a - b).max_abs(); }

Mat4 rotation_z(double psi) {
    Mat4 r = Mat4::Identity();
    r(1, 1) = std::cos(psi);
    r(1, 2) = -std::sin(psi);
    r(2, 1) = std::sin(psi);
    r(2, 2) = std::cos(psi);
    return r;
}

} // namespace

TEST_CASE("contract is the symplectic form", "[spinor_core]") {
    CHECK(contract({1.0, 0.0}, {0.0, 1.0}) == cplx(1.0));
    CHECK(contract({0.0, 1.0}, {1.0, 0.0}) == cplx(-1.0));
    CHECK(contract({2.0, 3.0}, {5.0, 7.0}) == cplx(-1.0));

    sqt::Rng rng(1);
    for (int n = 0; n < 100; ++n) {
        const TwoSpinor a = rng.spinor(), b = rng.spinor();
        CHECK(std::abs(contract(a, b) + contract(b, a)) < 1e-14);
        CHECK(std::abs(contract(a, a)) < 1e-14);
        CHECK(std::abs(contract(a, b) - (a.c0 * b.c1 - a.c1 * b.c0)) < 1e-14);
    }
}

TEST_CASE("flagpoles of basis spinors", "[spinor_core]") {
    CHECK(vdist(flagpole({1.0, 0.0}), FourVector(1, 0, 0, 1) * inv_sqrt2) < 1e-15);
    CHECK(vdist(flagpole({0.0, 1.0}), FourVector(1, 0, 0, -1) * inv_sqrt2) < 1e-15);
    CHECK(vdist(flagpole({1.0, 1.0}), FourVector(sqrt2, sqrt2, 0, 0)) < 1e-15);
}

TEST_CASE("flagpoles are null, future-pointing and phase-blind", "[spinor_core]") {
    sqt::Rng rng(2);
    for (int n = 0; n < 200; ++n) {
        const TwoSpinor k = rng.spinor();
        const FourVector v = flagpole(k);
        CHECK(std::abs(v.norm2()) < 1e-12 * std::max(1.0, v.t * v.t));
        CHECK(v.t > 0.0);
        const FourVector w = flagpole(k * std::polar(1.0, rng.uniform(-pi, pi)));
        CHECK(vdist(v, w) < 1e-13);
    }
}

TEST_CASE("spinor_from_flagpole inverts flagpole up to phase", "[spinor_core]") {
    sqt::Rng rng(3);
    for (int n = 0; n < 200; ++n) {
        const FourVector v = rng.null_vector();
        const double phase = rng.uniform(-pi, pi);
        const TwoSpinor k = spinor_from_flagpole(v, phase);
        CHECK(vdist(flagpole(k), v) < 1e-12);
        CHECK(std::abs(std::arg(k.c0) - phase) < 1e-12);
    }
    const TwoSpinor south = spinor_from_flagpole(FourVector(1, 0, 0, -1));
    CHECK(std::abs(south.c0) == 0.0);
    CHECK(vdist(flagpole(south), FourVector(1, 0, 0, -1)) < 1e-15);
}

TEST_CASE("spinor_from_flagpole rejects non-null input", "[spinor_core]") {
    auto code_of = [](const FourVector& v) {
        try {
            spinor_from_flagpole(v);
        } catch (const error& e) {
            return e.code();
        }
        return errc::invalid_argument;
    };
    CHECK(code_of({1, 0, 0, 0}) == errc::not_null);
    CHECK(code_of({-1, 0, 0, 1}) == errc::past_pointing);
    CHECK(code_of({0, 0, 0, 0}) == errc::zero_vector);
}

TEST_CASE("vector_to_hermitian", "[spinor_core]") {
    const Mat2 h = vector_to_hermitian(FourVector(sqrt2, 0, 0, 0));
    CHECK((h - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);

    sqt::Rng rng(4);
    for (int n = 0; n < 100; ++n) {
        const FourVector v = rng.vector();
        const Mat2 hv = vector_to_hermitian(v);
        CHECK((hv - hv.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(std::abs(hv.determinant() - v.norm2() / 2.0) < 1e-13);
        CHECK(vdist(hermitian_to_vector(hv), v) < 1e-14);

        const TwoSpinor k = rng.spinor();
        const Mat2 kk = k.vec() * k.vec().adjoint();
        CHECK((vector_to_hermitian(flagpole(k)) - kk).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("lorentz_of on rotations and boosts", "[spinor_core]") {
    CHECK((lorentz_of(SL2C::identity()) - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-15);

    for (double psi : {0.3, 1.0, 2.5, -1.2}) {
        Mat2 d = Mat2::Zero();
        d(0, 0) = std::polar(1.0, -psi / 2);
        d(1, 1) = std::polar(1.0, psi / 2);
        const SL2C L(d);
        CHECK((L.matrix() - SL2C::rotation({0, 0, 1}, psi).matrix()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((lorentz_of(L) - rotation_z(-psi)).cwiseAbs().maxCoeff() < 1e-14);
    }

    for (double chi : {0.2, 1.0, 2.0}) {
        Mat2 d = Mat2::Zero();
        d(0, 0) = std::exp(chi / 2);
        d(1, 1) = std::exp(-chi / 2);
        const Mat4 M = lorentz_of(SL2C(d));
        CHECK(M(0, 0) == Approx(std::cosh(chi)).epsilon(1e-14));
        CHECK(M(0, 3) == Approx(std::sinh(chi)).epsilon(1e-14));
        CHECK((lorentz_of(SL2C::boost({0, 0, 1}, chi)) - M).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("lorentz_of is a two-to-one homomorphism into the orthochronous group",
          "[spinor_core]") {
    sqt::Rng rng(5);
    const Mat4 eta = minkowski();
    for (int n = 0; n < 100; ++n) {
        const SL2C A = rng.sl2c(), B = rng.sl2c();
        const Mat4 MA = lorentz_of(A);
        const double s = std::max(1.0, MA.cwiseAbs().maxCoeff());
        CHECK((MA - sqt::lorentz_oracle(A)).cwiseAbs().maxCoeff() < 1e-12 * s);
        CHECK((MA.transpose() * eta * MA - eta).cwiseAbs().maxCoeff() < 1e-10 * s * s);
        CHECK(MA.determinant() == Approx(1.0).epsilon(1e-9));
        CHECK(MA(0, 0) >= 1.0 - 1e-12);
        CHECK((lorentz_of(A * B) - MA * lorentz_of(B)).cwiseAbs().maxCoeff() < 1e-10 * s * s);
        CHECK((lorentz_of(-A) - MA).cwiseAbs().maxCoeff() < 1e-15 * s);
    }
}

TEST_CASE("flagpole is equivariant", "[spinor_core]") {
    sqt::Rng rng(6);
    for (int n = 0; n < 100; ++n) {
        const SL2C L = rng.sl2c();
        const TwoSpinor k = rng.spinor();
        const FourVector lhs = flagpole(L * k), rhs = lorentz_of(L) * flagpole(k);
        CHECK(vdist(lhs, rhs) < 1e-12 * std::max(1.0, lhs.t));
    }
}

TEST_CASE("SL2C validates the determinant", "[spinor_core]") {
    Mat2 m = Mat2::Identity() * 1.1;
    CHECK_THROWS_AS(SL2C(m), error);
    m = Mat2::Identity();
    m(0, 0) = 1.0 + 1e-9;
    const SL2C L(m);
    CHECK(std::abs(L.matrix().determinant() - 1.0) < 1e-14);

    sqt::Rng rng(7);
    const SL2C A = rng.sl2c();
    CHECK(((A * A.inverse()).matrix() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("standard tetrad", "[spinor_core]") {
    const Tetrads t = tetrads_from_frame(SpinFrame::standard());
    CHECK(vdist(t.minkowski.t, {1, 0, 0, 0}) < 1e-15);
    CHECK(vdist(t.minkowski.x, {0, 1, 0, 0}) < 1e-15);
    CHECK(vdist(t.minkowski.y, {0, 0, 1, 0}) < 1e-15);
    CHECK(vdist(t.minkowski.z, {0, 0, 0, 1}) < 1e-15);
    CHECK(vdist(t.null.l, FourVector(1, 0, 0, 1) * inv_sqrt2) < 1e-15);
    CHECK(vdist(t.null.n, FourVector(1, 0, 0, -1) * inv_sqrt2) < 1e-15);
}

TEST_CASE("random spin-frames give orthonormal tetrads and one metric", "[spinor_core]") {
    sqt::Rng rng(8);
    const Mat4 eta = minkowski();
    for (int n = 0; n < 50; ++n) {
        const SL2C L = rng.sl2c(1.0);
        const SpinFrame f = SpinFrame::make(L * TwoSpinor{1.0, 0.0}, L * TwoSpinor{0.0, 1.0});
        const auto& mk = tetrads_from_frame(f).minkowski;
        const FourVector legs[4] = {mk.t, mk.x, mk.y, mk.z};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(std::abs(legs[a].dot(legs[b]) - eta(a, b)) < 1e-10);
        CHECK(mk.t.t > 0.0);

        const MetricForms g = metric_decompositions(f);
        CHECK((g.g1 - eta).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((g.g2 - eta).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((g.g3 - eta).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((epsilon_from_frame(f) - epsilon()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("null rotation of iota keeps a valid frame", "[spinor_core]") {
    sqt::Rng rng(9);
    for (int n = 0; n < 20; ++n) {
        const TwoSpinor o{1.0, 0.0};
        const TwoSpinor iota = TwoSpinor{0.0, 1.0} + o * rng.complex(3.0);
        const SpinFrame f = SpinFrame::make(o, iota);
        const Tetrads t = tetrads_from_frame(f);
        CHECK(vdist(t.null.l, FourVector(1, 0, 0, 1) * inv_sqrt2) < 1e-15);
        CHECK(std::abs(t.null.l.dot(t.null.n) - 1.0) < 1e-12);
        CHECK((metric_decompositions(f).g2 - minkowski()).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS_AS(SpinFrame::make({1.0, 0.0}, {0.0, 2.0}), error);
}

TEST_CASE("gamma matrices satisfy the Clifford relation", "[spinor_core]") {
    CHECK(clifford_check({1, 0, 0, 0}, {1, 0, 0, 0}) < 1e-14);
    CHECK(clifford_check({1, 0, 0, 0}, {0, 1, 0, 0}) < 1e-14);
    CHECK(clifford_check({0, 0, 1, 0}, {0, 0, 0, 1}) < 1e-14);
    const Mat4c gt = gamma_of({1, 0, 0, 0});
    CHECK(((gt * gt) - Mat4c::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    sqt::Rng rng(10);
    for (int n = 0; n < 100; ++n) CHECK(clifford_check(rng.vector(), rng.vector()) < 1e-12);
}
