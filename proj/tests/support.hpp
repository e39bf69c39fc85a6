#pragma once

// Random samplers and small oracles shared by the unit tests.

#include "spinor_qi/spinor_qi.hpp"

#include <random>

namespace sqt {

using namespace spinor_qi;

struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed = 12345) : gen(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }

    cplx complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }

    TwoSpinor spinor() {
        TwoSpinor s{complex(), complex()};
        while (s.norm() < 0.1) s = {complex(), complex()};
        return s;
    }

    std::array<double, 3> axis() {
        std::array<double, 3> a{uniform(), uniform(), uniform()};
        while (a[0] * a[0] + a[1] * a[1] + a[2] * a[2] < 0.01) a = {uniform(), uniform(), uniform()};
        return a;
    }

    SL2C sl2c(double max_rapidity = 1.5) {
        return SL2C::boost(axis(), uniform(0.0, max_rapidity)) * SL2C::rotation(axis(), uniform(-pi, pi));
    }

    FourVector vector(double r = 2.0) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }

    FourVector null_vector(double r = 2.0) {
        const double x = uniform(-r, r), y = uniform(-r, r), z = uniform(-r, r);
        return {std::sqrt(x * x + y * y + z * z), x, y, z};
    }

    MassiveMomentum massive(double m = 1.0, double r = 2.0) {
        return MassiveMomentum::from_3(m, uniform(-r, r), uniform(-r, r), uniform(-r, r));
    }

    FourVector unit_timelike(double r = 1.0) {
        return on_shell(1.0, uniform(-r, r), uniform(-r, r), uniform(-r, r));
    }
};

/// Real 4x4 matrix of v -> L H(v) L^dagger, solved in the real 8-dimensional
/// image of H by least squares (independent of hermitian_to_vector).
inline Mat4 lorentz_oracle(const SL2C& L) {
    Eigen::Matrix<double, 8, 4> B;
    auto flat = [](const Mat2& h) {
        Eigen::Matrix<double, 8, 1> v;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                v(2 * (2 * r + c)) = h(r, c).real();
                v(2 * (2 * r + c) + 1) = h(r, c).imag();
            }
        return v;
    };
    for (int b = 0; b < 4; ++b) B.col(b) = flat(ivdw(b));
    Mat4 M;
    for (int b = 0; b < 4; ++b)
        M.col(b) = B.colPivHouseholderQr().solve(flat(L.matrix() * ivdw(b) * L.matrix().adjoint()));
    return M;
}

} // namespace sqt
