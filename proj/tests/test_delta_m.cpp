#include <catch2/catch_amalgamated.hpp>

#include "spinor_qi/delta_m.hpp"

#include <random>

using namespace spinor_qi;
using namespace spinor_qi::delta;
using Catch::Approx;

namespace {

/// Independent Fourier oracle: composite Simpson on a fine uniform mesh over the support.
double fourier_oracle(double x, const DeltaParams& p, int n = 20000) {
    const double lo = -p.eps / 2, h = p.eps / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double k = lo + i * h;
        const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += wgt * delta_eval(k, p) * std::cos(k * x);
    }
    return s * h / 3.0 / two_pi;
}

} // namespace

TEST_CASE("M-shaped delta values", "[delta_m]") {
    for (double eps : {2.0, 1.0, 0.1, 1e-3}) {
        for (double a : {a_M, 0.5, 3.0}) {
            const DeltaParams p = DeltaParams::make(a, eps);
            CHECK(delta_eval(0.0, p) == a);
            CHECK(delta_eval(eps / 2, p) == 0.0);
            CHECK(delta_eval(-eps / 2 - 1e-9, p) == 0.0);
            CHECK(delta_eval(3 * eps, p) == 0.0);
            CHECK(delta_integral(p) == Approx(1.0).epsilon(1e-12));
            CHECK(delta_moment(0, p) == Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(delta_moment(1, p)) < 1e-12 * eps);
            for (double k : {0.1, 0.2, 0.33, 0.45}) CHECK(delta_eval(k * eps, p) == Approx(delta_eval(-k * eps, p)));
        }
    }
    CHECK_THROWS_AS(DeltaParams::make(-1.0, 1.0), error);
    CHECK_THROWS_AS(DeltaParams::make(1.0, 0.0), error);
}

TEST_CASE("numeric integral of the delta", "[delta_m]") {
    const DeltaParams p = DeltaParams::make(0.7, 0.8);
    const int n = 40000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += delta_eval(-0.4 + (i + 0.5) * 0.8 / n, p) * 0.8 / n;
    CHECK(s == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("the a = 4/eps case is the triangle", "[delta_m]") {
    for (double eps : {1.0, 0.2}) {
        const DeltaParams p = DeltaParams::lambda(eps);
        for (int i = -50; i <= 50; ++i) {
            const double k = i * eps / 80;
            CHECK(delta_eval(k, p) == Approx(std::max(0.0, 4 / eps - 16 * std::abs(k) / (eps * eps))).margin(1e-12));
        }
    }
}

TEST_CASE("Fourier transform of the delta", "[delta_m]") {
    std::mt19937_64 gen(60);
    std::uniform_real_distribution<double> ux(-40.0, 40.0);
    for (const DeltaParams& p : {DeltaParams::M(0.5), DeltaParams::make(1.0, 1.0), DeltaParams::lambda(0.7)}) {
        for (int i = 0; i < 20; ++i) {
            const double x = ux(gen);
            CHECK(std::abs(delta_hat(x, p) - delta_hat_quadrature(x, p)) < 1e-8);
            CHECK(std::abs(delta_hat(x, p) - fourier_oracle(x, p)) < 1e-8);
        }
        for (double x : {0.0, 1e-9, 1e-6, 1e-5, 2e-4})
            CHECK(std::abs(delta_hat(x, p) - delta_hat_quadrature(x, p)) < 1e-8);
        CHECK(delta_hat(0.0, p) == Approx(1.0 / two_pi).epsilon(1e-14));
    }
    for (double x : {0.5, 3.0, 20.0}) {
        double last = 1.0;
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            const double gap = std::abs(delta_hat(x, DeltaParams::M(eps)) - 1.0 / two_pi);
            CHECK(gap <= last);
            last = gap;
        }
        CHECK(last < 1e-4);
    }
}

TEST_CASE("convolution of deltas", "[delta_m]") {
    const DeltaParams n = DeltaParams::M(0.6), m = DeltaParams::make(2.0, 0.25);
    CHECK(convolve_integral(n, m) == Approx(1.0).epsilon(1e-9));
    for (double k : {0.0, 0.1, -0.2, 0.3}) CHECK(delta_convolve(k, n, m) == Approx(delta_convolve(k, m, n)).margin(1e-13));
    CHECK(delta_convolve(0.5, n, m) == 0.0);

    for (double k : {0.05, 0.12, 0.2}) {
        double last = 1e9;
        for (double em : {1e-2, 1e-3, 1e-4}) {
            const double gap = std::abs(delta_convolve(k, n, DeltaParams::M(em)) - delta_eval(k, n));
            CHECK(gap <= last + 1e-13);
            last = gap;
        }
        CHECK(last < 1e-3);
    }

    for (double x : {0.0, 0.7, 4.0, 13.0})
        CHECK(std::abs(convolve_hat(x, n, m) - two_pi * delta_hat(x, n) * delta_hat(x, m)) < 1e-8);
}

TEST_CASE("ordered limits of the convolution at zero", "[delta_m]") {
    const std::vector<double> outer = {0.04, 0.02, 0.01}, inner = {1e-3, 5e-4, 2.5e-4};
    std::vector<double> vals;
    for (double en : outer) {
        std::vector<double> in;
        for (double em : inner) in.push_back(delta_convolve(0.0, DeltaParams::M(en), DeltaParams::M(em)));
        vals.push_back(richardson_limit(inner, in));
    }
    CHECK(richardson_limit(outer, vals) == Approx(1.0 / two_pi).epsilon(1e-6));
}

TEST_CASE("square of a delta diverges", "[delta_m]") {
    double last = 0.0;
    for (double eps : {1.0, 0.1, 0.01, 1e-3, 1e-4}) {
        const double v = square_integral(DeltaParams::M(eps));
        CHECK(v > last);
        last = v;
    }
    CHECK(last > 1e3);
}

TEST_CASE("sifting", "[delta_m]") {
    const std::vector<double> sched = {0.4, 0.2, 0.1, 0.05, 0.025};
    const SiftTable c = sifting_test([](double) { return 2.5; }, sched, 2.5, 2.5);
    for (const auto& r : c.rows) CHECK(r.value == Approx(2.5).epsilon(1e-12));

    const SiftTable step = sifting_test([](double k) { return k > 0 ? 1.0 : 0.0; }, sched, 0.0, 1.0);
    CHECK(step.target == 0.5);
    for (const auto& r : step.rows) CHECK(r.gap < 1e-12);

    const SiftTable sq = sifting_test([](double k) { return k * k; }, sched, 0.0, 0.0);
    REQUIRE(sq.order.has_value());
    // a is held fixed, so the shape is not exactly self-similar in eps
    CHECK(*sq.order == Approx(2.0).margin(1e-2));
    for (const auto& r : sq.rows) CHECK(r.value == Approx(delta_moment(2, DeltaParams::M(r.eps))).epsilon(1e-10));

    const SiftTable smooth = sifting_test([](double k) { return std::cos(3 * k) + k; }, sched, 1.0, 1.0, 0.9);
    CHECK(smooth.rows.back().gap < smooth.rows.front().gap);
    CHECK(smooth.rows.back().gap < 1e-3);
}

TEST_CASE("measure-generalized delta", "[delta_m]") {
    const MeasureRule unit{[](double) { return 1.0; }};
    const DeltaParams p = DeltaParams::M(0.3);
    for (double k : {0.0, 0.05, -0.11}) CHECK(measure_delta(0.2 + k, 0.2, p, unit) == Approx(delta_eval(k, p)).epsilon(1e-12));

    const MeasureRule mu{[](double q) { return 1.0 + q * q; }};
    std::mt19937_64 gen(61);
    std::uniform_real_distribution<double> up(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double q = up(gen);
        CHECK(measure_delta(q, q, p, mu) == Approx(p.a).epsilon(1e-14));
    }

    auto f = [](double q) { return std::sin(q) + 0.5 * q; };
    double last = 1e9;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        const double gap = std::abs(measure_sift(f, 0.8, DeltaParams::M(eps), mu) - f(0.8));
        CHECK(gap <= last);
        CHECK(gap < 0.05 * eps);
        last = gap;
    }

    const MeasureRule bad{[](double q) { return q; }};
    CHECK_THROWS_AS(measure_delta(-1.0, 0.5, p, bad), error);
}

TEST_CASE("plane-wave norms", "[delta_m]") {
    const PlaneWaveSchedule s{{0.04, 0.02, 0.01}, {1e-3, 5e-4, 2.5e-4}};
    const PlaneWaveNorm same = plane_wave_norm(1.3, 1.3, s);
    CHECK(same.diag == Approx(1.0).epsilon(1e-6));
    CHECK(same.offdiag == Approx(1.0).epsilon(1e-6));

    const PlaneWaveNorm apart = plane_wave_norm(1.0, 2.0, s);
    CHECK(apart.offdiag == 0.0);
    for (const auto& r : apart.rows) CHECK(r.offdiag == 0.0);
    CHECK(apart.diag == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("derivatives of regularized plane waves", "[delta_m]") {
    const std::vector<double> sched = {0.4, 0.2, 0.1, 0.05, 0.025};
    for (double x : {0.5, 2.0}) {
        const auto rows = derivative_transport(x, 1.7, sched);
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].gap < rows[i - 1].gap);
        CHECK(rows.back().gap < 1e-2);
        // gap shrinks at least linearly in eps
        CHECK(rows.back().gap / rows.front().gap < 2.0 * sched.back() / sched.front());
    }
}

TEST_CASE("Richardson limit", "[delta_m]") {
    const std::vector<double> h = {0.4, 0.2, 0.1};
    std::vector<double> v;
    for (double x : h) v.push_back(3.0 + 2 * x + 5 * x * x);
    CHECK(richardson_limit(h, v) == Approx(3.0).epsilon(1e-13));
    CHECK(richardson_limit({0.1}, {7.0}) == 7.0);
    CHECK_THROWS_AS(richardson_limit({}, {}), error);
}
