#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace spinor_qi;
using Catch::Approx;

namespace {

MomentumGrid unit_cells(std::size_t M) {
    std::vector<std::array<double, 3>> ks;
    for (std::size_t i = 0; i < M; ++i) ks.push_back({std::cos(2.0 * i), std::sin(2.0 * i), 0.5 + i});
    MomentumGrid g = cells_from_momenta(ks, 1.0);
    for (auto& c : g.cells) c.w = 1.0;
    return g;
}

CutoffProfile profile(const MomentumGrid& g, const std::vector<cplx>& amp) {
    return CutoffProfile::make(g, [&](const FourVector& k) {
        for (std::size_t i = 0; i < g.size(); ++i)
            if ((g[i].p - k).max_abs() == 0.0) return amp[i];
        return cplx(0.0);
    });
}

/// max |(A v)_x - (B v)_x| over safe basis vectors v and all components x.
double safe_gap(const SpMat& A, const SpMat& B, const std::vector<char>& safe) {
    const SpMat D = A - B;
    double worst = 0.0;
    for (int k = 0; k < D.outerSize(); ++k) {
        if (!safe[static_cast<std::size_t>(k)]) continue;
        for (SpMat::InnerIterator it(D, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

SpMat comm(const SpMat& A, const SpMat& B) { return SpMat(A * B) - SpMat(B * A); }

EPRKernel random_antisym(const MomentumGrid& g, sqt::Rng& rng) {
    EPRKernel k{g, Eigen::MatrixXcd::Zero(g.size(), g.size()), EPRKernel::Symmetry::antisymmetric};
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            k.psi(i, j) = rng.complex();
            k.psi(j, i) = -k.psi(i, j);
        }
    return k;
}

} // namespace

TEST_CASE("oracle configuration guards", "[fock_oracle]") {
    const MomentumGrid g = unit_cells(3);
    const CutoffProfile u = CutoffProfile::uniform(g);
    CHECK_THROWS_AS(OracleConfig::make(g, u, 2, 1), error);
    CHECK_THROWS_AS(OracleConfig::make(g, u, 5, 2), error);
    CHECK(OracleConfig::make(g, u, 4, 2).dim() == 531441);
    try {
        OracleConfig::make(g, u, 5, 2);
    } catch (const error& e) {
        CHECK(e.code() == errc::dimension_overflow);
    }
}

TEST_CASE("commutation relations on the safe subspace", "[fock_oracle]") {
    for (int N : {1, 2, 3}) {
        const MomentumGrid g = unit_cells(2);
        const FockRep rep(OracleConfig::make(g, CutoffProfile::uniform(g), N));
        const auto safe = rep.safe_mask();
        const Pol pols[2] = {Pol::plus, Pol::minus};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (Pol s : pols)
                    for (Pol t : pols) {
                        const SpMat c = comm(rep.a(s, i), rep.adag(t, j));
                        SpMat want(c.rows(), c.cols());
                        if (i == j && s == t) want = rep.I(i);
                        CHECK(safe_gap(c, want, safe) < 1e-14);
                        CHECK(comm(rep.a(s, i), rep.a(t, j)).norm() < 1e-14);
                        SpMat nw(c.rows(), c.cols());
                        if (i == j && s == t) nw = rep.adag(s, i);
                        CHECK(safe_gap(comm(rep.n(s, i), rep.adag(t, j)), nw, safe) < 1e-14);
                    }
    }
}

TEST_CASE("number operators differ from a^dag a for N > 1", "[fock_oracle]") {
    const MomentumGrid g = unit_cells(2);
    const FockRep one(OracleConfig::make(g, CutoffProfile::uniform(g), 1));
    CHECK(SpMat(one.n(Pol::plus, 0) - one.adag(Pol::plus, 0) * one.a(Pol::plus, 0)).norm() < 1e-14);
    const FockRep two(OracleConfig::make(g, CutoffProfile::uniform(g), 2));
    CHECK(SpMat(two.n(Pol::plus, 0) - two.adag(Pol::plus, 0) * two.a(Pol::plus, 0)).norm() > 0.1);
}

TEST_CASE("number eigenvalues of created states", "[fock_oracle]") {
    const MomentumGrid g = unit_cells(2);
    const FockRep rep(OracleConfig::make(g, CutoffProfile::gaussian(g, 1.0), 2, 3));
    FockVector v = vacuum(rep);
    for (int j = 1; j <= 2; ++j) {
        v = rep.adag(Pol::minus, 1) * v;
        CHECK((rep.n(Pol::minus, 1) * v - double(j) * v).norm() < 1e-13 * v.norm());
        CHECK((rep.n(Pol::plus, 1) * v).norm() < 1e-14);
    }
}

TEST_CASE("vacuum", "[fock_oracle]") {
    const MomentumGrid g = unit_cells(3);
    const FockRep rep(OracleConfig::make(g, CutoffProfile::gaussian(g, 1.0), 2));
    const FockVector v = vacuum(rep);
    CHECK(v.norm() == Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 0; i < 3; ++i)
        for (Pol s : {Pol::plus, Pol::minus}) {
            CHECK((rep.a(s, i) * v).norm() == 0.0);
            CHECK((rep.n(s, i) * v).norm() == 0.0);
        }

    const MomentumGrid g1 = unit_cells(1);
    const FockRep r1(OracleConfig::make(g1, CutoffProfile::uniform(g1), 3));
    const FockVector v1 = vacuum(r1);
    CHECK(std::abs(v1(0)) == Approx(1.0).epsilon(1e-15));
    CHECK(v1.tail(v1.size() - 1).norm() == 0.0);
}

TEST_CASE("cell operators resolve the identity", "[fock_oracle]") {
    for (int N : {1, 2, 3}) {
        const MomentumGrid g = unit_cells(3);
        const FockRep rep(OracleConfig::make(g, CutoffProfile::uniform(g), N));
        SpMat sum(static_cast<Eigen::Index>(rep.dim()), static_cast<Eigen::Index>(rep.dim()));
        for (std::size_t i = 0; i < 3; ++i) sum += rep.I(i);
        SpMat id(sum.rows(), sum.cols());
        id.setIdentity();
        CHECK(SpMat(sum - id).norm() < 1e-13);
    }
}

TEST_CASE("two-photon states", "[fock_oracle]") {
    sqt::Rng rng(50);
    const MomentumGrid g = unit_cells(3);
    const CutoffProfile prof = profile(g, {0.4, cplx(0.3, 0.5), 0.8});
    const EPRKernel ker = random_antisym(g, rng);

    const FockRep r1(OracleConfig::make(g, prof, 1));
    CHECK(apply_psi(ker, r1).norm() < 1e-14);

    for (int N : {2, 3}) {
        const FockRep rep(OracleConfig::make(g, prof, N));
        const double want = two_photon_norm(ker, RepChoice::reducible(N, prof));
        CHECK(apply_psi(ker, rep).squaredNorm() == Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("diagonal-kernel state norm from the oracle", "[fock_oracle]") {
    // With unit weights the oracle norm is 1/N + (1 - 1/N) sum |O0|^4.
    for (std::size_t M : {1u, 2u, 3u}) {
        const MomentumGrid g = unit_cells(M);
        std::vector<cplx> amp;
        for (std::size_t i = 0; i < M; ++i) amp.push_back(std::polar(1.0 + 0.5 * i, 0.7 * i));
        const CutoffProfile prof = profile(g, amp);
        double s4 = 0.0;
        for (cplx o : prof.o0) s4 += std::pow(std::norm(o), 2);
        for (int N : {1, 2, 3}) {
            const FockRep rep(OracleConfig::make(g, prof, N));
            const double want = 1.0 / N + (1.0 - 1.0 / N) * s4;
            CHECK(apply_psi2(rep).squaredNorm() == Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("linear-polarization observables", "[fock_oracle]") {
    const MomentumGrid g = unit_cells(1);
    const FockRep rep(OracleConfig::make(g, CutoffProfile::uniform(g), 1));
    const FockVector vac = vacuum(rep);
    const DetectorRegion all = DetectorRegion::all(g);
    const FockVector lin = (rep.adag(Pol::plus, 0) * vac + rep.adag(Pol::minus, 0) * vac) * inv_sqrt2;
    CHECK((y_theta(0.0, all, rep).op * lin - lin).norm() < 1e-14);
    CHECK((y_theta(pi / 2, all, rep).op * lin + lin).norm() < 1e-14);

    const FockVector circ = rep.adag(Pol::plus, 0) * vac;
    for (double th : {0.0, 0.3, 1.1, 2.0}) {
        const SpMat Y = y_theta(th, all, rep).op;
        CHECK(std::abs(circ.dot(Y * circ)) < 1e-14);
        const FockVector rot = (rep.adag(Pol::plus, 0) * vac * std::polar(1.0, -th) +
                                rep.adag(Pol::minus, 0) * vac * std::polar(1.0, th)) * inv_sqrt2;
        CHECK((Y * rot - rot).norm() < 1e-13);
    }
}

TEST_CASE("oracle EPR averages", "[fock_oracle]") {
    const MomentumGrid g = unit_cells(2);
    const CutoffProfile prof = CutoffProfile::uniform(g);
    EPRKernel ker{g, Eigen::MatrixXcd::Zero(2, 2), EPRKernel::Symmetry::antisymmetric};
    ker.psi(0, 1) = 1.0;
    ker.psi(1, 0) = -1.0;
    const DetectorRegion a = DetectorRegion::cells(g, {0}), b = DetectorRegion::cells(g, {1});
    const DetectorRegion all = DetectorRegion::all(g);
    const FockRep r2(OracleConfig::make(g, prof, 2)), r3(OracleConfig::make(g, prof, 3));
    for (double al : {0.0, 0.4, 1.0})
        for (double be : {0.0, 0.9}) {
            const double e2 = oracle_epr_average(al, be, a, b, ker, r2);
            CHECK(e2 == Approx(-std::cos(2 * (al - be))).margin(1e-12));
            CHECK(std::abs(oracle_epr_average(al, be, a, b, ker, r3) - e2) < 1e-10);
            CHECK(std::abs(oracle_epr_average(al, be, all, all, ker, r2)) < 1e-12);
        }
    const FockRep r1(OracleConfig::make(g, prof, 1));
    CHECK_THROWS_AS(oracle_epr_average(0, 0, a, b, ker, r1), error);
}

TEST_CASE("oracle agrees with the closed-form engine", "[fock_oracle]") {
    sqt::Rng rng(51);
    for (int scenario = 0; scenario < 24; ++scenario) {
        const std::size_t M = 2 + scenario % 2;
        const int N = 2 + (scenario / 2) % 2;
        std::vector<std::array<double, 3>> ks;
        for (std::size_t i = 0; i < M; ++i) ks.push_back({rng.uniform(), rng.uniform(), rng.uniform(0.2, 1.0)});
        const MomentumGrid g = cells_from_momenta(ks, rng.uniform(0.5, 2.0));
        std::vector<cplx> amp;
        for (std::size_t i = 0; i < M; ++i) amp.push_back(rng.complex());
        const CutoffProfile prof = profile(g, amp);
        const EPRKernel ker = random_antisym(g, rng);

        DetectorRegion a = DetectorRegion::none(g), b = DetectorRegion::none(g);
        for (std::size_t i = 0; i < M; ++i) {
            a.mask[i] = rng.uniform(0, 1) < 0.5;
            b.mask[i] = rng.uniform(0, 1) < 0.5;
        }
        a.mask[0] = 1;
        b.mask[M - 1] = 1;

        const FockRep rep(OracleConfig::make(g, prof, N));
        const double al = rng.uniform(-pi, pi), be = rng.uniform(-pi, pi);
        const double oracle = oracle_epr_average(al, be, a, b, ker, rep);
        const double closed = epr_average(al, be, a, b, ker, RepChoice::reducible(N, prof));
        CHECK(std::abs(oracle - closed) < 1e-9);
    }
}

TEST_CASE("Pauli-Lubanski number operator", "[fock_oracle]") {
    const MomentumGrid g = unit_cells(2);
    const FockRep rep(OracleConfig::make(g, CutoffProfile::gaussian(g, 1.0), 2));
    const auto W = pl_number_operator(rep);
    const FockVector vac = vacuum(rep);
    for (std::size_t i = 0; i < 2; ++i) {
        const FockVector p = rep.adag(Pol::plus, i) * vac, m = rep.adag(Pol::minus, i) * vac;
        const double low[4] = {g[i].p.t, -g[i].p.x, -g[i].p.y, -g[i].p.z};
        for (int a = 0; a < 4; ++a) {
            CHECK((W[a].op * p - low[a] * p).norm() < 1e-13);
            CHECK((W[a].op * m + low[a] * m).norm() < 1e-13);
            CHECK((W[a].op * vac).norm() == 0.0);
        }
    }
    CHECK(W[0].label == "W_0");
}

TEST_CASE("cyclic vacuum toy model", "[fock_oracle]") {
    const CyclicVacuumReport r = cyclic_vacuum_demo();
    CHECK(r.identities);
    CHECK(r.second_same_orbit);
    CHECK(r.first[1] == IVec4{0, 1, -1, 0});
    CHECK(std::abs(r.chsh - 2 * sqrt2) < 1e-12);
}
