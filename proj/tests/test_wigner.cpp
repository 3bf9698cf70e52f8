#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "thetaphase/coherent.hpp"
#include "thetaphase/wigner.hpp"

using namespace thetaphase;
using oracle::rel_diff;

TEST_CASE("phase-point operator at the origin matches the printed matrices") {
    {
        // M=5: rows e0, e4, e3, e2, e1 (inversion about the origin)
        const OperatorMatrix w = wigner_operator(PhasePoint(SpaceDim(5), 0, 0));
        for (int k = 0; k < 5; ++k)
            for (int l = 0; l < 5; ++l)
                CHECK(w.at(k, l) == ((l == (5 - k) % 5) ? cplx{1, 0} : cplx{0, 0}));
    }
    {
        // M=4: fixed points at m=0 and m=2, swap of 1 and 3
        const OperatorMatrix w = wigner_operator(PhasePoint(SpaceDim(4), 0, 0));
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l)
                CHECK(w.at(k, l) == ((l == (4 - k) % 4) ? cplx{1, 0} : cplx{0, 0}));
    }
}

TEST_CASE("wigner operator structure") {
    for (int m_dim : {3, 4, 5, 7}) {
        const SpaceDim dim(m_dim);
        for (int q = 0; q < m_dim; ++q)
            for (int p = 0; p < m_dim; ++p) {
                const OperatorMatrix w = wigner_operator(PhasePoint(dim, q, p));
                CHECK(max_nonhermiticity(w) < 1e-12);
                const double want_tr = dim.odd() ? 1.0 : 2.0;
                CHECK(std::abs(trace(w) - cplx{want_tr, 0.0}) < 1e-13);
            }
    }

    // Fourier-sum construction agrees for odd M
    for (int m_dim : {3, 5, 7}) {
        const SpaceDim dim(m_dim);
        for (int q = 0; q < m_dim; ++q)
            for (int p = 0; p < m_dim; ++p)
                CHECK(max_abs_diff(wigner_operator(PhasePoint(dim, q, p)),
                                   wigner_operator_fourier(PhasePoint(dim, q, p))) < 1e-13);
    }

    // covariance W(q,p) = T(q,p) W(0,0) T(q,p)^dagger for odd M
    for (int m_dim : {3, 5, 7}) {
        const SpaceDim dim(m_dim);
        const OperatorMatrix w0 = wigner_operator(PhasePoint(dim, 0, 0));
        for (int q = 0; q < m_dim; ++q)
            for (int p = 0; p < m_dim; ++p) {
                const OperatorMatrix t = displacement(dim, q, p);
                CHECK(max_abs_diff(wigner_operator(PhasePoint(dim, q, p)),
                                   matmul(matmul(t, w0), dagger(t))) < 1e-12);
            }
    }

    // inversion: W(0,0)|m> = |-m mod M>
    const SpaceDim dim(7);
    const OperatorMatrix w0 = wigner_operator(PhasePoint(dim, 0, 0));
    for (int m = 0; m < 7; ++m) {
        const StateVector out = apply(w0, basis_state(dim, m));
        CHECK(out[(7 - m) % 7] == cplx{1, 0});
    }

    // sum over all phase points is M * identity (odd M)
    OperatorMatrix sum{SpaceDim(5)};
    for (int q = 0; q < 5; ++q)
        for (int p = 0; p < 5; ++p) {
            const OperatorMatrix w = wigner_operator(PhasePoint(SpaceDim(5), q, p));
            for (size_t i = 0; i < sum.a.size(); ++i)
                sum.a[i] += w.a[i];
        }
    OperatorMatrix want = identity_op(SpaceDim(5));
    for (cplx& x : want.a)
        x *= 5.0;
    CHECK(max_abs_diff(sum, want) < 1e-12);
}

TEST_CASE("phase-point orthogonality") {
    CHECK(phase_point_orthogonality(SpaceDim(3)) < 1e-11);
    CHECK(phase_point_orthogonality(SpaceDim(5)) < 1e-11);
    CHECK_THROWS_AS(phase_point_orthogonality(SpaceDim(4)), std::domain_error);

    // spot traces
    const SpaceDim dim(5);
    const OperatorMatrix w00 = wigner_operator(PhasePoint(dim, 0, 0));
    CHECK(std::abs(trace(matmul(w00, w00)) - cplx{5, 0}) < 1e-13);
    const OperatorMatrix w12 = wigner_operator(PhasePoint(dim, 1, 2));
    CHECK(std::abs(trace(matmul(w00, w12))) < 1e-13);
}

TEST_CASE("wigner function of basic states") {
    {
        // maximally mixed state: flat grid at 1/M
        const SpaceDim dim(5);
        OperatorMatrix rho = identity_op(dim);
        for (cplx& x : rho.a)
            x /= 5.0;
        const WignerGrid w = wigner_function(rho);
        for (double v : w.v)
            CHECK(rel_diff(v, 0.2) < 1e-13);
    }
    {
        // self-symbol is a delta: A = W(q0,p0) gives M at (q0,p0), 0 elsewhere
        const SpaceDim dim(5);
        const WignerGrid w = wigner_function(wigner_operator(PhasePoint(dim, 2, 3)));
        for (int q = 0; q < 5; ++q)
            for (int p = 0; p < 5; ++p)
                CHECK(std::abs(w.at(q, p) - ((q == 2 && p == 3) ? 5.0 : 0.0)) < 1e-12);
    }
    {
        // position eigenstate: support only on the column q = m0
        const SpaceDim dim(5);
        const OperatorMatrix rho = outer(basis_state(dim, 3), basis_state(dim, 3));
        const WignerGrid w = wigner_function(rho);
        for (int q = 0; q < 5; ++q)
            for (int p = 0; p < 5; ++p)
                CHECK(std::abs(w.at(q, p) - ((q == 3) ? 1.0 : 0.0)) < 1e-13);
    }
}

TEST_CASE("normalization and purity sums") {
    std::mt19937_64 rng(99);
    for (int m_dim : {3, 5, 7}) {
        const SpaceDim dim(m_dim);
        for (int trial = 0; trial < 10; ++trial) {
            const OperatorMatrix rho = oracle::random_density(dim, rng);
            const WignerGrid w = wigner_function(rho);
            double total = 0.0, total_sq = 0.0;
            for (double v : w.v) {
                total += v;
                total_sq += v * v;
            }
            CHECK(rel_diff(total / m_dim, 1.0) < 1e-11);
            const double purity = trace(matmul(rho, rho)).real();
            CHECK(rel_diff(total_sq / m_dim, purity) < 1e-10);
        }
        // pure state: purity sum is exactly 1
        const StateVector psi = normalized(oracle::random_state(dim, rng));
        const WignerGrid w = wigner_function(outer(psi, psi));
        double total_sq = 0.0, total = 0.0;
        for (double v : w.v) {
            total += v;
            total_sq += v * v;
        }
        CHECK(rel_diff(total / m_dim, 1.0) < 1e-11);
        CHECK(rel_diff(total_sq / m_dim, 1.0) < 1e-11);
    }
}

TEST_CASE("wigner symbol of non-Hermitian operators stays complex") {
    const SpaceDim dim(5);
    OperatorMatrix a(dim);
    a.at(0, 1) = cplx{1.0, 0.0};  // not Hermitian
    CHECK_THROWS_AS(wigner_function(a), std::invalid_argument);
    const std::vector<cplx> grid = wigner_symbol(a);
    double imag_mag = 0.0;
    for (const cplx& v : grid)
        imag_mag = std::max(imag_mag, std::abs(v.imag()));
    CHECK(imag_mag > 0.1);
}

TEST_CASE("overlap rule") {
    std::mt19937_64 rng(123);
    const SpaceDim dim(7);
    for (int trial = 0; trial < 50; ++trial) {
        const OperatorMatrix a = oracle::random_hermitian(dim, rng);
        const OperatorMatrix b = oracle::random_hermitian(dim, rng);
        const double lhs = overlap(wigner_function(a), wigner_function(b));
        const double rhs = trace(matmul(a, b)).real();
        CHECK(rel_diff(lhs, rhs) < 1e-10);
    }
    // purity of a pure state through the overlap rule
    const StateVector psi = normalized(oracle::random_state(dim, rng));
    const WignerGrid w = wigner_function(outer(psi, psi));
    CHECK(rel_diff(overlap(w, w), 1.0) < 1e-11);

    CHECK_THROWS_AS(overlap(WignerGrid{SpaceDim(4)}, WignerGrid{SpaceDim(4)}), std::domain_error);
}

TEST_CASE("exchange operator swaps tensor factors") {
    CHECK(exchange_check(SpaceDim(3)) < 1e-11);
    CHECK(exchange_check(SpaceDim(5)) < 1e-11);
    CHECK_THROWS_AS(exchange_check(SpaceDim(4)), std::domain_error);
    CHECK_THROWS_AS(exchange_check(SpaceDim(33)), std::domain_error);
}

TEST_CASE("reconstruction roundtrip") {
    std::mt19937_64 rng(321);
    {
        const SpaceDim dim(5);
        const OperatorMatrix rho = outer(basis_state(dim, 0), basis_state(dim, 0));
        CHECK(max_abs_diff(reconstruct(wigner_function(rho)), rho) < 1e-12);
    }
    {
        const SpaceDim dim(5);
        OperatorMatrix rho = identity_op(dim);
        for (cplx& x : rho.a)
            x /= 5.0;
        CHECK(max_abs_diff(reconstruct(wigner_function(rho)), rho) < 1e-12);
    }
    for (int m_dim : {5, 7}) {
        const SpaceDim dim(m_dim);
        for (int trial = 0; trial < 20; ++trial) {
            const OperatorMatrix rho = oracle::random_density(dim, rng);
            CHECK(max_abs_diff(reconstruct(wigner_function(rho)), rho) < 1e-11);
        }
    }
    CHECK_THROWS_AS(reconstruct(WignerGrid{SpaceDim(4)}), std::domain_error);
}

TEST_CASE("spectrum of the inversion operator") {
    CHECK(wigner_spectrum(SpaceDim(5)) == std::vector<double>{-1, -1, 1, 1, 1});
    CHECK(wigner_spectrum(SpaceDim(3)) == std::vector<double>{-1, 1, 1});
    CHECK(wigner_spectrum(SpaceDim(4)) == std::vector<double>{-1, 1, 1, 1});

    // eigensolver oracle on the dense matrix
    for (int m_dim : {3, 4, 5, 7, 8}) {
        const OperatorMatrix w0 = wigner_operator(PhasePoint(SpaceDim(m_dim), 0, 0));
        const std::vector<double> ev = detail::hermitian_eigenvalues(w0);
        const std::vector<double> want = wigner_spectrum(SpaceDim(m_dim));
        REQUIRE(ev.size() == want.size());
        for (size_t i = 0; i < ev.size(); ++i)
            CHECK(ev[i] == Catch::Approx(want[i]).margin(1e-10));
    }
}
