#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "thetaphase/theta.hpp"

using namespace thetaphase;
using oracle::rel_diff;

TEST_CASE("theta nulls match brute-force series values") {
    // frozen from the fixed-window oracle
    CHECK(theta_null(3, 4.0) == Catch::Approx(1.0366315028478183).epsilon(1e-14));
    CHECK(theta_null(4, 2.0) == Catch::Approx(0.73000032832264548).epsilon(1e-14));
    CHECK(theta_null(2, 0.5) == Catch::Approx(2.5066282612190955).epsilon(1e-14));
    CHECK(theta_null(1, 0.5) == 0.0);
    CHECK(theta_null(1, 7.3) == 0.0);

    // sqrt(pi/mu) + O(e^{-pi^2/mu}) for small mu
    CHECK(theta_null(3, 0.01) == Catch::Approx(17.724538509055160).epsilon(1e-13));
    CHECK(theta_null(2, 0.01) == Catch::Approx(17.724538509055160).epsilon(1e-13));

    // against the oracle across both evaluation branches
    for (double mu : {0.05, 0.3, 0.9, 1.0, 1.5, 4.0, 20.0}) {
        for (int kind : {2, 3, 4}) {
            const cplx want = oracle::theta_series(kind, cplx{0.0, 0.0}, mu);
            CHECK(rel_diff(theta_null(kind, mu), want.real()) < 1e-13);
        }
    }
}

TEST_CASE("theta_eval matches the defining series at generic arguments") {
    CHECK(theta_eval_real(3, 0.3, 0.5) == Catch::Approx(2.0937121719720534).epsilon(1e-14));
    CHECK(theta_eval(ThetaArg{1, 0.0, 1.0}) == cplx{0.0, 0.0});

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> zdist(0.0, 2.0 * kPi);
    for (int kind = 1; kind <= 4; ++kind) {
        for (double mu : {0.4, 0.8, 1.0, 2.5, 9.0}) {
            for (int trial = 0; trial < 10; ++trial) {
                const double z = zdist(rng);
                const cplx got = theta_eval(ThetaArg{kind, z, mu});
                CHECK(got.imag() == 0.0);
                const cplx want = oracle::theta_series(kind, cplx{z, 0.0}, mu);
                CHECK(std::abs(got - want) < 1e-13 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("shift identities") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> zdist(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> ldist(std::log(0.05), std::log(20.0));
    for (int trial = 0; trial < 100; ++trial) {
        const double z = zdist(rng);
        const double mu = std::exp(ldist(rng));
        CHECK(rel_diff(theta_eval_real(4, z, mu), theta_eval_real(3, z + kPi / 2, mu)) < 1e-12);
        CHECK(rel_diff(theta_eval_real(1, z, mu), theta_eval_real(2, z - kPi / 2, mu)) < 1e-12);
    }
    // Theta_2(z|mu) = e^{iz - mu/4} Theta_3(z + i mu/2 | mu): complex-z path
    for (int trial = 0; trial < 50; ++trial) {
        const double z = zdist(rng);
        const double mu = std::exp(ldist(rng));
        const cplx lhs{theta_eval_real(2, z, mu), 0.0};
        const cplx rhs = std::exp(cplx{-mu / 4.0, z}) *
                         detail::theta_eval_c(3, cplx{z, mu / 2.0}, mu);
        CHECK(rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("periodicity and parity") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> zdist(0.0, 2.0 * kPi);
    for (double mu : {0.05, 0.5, 5.0}) {
        for (int trial = 0; trial < 100; ++trial) {
            const double z = zdist(rng);
            CHECK(rel_diff(theta_eval_real(3, z + kPi, mu), theta_eval_real(3, z, mu)) < 1e-12);
            CHECK(rel_diff(theta_eval_real(4, z + kPi, mu), theta_eval_real(4, z, mu)) < 1e-12);
            CHECK(rel_diff(theta_eval_real(1, z + kPi, mu), -theta_eval_real(1, z, mu)) < 1e-12);
            CHECK(rel_diff(theta_eval_real(2, z + kPi, mu), -theta_eval_real(2, z, mu)) < 1e-12);

            CHECK(rel_diff(theta_eval_real(2, -z, mu), theta_eval_real(2, z, mu)) < 1e-12);
            CHECK(rel_diff(theta_eval_real(3, -z, mu), theta_eval_real(3, z, mu)) < 1e-12);
            CHECK(rel_diff(theta_eval_real(4, -z, mu), theta_eval_real(4, z, mu)) < 1e-12);
            CHECK(rel_diff(theta_eval_real(1, -z, mu), -theta_eval_real(1, z, mu)) < 1e-12);
        }
    }
}

TEST_CASE("quasi-periodicity: Theta(z + i mu) picks up g = e^{-2iz + mu}") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> zdist(0.0, 2.0 * kPi);
    // kinds 1,2 are exponentially small against their own series terms for
    // large mu; double precision supports the check for mu <~ 30
    std::uniform_real_distribution<double> l12(std::log(0.05), std::log(30.0));
    std::uniform_real_distribution<double> l34(std::log(0.01), std::log(100.0));
    for (int trial = 0; trial < 100; ++trial) {
        const double z = zdist(rng);
        {
            const double mu = std::exp(l34(rng));
            const cplx g = std::exp(cplx{mu, -2.0 * z});
            CHECK(rel_diff(detail::theta_eval_c(3, cplx{z, mu}, mu),
                           g * detail::theta_eval_c(3, cplx{z, 0.0}, mu)) < 1e-12);
            CHECK(rel_diff(detail::theta_eval_c(4, cplx{z, mu}, mu),
                           -g * detail::theta_eval_c(4, cplx{z, 0.0}, mu)) < 1e-12);
        }
        {
            const double mu = std::exp(l12(rng));
            const cplx g = std::exp(cplx{mu, -2.0 * z});
            CHECK(rel_diff(detail::theta_eval_c(2, cplx{z, mu}, mu),
                           g * detail::theta_eval_c(2, cplx{z, 0.0}, mu)) < 1e-12);
            CHECK(rel_diff(detail::theta_eval_c(1, cplx{z, mu}, mu),
                           -g * detail::theta_eval_c(1, cplx{z, 0.0}, mu)) < 1e-12);
        }
    }
}

TEST_CASE("direct and comb branches agree where both are conditioned") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> zdist(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> ldist(std::log(0.3), std::log(30.0));
    for (int kind = 1; kind <= 4; ++kind) {
        for (int trial = 0; trial < 100; ++trial) {
            const double z = zdist(rng);
            const double mu = std::exp(ldist(rng));
            const cplx zc{z, 0.0};
            CHECK(rel_diff(detail::theta_direct(kind, zc, mu), detail::theta_comb(kind, zc, mu)) <
                  1e-12);
        }
    }
    // kind 3 nulls stay positive-summed on both sides across the full range
    for (double mu : {0.01, 0.05, 0.3, 1.0, 10.0, 100.0}) {
        CHECK(rel_diff(detail::theta_direct(3, cplx{0.0, 0.0}, mu),
                       detail::theta_comb(3, cplx{0.0, 0.0}, mu)) < 1e-12);
    }
}

TEST_CASE("poisson_dual representation evaluates to the same value") {
    // spot values from the comb forms
    {
        // theta_2 null duality: theta_2(mu) = sqrt(pi/mu) sum (-1)^k e^{-k^2 pi^2/mu}
        const double mu = 2.0;
        double comb = 0.0;
        for (int k = -40; k <= 40; ++k)
            comb += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(-k * k * kPi * kPi / mu);
        comb *= std::sqrt(kPi / mu);
        CHECK(rel_diff(theta_null(2, mu), comb) < 1e-13);
    }
    {
        // theta_4 null duality: theta_4(mu) = sqrt(pi/mu) sum e^{-(pi(k+1/2))^2/mu}
        const double mu = 1.0;
        double comb = 0.0;
        for (int k = -40; k <= 40; ++k)
            comb += std::exp(-kPi * kPi * (k + 0.5) * (k + 0.5) / mu);
        comb *= std::sqrt(kPi / mu);
        CHECK(rel_diff(theta_null(4, mu), comb) < 1e-13);
    }
    {
        // Theta_3 direct at (0.3, 0.5) equals the Gaussian comb
        double comb = 0.0;
        for (int k = -40; k <= 40; ++k)
            comb += std::exp(-(0.3 - kPi * k) * (0.3 - kPi * k) / 0.5);
        comb *= std::sqrt(kPi / 0.5);
        CHECK(rel_diff(theta_eval_real(3, 0.3, 0.5), comb) < 1e-13);
    }

    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> zdist(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> ldist(std::log(0.3), std::log(30.0));
    for (int kind = 1; kind <= 4; ++kind) {
        for (int trial = 0; trial < 50; ++trial) {
            const ThetaArg arg{kind, zdist(rng), std::exp(ldist(rng))};
            const PoissonDualForm dual = poisson_dual(arg);
            CHECK(rel_diff(theta_eval(arg), poisson_dual_eval(dual)) < 1e-12);
        }
    }
    // dual parameters themselves
    const PoissonDualForm d = poisson_dual(ThetaArg{2, 0.4, 2.0});
    CHECK(d.kind == 4);
    CHECK(d.mu == Catch::Approx(kPi * kPi / 2.0));
}

TEST_CASE("dual modulus bundle") {
    const DualModulus dm = make_dual_modulus(kPi / 7, 7);
    CHECK(rel_diff(dm.mu_prime, kPi * kPi / ((kPi / 7) * 49.0)) < 1e-14);
    CHECK(rel_diff(dm.mu_prime, kPi / 7) < 1e-14);  // self-dual point
    CHECK_THROWS_AS(make_dual_modulus(0.0, 7), std::domain_error);
    CHECK_THROWS_AS(make_dual_modulus(-1.0, 7), std::domain_error);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(theta_eval(ThetaArg{0, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(theta_eval(ThetaArg{5, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(theta_eval(ThetaArg{3, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(theta_eval(ThetaArg{3, 0.0, -2.0}), std::domain_error);
    CHECK_THROWS_AS(theta_null(2, -1.0), std::domain_error);
}
