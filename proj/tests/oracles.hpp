#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// fixed-window brute-force sums of the defining series, a plain-loop Fourier
// transform, and seeded random state/operator generators.

#include <complex>
#include <random>
#include <vector>

#include "thetaphase/hilbert.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Defining exponential series over a fixed symmetric window (no adaptive
// logic, no comb form). Theta_1 in the real-valued normalization.
inline cplx theta_series(int kind, cplx z, double mu, int window = 64) {
    const cplx i{0.0, 1.0};
    cplx s{0.0, 0.0};
    for (int n = -window; n <= window; ++n) {
        switch (kind) {
            case 3:
                s += std::exp(-i * 2.0 * static_cast<double>(n) * z - mu * static_cast<double>(n) * n);
                break;
            case 4:
                s += (n % 2 == 0 ? 1.0 : -1.0) *
                     std::exp(-i * 2.0 * static_cast<double>(n) * z - mu * static_cast<double>(n) * n);
                break;
            case 2: {
                const double u = n + 0.5;
                s += std::exp(-i * 2.0 * u * z - mu * u * u);
                break;
            }
            case 1: {
                const double u = n + 0.5;
                s += i * (n % 2 == 0 ? 1.0 : -1.0) * std::exp(-i * 2.0 * u * z - mu * u * u);
                break;
            }
        }
    }
    return s;
}

// Plain double-loop unitary transform, kernel (1/sqrt M) e^{-i 2 pi p m / M}.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& in) {
    const int m_dim = static_cast<int>(in.size());
    std::vector<cplx> out(in.size());
    for (int p = 0; p < m_dim; ++p) {
        cplx s{0.0, 0.0};
        for (int m = 0; m < m_dim; ++m)
            s += std::polar(1.0, -2.0 * thetaphase::kPi * p * m / m_dim) * in[static_cast<size_t>(m)];
        out[static_cast<size_t>(p)] = s / std::sqrt(static_cast<double>(m_dim));
    }
    return out;
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double rel_diff(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline thetaphase::StateVector random_state(thetaphase::SpaceDim dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    thetaphase::StateVector v(dim, thetaphase::Rep::position);
    for (cplx& x : v.amp)
        x = cplx{gauss(rng), gauss(rng)};
    return v;
}

inline thetaphase::OperatorMatrix random_hermitian(thetaphase::SpaceDim dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    thetaphase::OperatorMatrix a(dim);
    for (int r = 0; r < dim.m(); ++r)
        for (int c = r; c < dim.m(); ++c) {
            if (r == c) {
                a.at(r, c) = cplx{gauss(rng), 0.0};
            } else {
                a.at(r, c) = cplx{gauss(rng), gauss(rng)};
                a.at(c, r) = std::conj(a.at(r, c));
            }
        }
    a.hermitian = true;
    return a;
}

inline thetaphase::OperatorMatrix random_density(thetaphase::SpaceDim dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    thetaphase::OperatorMatrix a(dim);
    for (cplx& x : a.a)
        x = cplx{gauss(rng), gauss(rng)};
    thetaphase::OperatorMatrix rho = thetaphase::matmul(a, thetaphase::dagger(a));
    const double tr = thetaphase::trace(rho).real();
    for (cplx& x : rho.a)
        x /= tr;
    rho.hermitian = true;
    return rho;
}

} // namespace oracle
