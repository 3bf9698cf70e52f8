#pragma once

// Discrete Wigner operators and functions on the M x M phase-space grid.
//
// The phase-point operator at (q,p) has matrix elements
//
//   <k|W(q,p)|l> = exp(i 2 pi p (k-l) / M) delta_{2q = k+l (mod M)},
//
// the production path ("closed form"). For odd M it coincides with the
// two-dimensional Fourier transform of the displacement operators,
// W(q,p) = (1/M) sum_{m,n} r^{pm-qn} T(m,n), and with the covariant form
// T(q,p) W(0,0) T(q,p)^dagger. W(0,0) is the inversion |m> -> |-m>.
//
// The Wigner symbol of an operator A is W_A(q,p) = Tr(W(q,p) A); with the
// 1/M-normalized sums, (1/M) sum W_rho = Tr rho, (1/M) sum W_rho^2 = Tr rho^2,
// and (1/M) sum W_A W_B = Tr(A B). Reconstruction, the overlap rule and the
// exchange operator need odd M: for even M the map is not invertible.

#include <cstdint>
#include <random>
#include <vector>

#include "thetaphase/common.hpp"
#include "thetaphase/hilbert.hpp"
#include "thetaphase/hwgroup.hpp"
#include "thetaphase/parallel.hpp"

namespace thetaphase {

// Real M x M phase-space grid indexed (q,p): row = q (position-like), col = p.
struct WignerGrid {
    explicit WignerGrid(SpaceDim d)
        : dim(d), v(static_cast<size_t>(d.m()) * static_cast<size_t>(d.m()), 0.0) {}

    double& at(int q, int p) { return v[static_cast<size_t>(q) * dim.m() + p]; }
    const double& at(int q, int p) const { return v[static_cast<size_t>(q) * dim.m() + p]; }

    SpaceDim dim;
    std::vector<double> v;
};

inline OperatorMatrix wigner_operator(const PhasePoint& pt) {
    const int m_dim = pt.dim.m();
    OperatorMatrix w(pt.dim);
    for (int k = 0; k < m_dim; ++k) {
        const int l = mod_m(2LL * pt.q - k, m_dim);
        w.at(k, l) = std::polar(1.0, 2.0 * kPi * mod_m(static_cast<long long>(pt.p) * (k - l), m_dim) / m_dim);
    }
    w.hermitian = true;
    return w;
}

// Fourier-sum construction (1/M) sum_{m,n} r^{pm-qn} T(m,n). Cross-check path;
// equals wigner_operator for odd M (the even-M group phases live mod 2M and
// the two constructions differ there).
inline OperatorMatrix wigner_operator_fourier(const PhasePoint& pt) {
    const int m_dim = pt.dim.m();
    OperatorMatrix w(pt.dim);
    for (int m = 0; m < m_dim; ++m)
        for (int n = 0; n < m_dim; ++n) {
            const cplx phase =
                std::polar(1.0, 2.0 * kPi *
                                    mod_m(static_cast<long long>(pt.p) * m - static_cast<long long>(pt.q) * n,
                                          m_dim) /
                                    m_dim);
            const OperatorMatrix t = displacement(pt.dim, m, n);
            for (size_t i = 0; i < w.a.size(); ++i)
                w.a[i] += phase * t.a[i];
        }
    for (cplx& x : w.a)
        x /= static_cast<double>(m_dim);
    return w;
}

// Max deviation of Tr(W(q,p) W(q1,p1)) from M delta delta over all pairs.
inline double phase_point_orthogonality(SpaceDim dim) {
    require_odd(dim, "phase_point_orthogonality");
    const int m_dim = dim.m();
    std::vector<OperatorMatrix> ops;
    ops.reserve(static_cast<size_t>(m_dim) * m_dim);
    for (int q = 0; q < m_dim; ++q)
        for (int p = 0; p < m_dim; ++p)
            ops.push_back(wigner_operator(PhasePoint(dim, q, p)));

    double worst = 0.0;
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = 0; j < ops.size(); ++j) {
            const cplx tr = trace(matmul(ops[i], ops[j]));
            const double expected = (i == j) ? static_cast<double>(m_dim) : 0.0;
            worst = std::max(worst, std::abs(tr - cplx{expected, 0.0}));
        }
    return worst;
}

// Wigner symbol of an arbitrary operator: complex grid of traces, row-major (q,p).
inline std::vector<cplx> wigner_symbol(const OperatorMatrix& op) {
    const int m_dim = op.dim.m();
    std::vector<cplx> grid(static_cast<size_t>(m_dim) * m_dim);
    parallel_for(static_cast<long>(grid.size()), [&](long cell) {
        const int q = static_cast<int>(cell) / m_dim;
        const int p = static_cast<int>(cell) % m_dim;
        cplx s{0.0, 0.0};
        for (int k = 0; k < m_dim; ++k) {
            const int l = mod_m(2LL * q - k, m_dim);
            const cplx w = std::polar(1.0, 2.0 * kPi * mod_m(static_cast<long long>(p) * (k - l), m_dim) / m_dim);
            s += w * op.at(l, k);
        }
        grid[static_cast<size_t>(cell)] = s;
    });
    return grid;
}

// Wigner function of a Hermitian operator: real grid W_A(q,p) = Tr(W(q,p) A).
inline WignerGrid wigner_function(const OperatorMatrix& op) {
    if (max_nonhermiticity(op) > 1e-10)
        throw std::invalid_argument("wigner_function: operator is not Hermitian; use wigner_symbol");
    const std::vector<cplx> grid = wigner_symbol(op);
    WignerGrid out(op.dim);
    for (size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i].imag()) > 1e-12)
            throw std::runtime_error("wigner_function: imaginary residue exceeded tolerance");
        out.v[i] = grid[i].real();
    }
    return out;
}

// (1/M) sum_{q,p} W_A W_B = Tr(A B).
inline double overlap(const WignerGrid& a, const WignerGrid& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("overlap: dimension mismatch");
    require_odd(a.dim, "overlap");
    double s = 0.0;
    for (size_t i = 0; i < a.v.size(); ++i)
        s += a.v[i] * b.v[i];
    return s / a.dim.m();
}

// Builds the exchange operator sigma = (1/M) sum_{q,p} W(q,p) (x) W(q,p) and
// verifies sigma(|f> (x) |g>) = |g> (x) |f> on seeded random pairs; returns the
// max deviation. Memory is M^4 entries, so M is capped.
inline double exchange_check(SpaceDim dim, int pairs = 20, std::uint64_t seed = 1234) {
    require_odd(dim, "exchange_check");
    const int m_dim = dim.m();
    if (m_dim > 31)
        throw std::domain_error("exchange_check: M must be <= 31");
    const size_t mm = static_cast<size_t>(m_dim) * m_dim;
    std::vector<cplx> sigma(mm * mm, cplx{0.0, 0.0});
    for (int q = 0; q < m_dim; ++q)
        for (int p = 0; p < m_dim; ++p) {
            const OperatorMatrix w = wigner_operator(PhasePoint(dim, q, p));
            // w has one entry per row; accumulate the sparse tensor square
            for (int k1 = 0; k1 < m_dim; ++k1) {
                const int l1 = mod_m(2LL * q - k1, m_dim);
                const cplx w1 = w.at(k1, l1);
                for (int k2 = 0; k2 < m_dim; ++k2) {
                    const int l2 = mod_m(2LL * q - k2, m_dim);
                    const size_t row = static_cast<size_t>(k1) * m_dim + k2;
                    const size_t col = static_cast<size_t>(l1) * m_dim + l2;
                    sigma[row * mm + col] += w1 * w.at(k2, l2);
                }
            }
        }
    for (cplx& x : sigma)
        x /= static_cast<double>(m_dim);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < pairs; ++trial) {
        std::vector<cplx> f(static_cast<size_t>(m_dim)), g(static_cast<size_t>(m_dim));
        for (cplx& x : f)
            x = cplx{gauss(rng), gauss(rng)};
        for (cplx& x : g)
            x = cplx{gauss(rng), gauss(rng)};
        std::vector<cplx> fg(mm), swapped(mm);
        for (int i = 0; i < m_dim; ++i)
            for (int j = 0; j < m_dim; ++j) {
                fg[static_cast<size_t>(i) * m_dim + j] = f[static_cast<size_t>(i)] * g[static_cast<size_t>(j)];
                swapped[static_cast<size_t>(i) * m_dim + j] = g[static_cast<size_t>(i)] * f[static_cast<size_t>(j)];
            }
        for (size_t r = 0; r < mm; ++r) {
            cplx s{0.0, 0.0};
            for (size_t c = 0; c < mm; ++c)
                s += sigma[r * mm + c] * fg[c];
            worst = std::max(worst, std::abs(s - swapped[r]));
        }
    }
    return worst;
}

namespace detail {

// Brute-force calibration of the reconstruction constant: expand a known
// density matrix over the phase-point operators and fit the scale. The
// result must be 1/M; anything else is a broken build.
inline double calibrate_reconstruction_constant(SpaceDim dim) {
    const int m_dim = dim.m();
    const OperatorMatrix rho0 = outer(basis_state(dim, 0), basis_state(dim, 0));
    const std::vector<cplx> w0 = wigner_symbol(rho0);
    cplx tr{0.0, 0.0};
    for (int q = 0; q < m_dim; ++q)
        for (int p = 0; p < m_dim; ++p) {
            // Tr W(q,p) = 1 for odd M, so Tr of the expansion is the plain grid sum
            tr += w0[static_cast<size_t>(q) * m_dim + p];
        }
    const double c = 1.0 / tr.real();  // Tr rho0 = 1
    if (std::abs(c * m_dim - 1.0) > 1e-9)
        throw std::logic_error("reconstruction constant calibration failed: expected 1/M");
    return c;
}

} // namespace detail

// Density-matrix reconstruction rho = c sum_{q,p} W(q,p) W_rho(q,p) with the
// calibrated constant c = 1/M. Odd M only.
inline OperatorMatrix reconstruct(const WignerGrid& grid) {
    require_odd(grid.dim, "reconstruct");
    const int m_dim = grid.dim.m();
    const double c = detail::calibrate_reconstruction_constant(grid.dim);
    OperatorMatrix rho(grid.dim);
    parallel_for(m_dim, [&](long k) {
        for (int l = 0; l < m_dim; ++l) {
            // only q = [ (k+l)/2 ] contributes at (k,l)
            const int q = half_mod(grid.dim, static_cast<long long>(k) + l);
            cplx s{0.0, 0.0};
            for (int p = 0; p < m_dim; ++p)
                s += std::polar(1.0, 2.0 * kPi * mod_m(static_cast<long long>(p) * (k - l), m_dim) / m_dim) *
                     grid.at(q, p);
            rho.at(static_cast<int>(k), l) = c * s;
        }
    });
    rho.hermitian = true;
    return rho;
}

// Spectrum of W(0,0), the inversion about the origin: eigenvalues are +1 and
// -1 with multiplicities fixed by the fixed points of m -> -m (one for odd M;
// m = 0 and m = M/2 for even M). Ascending order.
inline std::vector<double> wigner_spectrum(SpaceDim dim) {
    const int m_dim = dim.m();
    const int fixed = dim.odd() ? 1 : 2;
    const int cycles = (m_dim - fixed) / 2;
    std::vector<double> ev;
    ev.reserve(static_cast<size_t>(m_dim));
    for (int i = 0; i < cycles; ++i)
        ev.push_back(-1.0);
    for (int i = 0; i < cycles + fixed; ++i)
        ev.push_back(1.0);
    return ev;
}

} // namespace thetaphase
