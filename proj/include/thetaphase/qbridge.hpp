#pragma once

// The Q-function and its exact relation to the Wigner function (odd M,
// self-dual mu = mu' = pi/M).
//
// Q_rho(q,p) = <q,p,mu| rho |q,p,mu> is the diagonal coherent-state matrix
// element (raw normalization; divide by N for unit normalization). The
// coherent-state projector expands over displacements as
//
//   |q,p><q,p| = sum_{m,n} T(m,n) F(m,n) r^{pm-qn},
//
// with the chord-space weight
//
//   F(m,n) = sqrt(mu'/2pi) [ Theta_3(pi m/M | 2mu) Theta_3((pi/M)[n/2] | mu'/2)
//          + (-1)^m Theta_2(pi m/M | 2mu) Theta_4((pi/M)[n/2] | mu'/2) ],
//
// equal to the periodization of the signed lattice Gaussian
// f(m,n) = sqrt(pi/2mu) (-1)^{mn} exp(-mu' m^2/2 - mu n^2/2). Inverting the
// Wigner transform turns the expansion into a cyclic convolution
//
//   Q(q,p) = sum_{q',p'} K(q-q', p-p') W(q',p'),
//   K(a,b) = (1/M) sum_{m,n} F(m,n) r^{bm-an},
//
// i.e. K is (1/M) times the Wigner symbol of the vacuum projector. K is real
// and symmetric but not positive: it inherits the Wigner negativity at cells
// antipodal to the origin.

#include <cmath>
#include <span>
#include <vector>

#include "thetaphase/coherent.hpp"
#include "thetaphase/common.hpp"
#include "thetaphase/hilbert.hpp"
#include "thetaphase/hwgroup.hpp"
#include "thetaphase/parallel.hpp"
#include "thetaphase/theta.hpp"
#include "thetaphase/wigner.hpp"

namespace thetaphase {

enum class QNorm { raw, unit };

// Non-negative M x M grid indexed (q,p), row = q.
struct QGrid {
    QGrid(SpaceDim d, QNorm n)
        : dim(d), norm(n), v(static_cast<size_t>(d.m()) * static_cast<size_t>(d.m()), 0.0) {}

    double& at(int q, int p) { return v[static_cast<size_t>(q) * dim.m() + p]; }
    const double& at(int q, int p) const { return v[static_cast<size_t>(q) * dim.m() + p]; }

    SpaceDim dim;
    QNorm norm;
    std::vector<double> v;
};

struct BridgeKernel {
    explicit BridgeKernel(SpaceDim d)
        : dim(d),
          mu(kPi / d.m()),
          f_grid(static_cast<size_t>(d.m()) * static_cast<size_t>(d.m()), 0.0),
          k_grid(static_cast<size_t>(d.m()) * static_cast<size_t>(d.m()), 0.0) {}

    double f_at(int m, int n) const { return f_grid[static_cast<size_t>(m) * dim.m() + n]; }
    double k_at(int a, int b) const { return k_grid[static_cast<size_t>(a) * dim.m() + b]; }

    SpaceDim dim;
    double mu;  // = mu' = pi / M
    std::vector<double> f_grid;  // chord-space weight F(m,n)
    std::vector<double> k_grid;  // phase-space convolution kernel K(a,b)
};

namespace detail {

inline void require_density_like(const OperatorMatrix& rho, const char* what) {
    if (max_nonhermiticity(rho) > 1e-10)
        throw std::invalid_argument(std::string(what) + ": rho must be Hermitian");
    const std::vector<double> ev = hermitian_eigenvalues(rho);
    double scale = 1e-300;
    for (double e : ev)
        scale = std::max(scale, std::abs(e));
    if (ev.front() < -1e-10 * scale)
        throw std::invalid_argument(std::string(what) + ": rho must be positive semidefinite");
}

} // namespace detail

// Q_rho(q,p) = <q,p,mu| rho |q,p,mu> (raw), optionally divided by N (unit).
// With unit normalization the grid sums to M^2/N * ... i.e. sum Q_unit = Tr rho.
inline QGrid q_function(const OperatorMatrix& rho, const SqueezeParam& squeeze,
                        QNorm norm = QNorm::raw) {
    require_odd(squeeze.dim, "q_function");
    if (rho.dim != squeeze.dim)
        throw std::invalid_argument("q_function: dimension mismatch");
    detail::require_density_like(rho, "q_function");

    const int m_dim = squeeze.dim.m();
    const double cs_norm = vacuum_norm_closed(squeeze);
    const double scale = (norm == QNorm::unit) ? 1.0 / cs_norm : 1.0;
    const double floor = -1e-12 * std::max(1.0, cs_norm * scale);
    QGrid out(squeeze.dim, norm);
    parallel_for(m_dim, [&](long q) {
        for (int p = 0; p < m_dim; ++p) {
            const StateVector cs = coherent_state(CoherentLabel(squeeze, q, p));
            cplx s{0.0, 0.0};
            for (int r = 0; r < m_dim; ++r) {
                cplx row{0.0, 0.0};
                for (int c = 0; c < m_dim; ++c)
                    row += rho.at(r, c) * cs[c];
                s += std::conj(cs[r]) * row;
            }
            const double value = s.real() * scale;
            if (value < floor)
                throw std::runtime_error("q_function: negative Q value beyond tolerance");
            out.at(static_cast<int>(q), p) = value;
        }
    });
    return out;
}

// Signed lattice Gaussian f(m,n) over all of Z^2 (not reduced mod M).
inline double lattice_gaussian(SpaceDim dim, long long m, long long n) {
    const double mu = kPi / dim.m();
    const double sign = ((m % 2 != 0) && (n % 2 != 0)) ? -1.0 : 1.0;
    return std::sqrt(kPi / (2.0 * mu)) * sign *
           std::exp(-mu * (static_cast<double>(m) * m + static_cast<double>(n) * n) / 2.0);
}

inline BridgeKernel bridge_kernel(SpaceDim dim) {
    require_odd(dim, "bridge_kernel");
    const int m_dim = dim.m();
    BridgeKernel kern(dim);
    const double mu = kern.mu;

    for (int m = 0; m < m_dim; ++m) {
        const double t3m = theta_eval_real(3, kPi * m / m_dim, 2.0 * mu);
        const double t2m = theta_eval_real(2, kPi * m / m_dim, 2.0 * mu);
        const double sm = (m % 2 == 0) ? 1.0 : -1.0;
        for (int n = 0; n < m_dim; ++n) {
            const double zh = kPi * half_mod(dim, n) / m_dim;
            kern.f_grid[static_cast<size_t>(m) * m_dim + n] =
                std::sqrt(mu / (2.0 * kPi)) *
                (t3m * theta_eval_real(3, zh, mu / 2.0) + sm * t2m * theta_eval_real(4, zh, mu / 2.0));
        }
    }

    // K(a,b) = (1/M) sum_{m,n} F(m,n) r^{bm-an}; real by the evenness of F.
    parallel_for(m_dim, [&](long a) {
        for (int b = 0; b < m_dim; ++b) {
            cplx s{0.0, 0.0};
            for (int m = 0; m < m_dim; ++m)
                for (int n = 0; n < m_dim; ++n)
                    s += kern.f_at(m, n) *
                         std::polar(1.0, 2.0 * kPi *
                                             mod_m(static_cast<long long>(b) * m - a * n, m_dim) / m_dim);
            if (std::abs(s.imag()) > 1e-12 * std::max(1.0, std::abs(s.real())))
                throw std::runtime_error("bridge_kernel: K picked up an imaginary part");
            kern.k_grid[static_cast<size_t>(a) * m_dim + b] = s.real() / m_dim;
        }
    });
    return kern;
}

// Coherent-state projector rebuilt from the chord expansion:
// sum_{m,n} T(m,n) F(m,n) r^{pm-qn}. Equals |q,p><q,p| exactly.
inline OperatorMatrix q_kernel_operator(const BridgeKernel& kern, const PhasePoint& pt) {
    if (kern.dim != pt.dim)
        throw std::invalid_argument("q_kernel_operator: dimension mismatch");
    const int m_dim = kern.dim.m();
    OperatorMatrix out(kern.dim);
    for (int m = 0; m < m_dim; ++m)
        for (int n = 0; n < m_dim; ++n) {
            const cplx phase =
                std::polar(1.0, 2.0 * kPi *
                                    mod_m(static_cast<long long>(pt.p) * m - static_cast<long long>(pt.q) * n,
                                          m_dim) /
                                    m_dim);
            const cplx weight = kern.f_at(m, n) * phase;
            const GroupElement g = displacement_element(kern.dim, m, n);
            for (int l = 0; l < m_dim; ++l) {
                const long long e = static_cast<long long>(g.s) + 2LL * g.n * l;
                out.at(mod_m(l + g.m, m_dim), l) += weight * unit_phase(kern.dim, e);
            }
        }
    return out;
}

// Deviation of the periodized-lattice identity for one periodic test function:
// |sum_{period} phi F - sum_{Z^2} phi f| / sum_{period} |phi F|, lattice sum
// truncated at |m|,|n| <= 6M (neglected terms < exp(-18 pi M) of the peak).
inline double resummation_check(SpaceDim dim, std::span<const cplx> phi) {
    require_odd(dim, "resummation_check");
    const int m_dim = dim.m();
    if (phi.size() != static_cast<size_t>(m_dim) * m_dim)
        throw std::invalid_argument("resummation_check: phi must be an M x M grid");
    const BridgeKernel kern = bridge_kernel(dim);

    cplx periodic{0.0, 0.0};
    double scale = 0.0;
    for (int m = 0; m < m_dim; ++m)
        for (int n = 0; n < m_dim; ++n) {
            const cplx term = phi[static_cast<size_t>(m) * m_dim + n] * kern.f_at(m, n);
            periodic += term;
            scale += std::abs(term);
        }

    cplx lattice{0.0, 0.0};
    const long radius = 6L * m_dim;
    for (long m = -radius; m <= radius; ++m)
        for (long n = -radius; n <= radius; ++n)
            lattice += phi[static_cast<size_t>(mod_m(m, m_dim)) * m_dim + mod_m(n, m_dim)] *
                       lattice_gaussian(dim, m, n);

    return std::abs(periodic - lattice) / std::max(scale, 1e-300);
}

// The five single-variable periodization identities relating a lattice sum of
// a periodic phi against theta-weighted period sums; identity in 1..5:
//   1: sum phi(n) e^{-mu n^2}            = sqrt(mu'/pi) sum phi(m) Theta_3(pi m/M | mu')
//   2: sum (-1)^n phi(n) e^{-mu n^2}     = sqrt(mu'/pi) sum (-1)^m phi(m) Theta_2(pi m/M | mu')
//   3: sum phi(n) e^{-mu (n-M/2)^2}      = sqrt(mu'/pi) sum phi(m) Theta_4(pi m/M | mu')
//   4: sum phi(2n mod M) e^{-mu n^2}     = sqrt(mu'/pi) sum phi(m) Theta_3((pi/M)[m/2] | mu')
//   5: sum phi(2n mod M) e^{-mu(n-M/2)^2}= sqrt(mu'/pi) sum phi(m) Theta_4((pi/M)[m/2] | mu')
// Returns |lhs - rhs| / max(sum |terms|). Identities 2, 4, 5 need odd M.
inline double resummation_identity_check(SpaceDim dim, int identity, std::span<const cplx> phi,
                                         double mu) {
    if (identity < 1 || identity > 5)
        throw std::invalid_argument("resummation_identity_check: identity must be 1..5");
    if (identity != 1 && identity != 3)
        require_odd(dim, "resummation_identity_check");
    const int m_dim = dim.m();
    if (phi.size() != static_cast<size_t>(m_dim))
        throw std::invalid_argument("resummation_identity_check: phi must have M entries");
    if (!(mu > 0.0))
        throw std::domain_error("resummation_identity_check: mu must be positive");
    const double mup = kPi * kPi / (mu * m_dim * m_dim);

    const long radius = std::max(6L * m_dim, static_cast<long>(std::ceil(8.0 / std::sqrt(mu))));
    cplx lhs{0.0, 0.0};
    double scale = 0.0;
    for (long n = -radius; n <= radius; ++n) {
        double weight = 0.0;
        int index = 0;
        switch (identity) {
            case 1:
                weight = std::exp(-mu * static_cast<double>(n) * n);
                index = mod_m(n, m_dim);
                break;
            case 2:
                weight = ((n % 2 != 0) ? -1.0 : 1.0) * std::exp(-mu * static_cast<double>(n) * n);
                index = mod_m(n, m_dim);
                break;
            case 3: {
                const double d = static_cast<double>(n) - m_dim / 2.0;
                weight = std::exp(-mu * d * d);
                index = mod_m(n, m_dim);
                break;
            }
            case 4:
                weight = std::exp(-mu * static_cast<double>(n) * n);
                index = mod_m(2 * n, m_dim);
                break;
            case 5: {
                const double d = static_cast<double>(n) - m_dim / 2.0;
                weight = std::exp(-mu * d * d);
                index = mod_m(2 * n, m_dim);
                break;
            }
        }
        const cplx term = phi[static_cast<size_t>(index)] * weight;
        lhs += term;
        scale += std::abs(term);
    }

    cplx rhs{0.0, 0.0};
    for (int m = 0; m < m_dim; ++m) {
        double weight = 0.0;
        switch (identity) {
            case 1:
                weight = theta_eval_real(3, kPi * m / m_dim, mup);
                break;
            case 2:
                weight = ((m % 2 != 0) ? -1.0 : 1.0) * theta_eval_real(2, kPi * m / m_dim, mup);
                break;
            case 3:
                weight = theta_eval_real(4, kPi * m / m_dim, mup);
                break;
            case 4:
                weight = theta_eval_real(3, kPi * half_mod(dim, m) / m_dim, mup);
                break;
            case 5:
                weight = theta_eval_real(4, kPi * half_mod(dim, m) / m_dim, mup);
                break;
        }
        rhs += phi[static_cast<size_t>(m)] * weight;
    }
    rhs *= std::sqrt(mup / kPi);

    return std::abs(lhs - rhs) / std::max(scale, 1e-300);
}

// Q from W by cyclic convolution with K; exact, not an approximation.
inline QGrid q_from_w(const WignerGrid& w, const BridgeKernel& kern) {
    if (w.dim != kern.dim)
        throw std::invalid_argument("q_from_w: dimension mismatch");
    require_odd(w.dim, "q_from_w");
    const int m_dim = w.dim.m();
    QGrid out(w.dim, QNorm::raw);
    parallel_for(m_dim, [&](long q) {
        for (int p = 0; p < m_dim; ++p) {
            double s = 0.0;
            for (int q1 = 0; q1 < m_dim; ++q1)
                for (int p1 = 0; p1 < m_dim; ++p1)
                    s += kern.k_at(mod_m(q - q1, m_dim), mod_m(p - p1, m_dim)) * w.at(q1, p1);
            out.at(static_cast<int>(q), p) = s;
        }
    });
    return out;
}

namespace detail {

inline std::vector<cplx> dft2(const std::vector<double>& grid, int m_dim, double sign) {
    std::vector<cplx> out(grid.size());
    for (int a = 0; a < m_dim; ++a)
        for (int b = 0; b < m_dim; ++b) {
            cplx s{0.0, 0.0};
            for (int q = 0; q < m_dim; ++q)
                for (int p = 0; p < m_dim; ++p)
                    s += grid[static_cast<size_t>(q) * m_dim + p] *
                         std::polar(1.0, sign * 2.0 * kPi *
                                             mod_m(static_cast<long long>(a) * q + static_cast<long long>(b) * p,
                                                   m_dim) /
                                             m_dim);
            out[static_cast<size_t>(a) * m_dim + b] = s;
        }
    return out;
}

} // namespace detail

// Spectral route for the same convolution (2D transform, pointwise product,
// inverse transform); agrees with q_from_w to 1e-11 and exists as a cross-check.
inline QGrid q_from_w_spectral(const WignerGrid& w, const BridgeKernel& kern) {
    if (w.dim != kern.dim)
        throw std::invalid_argument("q_from_w_spectral: dimension mismatch");
    require_odd(w.dim, "q_from_w_spectral");
    const int m_dim = w.dim.m();
    const std::vector<cplx> wf = detail::dft2(w.v, m_dim, -1.0);
    const std::vector<cplx> kf = detail::dft2(kern.k_grid, m_dim, -1.0);
    QGrid out(w.dim, QNorm::raw);
    std::vector<cplx> prod(wf.size());
    for (size_t i = 0; i < wf.size(); ++i)
        prod[i] = wf[i] * kf[i];
    for (int q = 0; q < m_dim; ++q)
        for (int p = 0; p < m_dim; ++p) {
            cplx s{0.0, 0.0};
            for (int a = 0; a < m_dim; ++a)
                for (int b = 0; b < m_dim; ++b)
                    s += prod[static_cast<size_t>(a) * m_dim + b] *
                         std::polar(1.0, 2.0 * kPi *
                                             mod_m(static_cast<long long>(a) * q + static_cast<long long>(b) * p,
                                                   m_dim) /
                                             m_dim);
            out.at(q, p) = s.real() / (m_dim * m_dim);
        }
    return out;
}

} // namespace thetaphase
