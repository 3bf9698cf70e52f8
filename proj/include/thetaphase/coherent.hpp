#pragma once

// Discrete squeezed coherent states built from the theta vacuum.
//
// The vacuum is the periodic Gaussian Theta(m) = Theta_3(pi m / M | mu); its
// dual decay parameter is mu' = pi^2/(mu M^2), and mu = pi/M is the self-dual
// (unsqueezed) point. Coherent states are |m0,n0,mu> = T(m0,n0)|Theta_mu>.
// States are stored unnormalized: every |m0,n0,mu> has squared norm
//
//   N = M [theta_3(2mu) theta_3(2mu M^2) + theta_2(2mu) theta_2(2mu M^2)]   (odd M)
//   N = M  theta_3(2mu) theta_3(mu M^2 / 2)                                 (even M)
//
// equivalently sqrt(2 pi/mu)[theta_3(2mu) theta_3(mu'/2) + theta_2(2mu) theta_4(mu'/2)]/2
// for odd M and sqrt(2 pi/mu) theta_3(2mu) theta_3(2mu') for even M.
// The family is complete: (1/N) sum_{m0,n0} |m0,n0><m0,n0| = 1 for any mu.

#include <cmath>
#include <vector>

#include "thetaphase/common.hpp"
#include "thetaphase/hilbert.hpp"
#include "thetaphase/hwgroup.hpp"
#include "thetaphase/parallel.hpp"
#include "thetaphase/theta.hpp"

namespace thetaphase {

struct SqueezeParam {
    SqueezeParam(SpaceDim d, double mu_) : dim(d), mu(mu_) {
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw std::domain_error("SqueezeParam: mu must be positive");
    }
    double mu_prime() const { return kPi * kPi / (mu * dim.m() * dim.m()); }
    // true at the unsqueezed coherent-state point mu = pi/M
    bool is_vacuum_cs() const { return std::abs(mu - kPi / dim.m()) <= 1e-14; }

    SpaceDim dim;
    double mu;
};

struct CoherentLabel {
    CoherentLabel(SqueezeParam s, long long m0_, long long n0_)
        : squeeze(s), m0(mod_m(m0_, s.dim.m())), n0(mod_m(n0_, s.dim.m())) {}
    SqueezeParam squeeze;
    int m0;
    int n0;
};

// Vacuum amplitudes Theta(m) = Theta_3(pi m / M | mu); real, strictly positive,
// even in m, unnormalized (squared norm N).
inline StateVector vacuum(const SqueezeParam& squeeze) {
    const int m_dim = squeeze.dim.m();
    StateVector v(squeeze.dim, Rep::position);
    for (int m = 0; m < m_dim; ++m)
        v[m] = cplx{theta_eval_real(3, kPi * m / m_dim, squeeze.mu), 0.0};
    return v;
}

// Squared norm N in closed form. Both equivalent theta-product forms are
// evaluated and must agree to 1e-11 relative; the lattice form is returned.
inline double vacuum_norm_closed(const SqueezeParam& squeeze) {
    const double m_dim = squeeze.dim.m();
    const double mu = squeeze.mu;
    const double mup = squeeze.mu_prime();
    double lattice = 0.0;
    double dual = 0.0;
    if (squeeze.dim.odd()) {
        lattice = m_dim * (theta_null(3, 2.0 * mu) * theta_null(3, 2.0 * mu * m_dim * m_dim) +
                           theta_null(2, 2.0 * mu) * theta_null(2, 2.0 * mu * m_dim * m_dim));
        dual = std::sqrt(2.0 * kPi / mu) *
               (theta_null(3, 2.0 * mu) * theta_null(3, mup / 2.0) +
                theta_null(2, 2.0 * mu) * theta_null(4, mup / 2.0)) / 2.0;
    } else {
        lattice = m_dim * theta_null(3, 2.0 * mu) * theta_null(3, mu * m_dim * m_dim / 2.0);
        dual = std::sqrt(2.0 * kPi / mu) * theta_null(3, 2.0 * mu) * theta_null(3, 2.0 * mup);
    }
    if (std::abs(lattice - dual) > 1e-11 * std::abs(lattice))
        throw std::runtime_error("vacuum_norm_closed: the two closed forms disagree");
    return lattice;
}

// Large-M asymptotic N ~ M sqrt(pi / 2 mu); error O(exp(-mu M^2 / 2)).
inline double vacuum_norm_asymptotic(const SqueezeParam& squeeze) {
    return squeeze.dim.m() * std::sqrt(kPi / (2.0 * squeeze.mu));
}

// Position amplitudes of T(m0,n0)|Theta_mu>:
//   Theta_{m0 n0}(m) = r^{n0 (m - [m0/2])} Theta(m - m0),
// where [m0/2] is the half-mod bracket (making the phase exactly the operator
// path's). Odd M only.
inline StateVector coherent_state(const CoherentLabel& label) {
    require_odd(label.squeeze.dim, "coherent_state");
    const int m_dim = label.squeeze.dim.m();
    const StateVector vac = vacuum(label.squeeze);
    const int href = half_mod(label.squeeze.dim, label.m0);
    StateVector v(label.squeeze.dim, Rep::position);
    for (int m = 0; m < m_dim; ++m) {
        const int e = mod_m(static_cast<long long>(label.n0) * (m - href), m_dim);
        v[m] = std::polar(1.0, 2.0 * kPi * e / m_dim) * vac[mod_m(m - label.m0, m_dim)];
    }
    return v;
}

// Momentum amplitudes of the vacuum: sqrt(M) sum_k exp(-mu (p - kM)^2),
// equal to sqrt(pi/(mu M)) Theta_3(pi p / M | mu') and to dft(vacuum).
inline StateVector vacuum_momentum(const SqueezeParam& squeeze) {
    const int m_dim = squeeze.dim.m();
    const double scale = std::sqrt(kPi / (squeeze.mu * m_dim));
    StateVector v(squeeze.dim, Rep::momentum);
    for (int p = 0; p < m_dim; ++p)
        v[p] = cplx{scale * theta_eval_real(3, kPi * p / m_dim, squeeze.mu_prime()), 0.0};
    return v;
}

// <Theta_mu | m0, n0, mu> in closed form; real for every branch. Three cases:
// even M, odd M with even n0, odd M with odd n0. Each is a two-theta product
// times the overall sign (-1)^{m0 n0} fixed by the bracket-phase displacement.
inline cplx cs_overlap_closed(const CoherentLabel& label) {
    const int m_dim = label.squeeze.dim.m();
    const double mu = label.squeeze.mu;
    const double mup = label.squeeze.mu_prime();
    const int m0 = label.m0;
    const int n0 = label.n0;
    const double sign = (m0 % 2 == 1 && n0 % 2 == 1) ? -1.0 : 1.0;

    double value = 0.0;
    if (!label.squeeze.dim.odd()) {
        const int alpha = (n0 % 2 == 0) ? 3 : 2;
        const int beta = (m0 % 2 == 0) ? 3 : 2;
        value = m_dim * std::sqrt(2.0 * mup / kPi) *
                theta_eval_real(alpha, kPi * m0 / m_dim, 2.0 * mu) *
                theta_eval_real(beta, kPi * n0 / m_dim, 2.0 * mup);
    } else if (n0 % 2 == 0) {
        value = m_dim * std::sqrt(mup / (2.0 * kPi)) *
                (theta_eval_real(3, kPi * m0 / m_dim, 2.0 * mu) *
                     theta_eval_real(3, kPi * n0 / (2.0 * m_dim), mup / 2.0) +
                 ((m0 % 2 == 0) ? 1.0 : -1.0) *
                     theta_eval_real(2, kPi * m0 / m_dim, 2.0 * mu) *
                     theta_eval_real(4, kPi * n0 / (2.0 * m_dim), mup / 2.0));
    } else {
        value = m_dim * std::sqrt(mup / (2.0 * kPi)) *
                (((m0 % 2 == 0) ? 1.0 : -1.0) *
                     theta_eval_real(3, kPi * m0 / m_dim, 2.0 * mu) *
                         theta_eval_real(4, kPi * n0 / (2.0 * m_dim), mup / 2.0) +
                 theta_eval_real(2, kPi * m0 / m_dim, 2.0 * mu) *
                     theta_eval_real(3, kPi * n0 / (2.0 * m_dim), mup / 2.0));
    }
    return cplx{sign * value, 0.0};
}

// Large-M prediction for |<Theta|m0,n0,mu>| / N, with labels reduced to their
// nearest images. Accurate to O(exp(-mu M^2 / 2)); never a substitute for the
// exact overlap.
inline double cs_overlap_asymptotic_ratio(const CoherentLabel& label) {
    const double m0 = mod_m_centered(label.m0, label.squeeze.dim.m());
    const double n0 = mod_m_centered(label.n0, label.squeeze.dim.m());
    return std::exp(-(label.squeeze.mu_prime() * m0 * m0 + label.squeeze.mu * n0 * n0) / 2.0);
}

// Max entrywise deviation of (1/N) sum_{m0,n0} |m0,n0><m0,n0| from the
// identity. Partial sums per m0 are merged in index order, so the result is
// independent of the thread count.
inline double completeness_check(const SqueezeParam& squeeze) {
    require_odd(squeeze.dim, "completeness_check");
    const int m_dim = squeeze.dim.m();
    const double norm = vacuum_norm_closed(squeeze);

    std::vector<OperatorMatrix> partial(static_cast<size_t>(m_dim), OperatorMatrix(squeeze.dim));
    parallel_for(m_dim, [&](long m0) {
        OperatorMatrix& acc = partial[static_cast<size_t>(m0)];
        for (int n0 = 0; n0 < m_dim; ++n0) {
            const StateVector cs = coherent_state(CoherentLabel(squeeze, m0, n0));
            for (int r = 0; r < m_dim; ++r)
                for (int c = 0; c < m_dim; ++c)
                    acc.at(r, c) += cs[r] * std::conj(cs[c]);
        }
    });

    OperatorMatrix total(squeeze.dim);
    for (const OperatorMatrix& p : partial)
        for (size_t i = 0; i < total.a.size(); ++i)
            total.a[i] += p.a[i];

    double worst = 0.0;
    for (int r = 0; r < m_dim; ++r)
        for (int c = 0; c < m_dim; ++c) {
            const cplx expected = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            worst = std::max(worst, std::abs(total.at(r, c) / norm - expected));
        }
    return worst;
}

} // namespace thetaphase
