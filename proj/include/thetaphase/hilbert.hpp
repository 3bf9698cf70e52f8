#pragma once

// M-dimensional state space of a periodic sampled signal: basis states,
// inner products, and the unitary discrete Fourier transform between the
// position and momentum representations, with kernel
// <p|m> = (1/sqrt M) exp(-i 2 pi p m / M).

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "thetaphase/common.hpp"

namespace thetaphase {

enum class Rep { position, momentum };

struct StateVector {
    StateVector(SpaceDim d, Rep representation)
        : dim(d), rep(representation), amp(static_cast<size_t>(d.m()), cplx{0.0, 0.0}) {}

    StateVector(SpaceDim d, Rep representation, std::vector<cplx> amplitudes)
        : dim(d), rep(representation), amp(std::move(amplitudes)) {
        if (amp.size() != static_cast<size_t>(dim.m()))
            throw std::invalid_argument("StateVector: amplitude count must equal M");
    }

    cplx& operator[](int i) { return amp[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return amp[static_cast<size_t>(i)]; }

    SpaceDim dim;
    Rep rep;
    std::vector<cplx> amp;
    bool unit_norm = false;  // set only by normalized(); asserts sum |amp|^2 = 1
};

struct OperatorMatrix {
    explicit OperatorMatrix(SpaceDim d)
        : dim(d), a(static_cast<size_t>(d.m()) * static_cast<size_t>(d.m()), cplx{0.0, 0.0}) {}

    cplx& at(int row, int col) { return a[static_cast<size_t>(row) * dim.m() + col]; }
    const cplx& at(int row, int col) const { return a[static_cast<size_t>(row) * dim.m() + col]; }

    SpaceDim dim;
    std::vector<cplx> a;
    bool hermitian = false;
};

inline double norm_sq(const StateVector& v) {
    double s = 0.0;
    for (const cplx& x : v.amp)
        s += std::norm(x);
    return s;
}

inline StateVector normalized(const StateVector& v) {
    const double n = std::sqrt(norm_sq(v));
    if (!(n > 0.0))
        throw std::domain_error("normalized: zero state");
    StateVector out = v;
    for (cplx& x : out.amp)
        x /= n;
    out.unit_norm = true;
    return out;
}

inline StateVector basis_state(SpaceDim dim, int m0) {
    if (m0 < 0 || m0 >= dim.m())
        throw std::out_of_range("basis_state: index out of range");
    StateVector v(dim, Rep::position);
    v[m0] = cplx{1.0, 0.0};
    v.unit_norm = true;
    return v;
}

namespace detail {

inline StateVector fourier_apply(const StateVector& v, double sign, Rep out_rep) {
    const int m_dim = v.dim.m();
    const double scale = 1.0 / std::sqrt(static_cast<double>(m_dim));
    std::vector<cplx> roots(static_cast<size_t>(m_dim));
    for (int j = 0; j < m_dim; ++j)
        roots[static_cast<size_t>(j)] = std::polar(1.0, sign * 2.0 * kPi * j / m_dim);
    StateVector out(v.dim, out_rep);
    for (int p = 0; p < m_dim; ++p) {
        cplx s{0.0, 0.0};
        for (int m = 0; m < m_dim; ++m)
            s += roots[static_cast<size_t>(mod_m(static_cast<long long>(p) * m, m_dim))] * v[m];
        out[p] = scale * s;
    }
    out.unit_norm = v.unit_norm;
    return out;
}

} // namespace detail

// Position -> momentum: f(p) = (1/sqrt M) sum_m exp(-i 2 pi p m / M) f(m).
inline StateVector dft(const StateVector& v) {
    if (v.rep != Rep::position)
        throw std::invalid_argument("dft: expected a position-representation state");
    return detail::fourier_apply(v, -1.0, Rep::momentum);
}

inline StateVector idft(const StateVector& v) {
    if (v.rep != Rep::momentum)
        throw std::invalid_argument("idft: expected a momentum-representation state");
    return detail::fourier_apply(v, +1.0, Rep::position);
}

inline cplx inner(const StateVector& a, const StateVector& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("inner: dimension mismatch");
    if (a.rep != b.rep)
        throw std::invalid_argument("inner: representation mismatch");
    cplx s{0.0, 0.0};
    for (int m = 0; m < a.dim.m(); ++m)
        s += std::conj(a[m]) * b[m];
    return s;
}

// sum_{m=0}^{M-1} exp(i 2 pi m (n-k)/M), rounded; equals M when n = k (mod M)
// and 0 otherwise.
inline long long discrete_orthogonality_check(SpaceDim dim, long long n, long long k) {
    const int m_dim = dim.m();
    cplx s{0.0, 0.0};
    for (int m = 0; m < m_dim; ++m)
        s += std::polar(1.0, 2.0 * kPi * mod_m(static_cast<long long>(m) * (n - k), m_dim) / m_dim);
    const double rounded = std::round(s.real());
    if (std::abs(s.real() - rounded) > 1e-10 * m_dim || std::abs(s.imag()) > 1e-10 * m_dim)
        throw std::runtime_error("discrete_orthogonality_check: residue exceeded tolerance");
    return static_cast<long long>(rounded);
}

// ---- dense operator plumbing ------------------------------------------------

inline OperatorMatrix identity_op(SpaceDim dim) {
    OperatorMatrix id(dim);
    for (int k = 0; k < dim.m(); ++k)
        id.at(k, k) = cplx{1.0, 0.0};
    id.hermitian = true;
    return id;
}

// |a><b|
inline OperatorMatrix outer(const StateVector& a, const StateVector& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("outer: dimension mismatch");
    OperatorMatrix op(a.dim);
    for (int r = 0; r < a.dim.m(); ++r)
        for (int c = 0; c < a.dim.m(); ++c)
            op.at(r, c) = a[r] * std::conj(b[c]);
    return op;
}

inline OperatorMatrix matmul(const OperatorMatrix& x, const OperatorMatrix& y) {
    if (x.dim != y.dim)
        throw std::invalid_argument("matmul: dimension mismatch");
    const int m_dim = x.dim.m();
    OperatorMatrix out(x.dim);
    for (int r = 0; r < m_dim; ++r)
        for (int k = 0; k < m_dim; ++k) {
            const cplx xv = x.at(r, k);
            if (xv == cplx{0.0, 0.0})
                continue;
            for (int c = 0; c < m_dim; ++c)
                out.at(r, c) += xv * y.at(k, c);
        }
    return out;
}

inline OperatorMatrix dagger(const OperatorMatrix& x) {
    OperatorMatrix out(x.dim);
    for (int r = 0; r < x.dim.m(); ++r)
        for (int c = 0; c < x.dim.m(); ++c)
            out.at(r, c) = std::conj(x.at(c, r));
    out.hermitian = x.hermitian;
    return out;
}

inline StateVector apply(const OperatorMatrix& x, const StateVector& v) {
    if (x.dim != v.dim)
        throw std::invalid_argument("apply: dimension mismatch");
    StateVector out(v.dim, v.rep);
    for (int r = 0; r < x.dim.m(); ++r) {
        cplx s{0.0, 0.0};
        for (int c = 0; c < x.dim.m(); ++c)
            s += x.at(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

inline cplx trace(const OperatorMatrix& x) {
    cplx s{0.0, 0.0};
    for (int k = 0; k < x.dim.m(); ++k)
        s += x.at(k, k);
    return s;
}

inline double max_abs_diff(const OperatorMatrix& x, const OperatorMatrix& y) {
    if (x.dim != y.dim)
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double d = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i)
        d = std::max(d, std::abs(x.a[i] - y.a[i]));
    return d;
}

inline double max_nonhermiticity(const OperatorMatrix& x) {
    double d = 0.0;
    for (int r = 0; r < x.dim.m(); ++r)
        for (int c = r; c < x.dim.m(); ++c)
            d = std::max(d, std::abs(x.at(r, c) - std::conj(x.at(c, r))));
    return d;
}

namespace detail {

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps. The design
// envelope is small M, where this is simpler than carrying a linear-algebra
// dependency. Results ascend.
inline std::vector<double> hermitian_eigenvalues(const OperatorMatrix& h) {
    const int n = h.dim.m();
    OperatorMatrix a = h;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += std::norm(a.at(p, q));
        if (off < 1e-30)
            break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                if (std::abs(apq) < 1e-300)
                    continue;
                // Phase rotation making the pivot real, then a real Jacobi rotation.
                const cplx phase = apq / std::abs(apq);
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = t * c * phase;
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a.at(k, p);
                    const cplx akq = a.at(k, q);
                    a.at(k, p) = c * akp - std::conj(s) * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a.at(p, k);
                    const cplx aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = std::conj(s) * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        ev[static_cast<size_t>(k)] = a.at(k, k).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace detail

} // namespace thetaphase
