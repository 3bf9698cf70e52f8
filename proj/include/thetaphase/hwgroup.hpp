#pragma once

// Discrete Heisenberg-Weyl group on the M-point lattice.
//
// Generators: the cyclic shift T_x|m> = |m+1> and the modulation
// T_p|m> = r^m|m> with r = exp(i 2 pi / M). They obey T_p T_x = r T_x T_p,
// so a group element is g(s,m,n) = e^{i pi s / M} T_x^m T_p^n with an exact
// integer phase exponent s mod 2M. The pi/M granularity (not 2 pi/M) is what
// makes the even-M displacement phase representable exactly.
//
// The displacement operator is T(m,n) = r^{[nm/2]} T_x^m T_p^n, where [x/2]
// is the half-mod bracket: the unique solution of 2y = x (mod M) for odd M.
// Both parities collapse to the single exact phase rule s = n m (M+1) mod 2M.
// Label algebra (multiplication, adjoint) is carried in integer exponents;
// floating point appears only in dense matrices.

#include <utility>
#include <vector>

#include "thetaphase/common.hpp"
#include "thetaphase/hilbert.hpp"

namespace thetaphase {

// g(s,m,n) = e^{i pi s / M} T_x^m T_p^n, s mod 2M, m,n mod M.
struct GroupElement {
    SpaceDim dim;
    int s;
    int m;
    int n;
};

struct PhasePoint {
    PhasePoint(SpaceDim d, long long q_, long long p_)
        : dim(d), q(mod_m(q_, d.m())), p(mod_m(p_, d.m())) {}
    SpaceDim dim;
    int q;
    int p;
};

// Half-mod bracket [x/2]: the unique y in 0..M-1 with 2y = x (mod M); odd M only.
inline int half_mod(SpaceDim dim, long long x) {
    require_odd(dim, "half_mod");
    const int m_dim = dim.m();
    const int c = mod_m(x, m_dim);
    return (c % 2 == 0) ? c / 2 : (c + m_dim) / 2;
}

// e^{i pi s / M}
inline cplx unit_phase(SpaceDim dim, long long s) {
    return std::polar(1.0, kPi * mod_m(s, 2 * dim.m()) / dim.m());
}

inline OperatorMatrix translation_x(SpaceDim dim) {
    OperatorMatrix t(dim);
    for (int l = 0; l < dim.m(); ++l)
        t.at(mod_m(l + 1, dim.m()), l) = cplx{1.0, 0.0};
    return t;
}

inline OperatorMatrix translation_p(SpaceDim dim) {
    OperatorMatrix t(dim);
    for (int l = 0; l < dim.m(); ++l)
        t.at(l, l) = std::polar(1.0, 2.0 * kPi * l / dim.m());
    return t;
}

// Displacement label with its exact phase exponent. Labels are canonicalized
// mod M first; for odd M the phase is r^{[nm/2]}, for even M it is
// (-1)^{mn} r^{nm/2}, and both equal e^{i pi n m (M+1) / M}.
inline GroupElement displacement_element(SpaceDim dim, long long m, long long n) {
    const int mc = mod_m(m, dim.m());
    const int nc = mod_m(n, dim.m());
    const long long two_m = 2LL * dim.m();
    const int s = mod_m((static_cast<long long>(nc) * mc % two_m) * (dim.m() + 1), 2 * dim.m());
    return GroupElement{dim, s, mc, nc};
}

// Dense matrix of g(s,m,n): <k|g|l> = e^{i pi s/M} r^{n l} delta_{k, l+m}.
inline OperatorMatrix group_matrix(const GroupElement& g) {
    const int m_dim = g.dim.m();
    OperatorMatrix t(g.dim);
    for (int l = 0; l < m_dim; ++l) {
        const long long e = static_cast<long long>(g.s) + 2LL * g.n * l;  // units of pi/M
        t.at(mod_m(l + g.m, m_dim), l) = unit_phase(g.dim, e);
    }
    return t;
}

inline OperatorMatrix displacement(SpaceDim dim, long long m, long long n) {
    return group_matrix(displacement_element(dim, m, n));
}

// Matrix product a * b in exact label arithmetic.
inline GroupElement group_multiply(const GroupElement& a, const GroupElement& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("group_multiply: dimension mismatch");
    const long long s = static_cast<long long>(a.s) + b.s + 2LL * a.n * b.m;
    return GroupElement{a.dim, mod_m(s, 2 * a.dim.m()), mod_m(a.m + b.m, a.dim.m()),
                        mod_m(a.n + b.n, a.dim.m())};
}

inline GroupElement group_inverse(const GroupElement& g) {
    // g^{-1} = e^{-i pi s/M} T_p^{-n} T_x^{-m} = e^{i pi (-s + 2nm)/M} T_x^{-m} T_p^{-n}
    const long long s = -static_cast<long long>(g.s) + 2LL * g.n * g.m;
    return GroupElement{g.dim, mod_m(s, 2 * g.dim.m()), mod_m(-g.m, g.dim.m()),
                        mod_m(-g.n, g.dim.m())};
}

struct ComposedLabel {
    int r_exp;  // power of r = e^{i 2 pi / M}
    int m;
    int n;
};

// T(second) T(first) = r^{[(m1 n2 - n1 m2)/2]} T(m1+m2, n1+n2); odd M.
// Computed through exact group-element arithmetic, then reduced to an r-power.
inline ComposedLabel compose_labels(SpaceDim dim, std::pair<long long, long long> first,
                                    std::pair<long long, long long> second) {
    require_odd(dim, "compose_labels");
    const GroupElement prod = group_multiply(displacement_element(dim, second.first, second.second),
                                             displacement_element(dim, first.first, first.second));
    const GroupElement sum = displacement_element(dim, first.first + second.first,
                                                  first.second + second.second);
    const int ds = mod_m(prod.s - sum.s, 2 * dim.m());
    if (ds % 2 != 0)
        throw std::logic_error("compose_labels: phase exponent not an r-power");
    return ComposedLabel{ds / 2, prod.m, prod.n};
}

// T(q,p) T(m,n) T(q,p)^dagger = r^{pm - qn} T(m,n); returns (pm - qn) mod M.
inline int adjoint_phase_exponent(const PhasePoint& g, long long m, long long n) {
    require_odd(g.dim, "adjoint_phase_exponent");
    return mod_m(static_cast<long long>(g.p) * m - static_cast<long long>(g.q) * n, g.dim.m());
}

// Max deviation of sum_{m,n} <a|T(m,n)|b> conj(<d|T(m,n)|c>) from M delta_ad delta_bc
// over all index quadruples.
inline double matrix_element_orthogonality(SpaceDim dim) {
    require_odd(dim, "matrix_element_orthogonality");
    const int m_dim = dim.m();
    std::vector<OperatorMatrix> t;
    t.reserve(static_cast<size_t>(m_dim) * m_dim);
    for (int m = 0; m < m_dim; ++m)
        for (int n = 0; n < m_dim; ++n)
            t.push_back(displacement(dim, m, n));

    double worst = 0.0;
    for (int a = 0; a < m_dim; ++a)
        for (int b = 0; b < m_dim; ++b)
            for (int d = 0; d < m_dim; ++d)
                for (int c = 0; c < m_dim; ++c) {
                    cplx s{0.0, 0.0};
                    for (const OperatorMatrix& op : t)
                        s += op.at(a, b) * std::conj(op.at(d, c));
                    const double expected = (a == d && b == c) ? static_cast<double>(m_dim) : 0.0;
                    worst = std::max(worst, std::abs(s - cplx{expected, 0.0}));
                }
    return worst;
}

} // namespace thetaphase
