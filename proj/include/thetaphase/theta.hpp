#pragma once

// Jacobi theta functions Theta_1..Theta_4 with a real decay parameter mu > 0:
//
//   Theta_3(z|mu) = sum_n exp(-i 2 n z - mu n^2)
//   Theta_4(z|mu) = sum_n (-1)^n exp(-i 2 n z - mu n^2)
//   Theta_2(z|mu) = sum_n exp(-i 2 (n+1/2) z - mu (n+1/2)^2)
//   Theta_1(z|mu) = 2 sum_{n>=0} (-1)^n exp(-mu (n+1/2)^2) sin((2n+1) z)
//
// Theta_1 uses the standard real-valued normalization, so all four functions
// are real for real z. Each function has an equivalent Poisson-transformed
// (Gaussian comb) form, e.g.
//
//   Theta_3(z|mu) = sqrt(pi/mu) sum_k exp(-(z - pi k)^2 / mu),
//
// which converges fast exactly when the defining series converges slowly.
// Evaluation switches to the comb form for mu < 1; at the crossover both
// series decay at least like exp(-n^2), so the worst case needs ~7 terms.

#include <cmath>
#include <cstdlib>
#include <string>

#include "thetaphase/common.hpp"

namespace thetaphase {

struct ThetaArg {
    int kind;   // 1..4
    double z;   // argument, radians
    double mu;  // decay parameter, > 0 (quasiperiod is i*mu)
};

// A mutually dual pair of decay parameters on an M-point lattice:
// mu_prime = pi^2 / (mu M^2).
struct DualModulus {
    double mu;
    double mu_prime;
    int m_dim;
};

inline DualModulus make_dual_modulus(double mu, int m_dim) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::domain_error("make_dual_modulus: mu must be positive");
    if (m_dim < 2)
        throw std::domain_error("make_dual_modulus: M must be >= 2");
    const double mp = kPi * kPi / (mu * static_cast<double>(m_dim) * static_cast<double>(m_dim));
    return DualModulus{mu, mp, m_dim};
}

namespace detail {

inline constexpr double kThetaTermCutoff = 1e-17;
inline constexpr long kThetaMaxWindow = 1000000;

inline void validate_theta(int kind, double mu) {
    if (kind < 1 || kind > 4)
        throw std::domain_error("theta: kind must be in 1..4, got " + std::to_string(kind));
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::domain_error("theta: mu must be a positive finite real");
}

[[noreturn]] inline void theta_no_convergence() {
    throw std::runtime_error("theta: series did not converge within the maximum window");
}

// Defining series, summed over symmetric windows that double until the last
// added term drops below kThetaTermCutoff relative to the running scale.
// Valid for complex z (the identity tests need strips of the complex plane).
inline cplx theta_direct(int kind, cplx z, double mu) {
    const bool half = (kind == 1 || kind == 2);  // summation index n + 1/2
    const bool alternating = (kind == 1 || kind == 4);

    cplx total = half ? cplx{0.0, 0.0} : cplx{1.0, 0.0};
    double scale = std::abs(total);
    long j = half ? 0 : 1;
    long window = 8;
    for (;;) {
        double last = 0.0;
        for (; j <= window; ++j) {
            const double u = half ? (static_cast<double>(j) + 0.5) : static_cast<double>(j);
            const double weight = 2.0 * std::exp(-mu * u * u);
            const double sign = (alternating && (j % 2 != 0)) ? -1.0 : 1.0;
            const cplx osc = (kind == 1) ? std::sin(2.0 * u * z) : std::cos(2.0 * u * z);
            const cplx term = sign * weight * osc;
            total += term;
            last = std::abs(term);
            scale = std::max({scale, std::abs(total), last});
        }
        if (last < kThetaTermCutoff * scale)
            return total;
        if (window >= kThetaMaxWindow)
            theta_no_convergence();
        window *= 2;
    }
}

// Poisson-transformed Gaussian comb, centered on the nearest peak.
inline cplx theta_comb(int kind, cplx z, double mu) {
    const double shift = (kind == 1 || kind == 4) ? 0.5 : 0.0;
    const bool alternating = (kind == 1 || kind == 2);
    const double pref = std::sqrt(kPi / mu);

    const long k0 = std::lround(z.real() / kPi - shift);
    auto term = [&](long k) {
        const cplx d = z - kPi * (static_cast<double>(k) + shift);
        const double sign = (alternating && (k % 2 != 0)) ? -1.0 : 1.0;
        return sign * std::exp(-d * d / mu);
    };

    cplx total = term(k0);
    double scale = std::max(std::abs(total), 1e-300);
    long j = 1;
    long window = 8;
    for (;;) {
        double last = 0.0;
        for (; j <= window; ++j) {
            const cplx lo = term(k0 - j);
            const cplx hi = term(k0 + j);
            total += lo + hi;
            last = std::max(std::abs(lo), std::abs(hi));
            scale = std::max({scale, std::abs(total), last});
        }
        if (last < kThetaTermCutoff * scale)
            return pref * total;
        if (window >= kThetaMaxWindow)
            theta_no_convergence();
        window *= 2;
    }
}

// Complex-argument evaluation with the automatic branch switch. Internal:
// the public contract is real z, but identity checks need complex z.
inline cplx theta_eval_c(int kind, cplx z, double mu) {
    validate_theta(kind, mu);
    return (mu < 1.0) ? theta_comb(kind, z, mu) : theta_direct(kind, z, mu);
}

} // namespace detail

// Theta_kind(z|mu) for real z. The result is mathematically real; both
// summation branches are arranged so the imaginary part vanishes identically,
// and the output is pinned to exactly real.
inline cplx theta_eval(const ThetaArg& arg) {
    detail::validate_theta(arg.kind, arg.mu);
    if (!std::isfinite(arg.z))
        throw std::domain_error("theta: z must be finite");
    const cplx v = detail::theta_eval_c(arg.kind, cplx{arg.z, 0.0}, arg.mu);
    const double mag = std::abs(v);
    if (mag > 0.0 && std::abs(v.imag()) > 1e-13 * mag)
        throw std::runtime_error("theta: imaginary residue exceeded tolerance for real argument");
    return cplx{v.real(), 0.0};
}

inline double theta_eval_real(int kind, double z, double mu) {
    return theta_eval(ThetaArg{kind, z, mu}).real();
}

// Theta-null theta_kind(mu) = Theta_kind(0|mu); theta_1 vanishes identically.
inline double theta_null(int kind, double mu) {
    detail::validate_theta(kind, mu);
    if (kind == 1)
        return 0.0;
    return theta_eval_real(kind, 0.0, mu);
}

// Poisson-transformed representation: Theta_kind(z|mu) equals
// prefactor * Theta_{dual kind}(i * z_imag | mu_dual) with the kind map
// 1<->1, 2<->4, 3<->3, 4<->2 and mu_dual = pi^2/mu. The prefactor is
// sqrt(pi/mu) exp(-z^2/mu); kind 1 carries an extra factor -i.
struct PoissonDualForm {
    int kind;
    double mu;
    double z_imag;
    cplx prefactor;
};

inline PoissonDualForm poisson_dual(const ThetaArg& arg) {
    detail::validate_theta(arg.kind, arg.mu);
    if (!std::isfinite(arg.z))
        throw std::domain_error("theta: z must be finite");
    static constexpr int dual_kind[5] = {0, 1, 4, 3, 2};
    const double mu_dual = kPi * kPi / arg.mu;
    const double real_pref = std::sqrt(kPi / arg.mu) * std::exp(-arg.z * arg.z / arg.mu);
    const cplx pref = (arg.kind == 1) ? cplx{0.0, -real_pref} : cplx{real_pref, 0.0};
    return PoissonDualForm{dual_kind[arg.kind], mu_dual, kPi * arg.z / arg.mu, pref};
}

inline cplx poisson_dual_eval(const PoissonDualForm& d) {
    return d.prefactor * detail::theta_eval_c(d.kind, cplx{0.0, d.z_imag}, d.mu);
}

} // namespace thetaphase
