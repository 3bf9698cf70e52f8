#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thetaphase {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Dimension of the sampled state space (number of lattice points M >= 2).
class SpaceDim {
  public:
    explicit SpaceDim(int m) : m_(m) {
        if (m < 2)
            throw std::domain_error("SpaceDim: M must be >= 2, got " + std::to_string(m));
    }
    int m() const { return m_; }
    bool odd() const { return m_ % 2 != 0; }

    friend bool operator==(SpaceDim a, SpaceDim b) { return a.m_ == b.m_; }
    friend bool operator!=(SpaceDim a, SpaceDim b) { return a.m_ != b.m_; }

  private:
    int m_;
};

// Canonical representative of x mod M in 0..M-1.
inline int mod_m(long long x, int m) {
    long long r = x % m;
    if (r < 0)
        r += m;
    return static_cast<int>(r);
}

// Representative in (-M/2, M/2] used where lattice sums need the nearest image.
inline int mod_m_centered(long long x, int m) {
    int r = mod_m(x, m);
    return (2 * r > m) ? r - m : r;
}

inline void require_odd(SpaceDim dim, const char* what) {
    if (!dim.odd())
        throw std::domain_error(std::string(what) + ": M must be odd, got " + std::to_string(dim.m()));
}

} // namespace thetaphase
