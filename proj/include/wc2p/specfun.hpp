/** \file specfun.hpp
 * \brief Special functions for the analytical oracles: the Faddeeva function
 *        (scaled complementary error function of complex argument) and a small
 *        complex polynomial root finder.
 *
 * The Faddeeva evaluation follows Weideman's rational series (SIAM Rev. 36,
 * 1994): a single N-term expansion valid in the upper half-plane, extended by
 * the reflection identity w(-z) = 2 exp(-z^2) - w(z).
 */
#ifndef WC2P_SPECFUN_HPP
#define WC2P_SPECFUN_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wc2p {

class OracleError : public std::runtime_error {
public:
    explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

constexpr int faddeeva_n = 40;

struct FaddeevaTable {
    double l;
    std::array<double, faddeeva_n> a;   ///< a[j-1] multiplies Z^(j-1)

    FaddeevaTable() {
        const int n = faddeeva_n;
        const int m = 2 * n, m2 = 4 * n;
        l = std::sqrt(n / std::sqrt(2.0));
        // sample f(theta) = exp(-t^2)(L^2+t^2), t = L tan(theta/2), with the
        // theta = -pi endpoint prepended as 0, then centre the sequence
        std::vector<double> raw(m2, 0.0);
        for (int k = -m + 1; k <= m - 1; ++k) {
            const double theta = k * std::numbers::pi / m;
            const double t = l * std::tan(0.5 * theta);
            raw[k + m] = std::exp(-t * t) * (l * l + t * t);
        }
        std::vector<double> shifted(m2);
        for (int i = 0; i < m2; ++i) shifted[i] = raw[(i + m2 / 2) % m2];
        // direct real DFT; cost is negligible and done once
        for (int j = 1; j <= n; ++j) {
            double re = 0.0;
            for (int i = 0; i < m2; ++i)
                re += shifted[i] * std::cos(2.0 * std::numbers::pi * j * i / m2);
            a[j - 1] = re / m2;
        }
    }
};

inline const FaddeevaTable& faddeeva_table() {
    static const FaddeevaTable t;
    return t;
}

} // namespace detail

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), any complex z.
inline std::complex<double> faddeeva(std::complex<double> z) {
    if (z.imag() < 0.0)
        return 2.0 * std::exp(-z * z) - faddeeva(-z);
    const auto& tab = detail::faddeeva_table();
    const std::complex<double> iz(-z.imag(), z.real());
    const std::complex<double> den = tab.l - iz;
    const std::complex<double> zz = (tab.l + iz) / den;
    std::complex<double> p = 0.0;
    for (int j = detail::faddeeva_n - 1; j >= 0; --j) p = p * zz + tab.a[j];
    return 2.0 * p / (den * den) +
           (1.0 / std::sqrt(std::numbers::pi)) / den;
}

/// Scaled complementary error function erfcx(q) = exp(q^2) erfc(q).
inline std::complex<double> erfcx(std::complex<double> q) {
    return faddeeva(std::complex<double>(-q.imag(), q.real()));   // w(iq)
}

/// Roots of a monic-normalizable complex polynomial sum c_k z^k by the
/// Durand-Kerner iteration. Coefficients in ascending order; the leading
/// coefficient must be nonzero.
inline std::vector<std::complex<double>> polynomial_roots(
    std::vector<std::complex<double>> c) {
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1 || std::abs(c.back()) == 0.0)
        throw OracleError("polynomial_roots: degenerate polynomial");
    for (auto& v : c) v /= c[deg];

    double scale = 0.0;
    for (int k = 0; k < deg; ++k) scale = std::max(scale, std::pow(std::abs(c[k]), 1.0 / (deg - k)));
    scale = std::max(scale, 1.0);

    std::vector<std::complex<double>> z(deg);
    const std::complex<double> seed = std::polar(scale, 0.7);   // avoid real-axis symmetry traps
    for (int i = 0; i < deg; ++i) z[i] = std::pow(seed, i + 1);

    auto eval = [&](std::complex<double> x) {
        std::complex<double> p = 1.0;
        for (int k = deg - 1; k >= 0; --k) p = p * x + c[k];
        return p;
    };
    for (int it = 0; it < 500; ++it) {
        double move = 0.0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> d = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) d *= z[i] - z[j];
            const std::complex<double> step = eval(z[i]) / d;
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-14 * scale) return z;
    }
    throw OracleError("polynomial_roots: Durand-Kerner iteration did not converge");
}

} // namespace wc2p

#endif
