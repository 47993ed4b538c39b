#pragma once

// Physical parameters and the energy spectrum of the oscillator with mass
// profile m(x) = m0 / (1 + alpha x^2)^2, in the compact form
//   E_n = a (n + 1/2) + b (n^2 + 2n + 1/2).

#include <cstdint>

namespace pdmosc {

/// Which printed definition of b to use. Spectrum: alpha hbar^2 / (2 m0),
/// the value that reproduces the energy levels. Compact: alpha hbar^2 / (2 m0 omega).
/// The two coincide when omega = 1.
enum class BConvention { Spectrum, Compact };

struct OscillatorParams {
    double m0 = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    double alpha = 0.0;
    double kB = 1.0;

    /// m0 = omega = hbar = kB = 1.
    static OscillatorParams natural(double alpha);

    /// Throws std::invalid_argument unless m0, omega, hbar, kB > 0 and 0 <= alpha < 1.
    void validate() const;
};

struct SpectrumCoefficients {
    double a = 1.0;  // renormalized level spacing
    double b = 0.0;  // quadratic (anharmonic) coefficient

    /// Throws std::invalid_argument unless a > 0 and b >= 0, both finite.
    void validate() const;

    /// E(n) for real n >= 0, the integrand variable of the quadrature paths.
    [[nodiscard]] double energy(double n) const noexcept {
        return a * (n + 0.5) + b * (n * n + 2.0 * n + 0.5);
    }

    /// Ground-state energy E(0) = (a + b) / 2.
    [[nodiscard]] double ground() const noexcept { return 0.5 * (a + b); }
};

[[nodiscard]] SpectrumCoefficients coefficients(const OscillatorParams& p,
                                                BConvention convention = BConvention::Spectrum);

/// E_n from the compact form with (a, b) = coefficients(p).
[[nodiscard]] double energy_level(const OscillatorParams& p, std::uint32_t n);

/// E_n written out in the physical parameters, without the (a, b) split.
[[nodiscard]] double energy_level_direct(const OscillatorParams& p, std::uint32_t n);

}  // namespace pdmosc
