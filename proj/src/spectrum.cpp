#include "pdmosc/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace pdmosc {

OscillatorParams OscillatorParams::natural(double alpha) {
    OscillatorParams p;
    p.alpha = alpha;
    p.validate();
    return p;
}

void OscillatorParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(m0)) throw std::invalid_argument("m0 must be positive");
    if (!positive(omega)) throw std::invalid_argument("omega must be positive");
    if (!positive(hbar)) throw std::invalid_argument("hbar must be positive");
    if (!positive(kB)) throw std::invalid_argument("kB must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must satisfy 0 <= alpha < 1");
}

void SpectrumCoefficients::validate() const {
    if (!(std::isfinite(a) && a > 0.0)) throw std::invalid_argument("coefficient a must be positive");
    if (!(std::isfinite(b) && b >= 0.0)) throw std::invalid_argument("coefficient b must be non-negative");
}

SpectrumCoefficients coefficients(const OscillatorParams& p, BConvention convention) {
    p.validate();
    const double ratio = p.alpha * p.hbar / (2.0 * p.m0 * p.omega);
    SpectrumCoefficients c;
    c.a = p.hbar * p.omega * std::sqrt(1.0 + ratio * ratio);
    c.b = p.alpha * p.hbar * p.hbar / (2.0 * p.m0);
    if (convention == BConvention::Compact) c.b /= p.omega;
    return c;
}

double energy_level(const OscillatorParams& p, std::uint32_t n) {
    return coefficients(p).energy(static_cast<double>(n));
}

double energy_level_direct(const OscillatorParams& p, std::uint32_t n) {
    p.validate();
    const double nn = static_cast<double>(n);
    const double root =
        std::sqrt(1.0 + p.alpha * p.alpha * p.hbar * p.hbar / (4.0 * p.m0 * p.m0 * p.omega * p.omega));
    return p.hbar * p.omega * (nn + 0.5) * root +
           p.alpha * p.hbar * p.hbar / (2.0 * p.m0) * (nn * nn + 2.0 * nn + 0.5);
}

}  // namespace pdmosc
