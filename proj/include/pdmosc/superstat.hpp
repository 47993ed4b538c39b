#pragma once

// Superstatistics with the deformed Boltzmann factor
//   B(E) = exp(-beta E) (1 + q beta^2 E^2 / 2),   0 <= q <= 1,
// integrated over the quantum number n in [0, inf).

#include "pdmosc/numerics.hpp"
#include "pdmosc/spectrum.hpp"
#include "pdmosc/thermo.hpp"

namespace pdmosc {

/// Deformation parameter q in [0, 1]; q = 0 is the Boltzmann factor.
class DeformationQ {
public:
    explicit DeformationQ(double q);
    [[nodiscard]] double value() const noexcept { return q_; }

private:
    double q_;
};

/// ClosedForm: printed Z_s, U_s, S_s, F_s, with C_s differentiated from the
/// printed Z_s. Quadrature and DerivativeEngine both take Z_s from quadrature
/// and every derived quantity from the derivative engine.
enum class SuperstatMethod { ClosedForm, Quadrature, DerivativeEngine };

struct SuperstatPoint {
    Beta beta{1.0};
    DeformationQ q{0.0};
    double Zs = 0.0;
    double Us = 0.0;
    double Ss = 0.0;
    double Fs = 0.0;
    double Cs = 0.0;
    SuperstatMethod method = SuperstatMethod::DerivativeEngine;
};

/// exp(-beta E) (1 + q beta^2 E^2 / 2). Throws std::invalid_argument for E < 0.
[[nodiscard]] double boltzmann_factor_q(double energy, Beta beta, DeformationQ q);

/// Integral over n in [0, inf) of boltzmann_factor_q(E(n)). At q = 0 the
/// integrand is identical to partition_quadrature(SemiInfinite).
[[nodiscard]] double superstat_partition_quadrature(const SpectrumCoefficients& c, Beta beta,
                                                    DeformationQ q,
                                                    const numerics::Tolerance& tol = engine_tolerance());
[[nodiscard]] double log_superstat_partition_quadrature(
    const SpectrumCoefficients& c, Beta beta, DeformationQ q,
    const numerics::Tolerance& tol = engine_tolerance());

/// Printed closed form for Z_s. The e^G (1 - erf) pairs are evaluated as
/// erfcx so the result stays finite where e^G overflows.
/// Verbatim: erf multiplies only the trailing 4b^2(8 + ...) term, as typeset.
/// Corrected: erf multiplies the whole bracket. The two agree at q = 0.
/// The value keeps its sign; the log variant is NaN where it is not positive.
/// Throws SingularLimit when b <= b_min.
[[nodiscard]] double superstat_partition_closed(const SpectrumCoefficients& c, Beta beta,
                                                DeformationQ q,
                                                Transcription t = Transcription::Verbatim,
                                                double b_min = kDefaultBMin);
[[nodiscard]] double log_superstat_partition_closed(const SpectrumCoefficients& c, Beta beta,
                                                    DeformationQ q,
                                                    Transcription t = Transcription::Verbatim,
                                                    double b_min = kDefaultBMin);

/// Printed U_s. Verbatim is evaluated term by term; Corrected (8ab^3 beta in
/// the numerator, 8b^3 beta in the denominator) collects e^G (1 - erf) into erfcx.
[[nodiscard]] double superstat_mean_energy_closed(const SpectrumCoefficients& c, Beta beta,
                                                  DeformationQ q,
                                                  Transcription t = Transcription::Verbatim,
                                                  double b_min = kDefaultBMin);

/// Printed S_s. Corrected reads "-6 b beta + b beta" as -4 b beta.
[[nodiscard]] double superstat_entropy_closed(const SpectrumCoefficients& c, Beta beta,
                                              DeformationQ q, double kB,
                                              Transcription t = Transcription::Verbatim,
                                              double b_min = kDefaultBMin);

/// Printed F_s = -ln(Z_s)/beta. Verbatim carries +2a^3 where the standalone
/// Z_s has -2a^3, and the erf placement of the verbatim Z_s.
[[nodiscard]] double superstat_free_energy_closed(const SpectrumCoefficients& c, Beta beta,
                                                  DeformationQ q,
                                                  Transcription t = Transcription::Verbatim,
                                                  double b_min = kDefaultBMin);

/// C_s = kB beta^2 d^2 ln Z_s / d beta^2 of the printed Z_s, differentiated numerically.
[[nodiscard]] double superstat_heat_capacity_closed(const SpectrumCoefficients& c, Beta beta,
                                                    DeformationQ q, double kB,
                                                    Transcription t = Transcription::Verbatim,
                                                    double b_min = kDefaultBMin);

[[nodiscard]] SuperstatPoint superstat_thermo(const SpectrumCoefficients& c, Beta beta, DeformationQ q,
                                              double kB, SuperstatMethod method,
                                              Transcription t = Transcription::Verbatim,
                                              const numerics::Tolerance& tol = engine_tolerance());

}  // namespace pdmosc
