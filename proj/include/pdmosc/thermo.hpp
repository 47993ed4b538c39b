#pragma once

// Canonical partition function of the oscillator by three routes (level
// sum, erf closed form, quadrature in the quantum number) and the derived
// quantities U, C, S, F.

#include <functional>

#include "pdmosc/numerics.hpp"
#include "pdmosc/spectrum.hpp"

namespace pdmosc {

/// Inverse temperature 1/(kB T). Strictly positive and finite.
class Beta {
public:
    explicit Beta(double value);
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    double value_;
};

enum class ThermoMethod { Sum, ClosedForm, Quadrature01, QuadratureInf };

enum class QuadratureRange { Unit01, SemiInfinite };

/// Which reading of the printed multi-line expressions to evaluate.
enum class Transcription { Verbatim, Corrected };

struct ThermoPoint {
    Beta beta{1.0};
    double Z = 0.0;
    double U = 0.0;
    double C = 0.0;
    double S = 0.0;
    double F = 0.0;
    ThermoMethod method = ThermoMethod::Sum;
};

/// Closed forms refuse b at or below this value (natural units).
inline constexpr double kDefaultBMin = 1e-8;

/// Tolerance used when a log-partition feeds numerical differentiation.
[[nodiscard]] numerics::Tolerance engine_tolerance();

// ---------------------------------------------------------------------------
// Partition function
// ---------------------------------------------------------------------------

/// Z = sum_n exp(-beta E_n), truncated by a rigorous tail bound.
[[nodiscard]] double partition_sum(const SpectrumCoefficients& c, Beta beta,
                                   const numerics::Tolerance& tol = engine_tolerance());

/// sum_{n >= 1} exp(-beta (E_n - E_0)), the excited-state weight relative to
/// the ground state. ln Z = -beta E_0 + log1p(excited_weight).
[[nodiscard]] double excited_weight(const SpectrumCoefficients& c, Beta beta,
                                    const numerics::Tolerance& tol = engine_tolerance());

[[nodiscard]] double log_partition_sum(const SpectrumCoefficients& c, Beta beta,
                                       const numerics::Tolerance& tol = engine_tolerance());

/// The erf closed form
///   Z = exp((a^2 + 2ab + 2b^2) beta / 4b) sqrt(pi) / (2 sqrt(b beta))
///       * (erf((a + 4b) sqrt(beta/b) / 2) - erf((a + 2b) sqrt(beta/b) / 2)),
/// evaluated through erfcx once the erf arguments are large.
/// Throws SingularLimit when b <= b_min.
[[nodiscard]] double partition_closed(const SpectrumCoefficients& c, Beta beta,
                                      double b_min = kDefaultBMin);
[[nodiscard]] double log_partition_closed(const SpectrumCoefficients& c, Beta beta,
                                          double b_min = kDefaultBMin);

/// Integral of exp(-beta E(n)) over n in [0, 1] or [0, inf).
[[nodiscard]] double partition_quadrature(const SpectrumCoefficients& c, Beta beta,
                                          QuadratureRange range,
                                          const numerics::Tolerance& tol = engine_tolerance());
[[nodiscard]] double log_partition_quadrature(const SpectrumCoefficients& c, Beta beta,
                                              QuadratureRange range,
                                              const numerics::Tolerance& tol = engine_tolerance());

// ---------------------------------------------------------------------------
// Derivative engine
// ---------------------------------------------------------------------------

using LogPartitionFn = std::function<double(double beta)>;

/// U = -d lnZ/d beta, C = kB beta^2 d^2 lnZ/d beta^2, S = kB (lnZ + beta U),
/// F = -lnZ / beta, with the derivatives taken numerically (scale beta for
/// the first derivative, 16 beta for the second).
/// Throws DomainEdge when beta is too close to zero for the stencil.
[[nodiscard]] ThermoPoint thermo_from_logZ(const LogPartitionFn& logZ, Beta beta, double kB);

/// Same, for a provider of g(beta) = ln Z(beta) + beta * energy_shift.
/// Shifting by the ground energy keeps g small and smooth at large beta,
/// where ln Z itself is dominated by the linear term.
[[nodiscard]] ThermoPoint thermo_from_logZ(const LogPartitionFn& shifted_logZ, double energy_shift,
                                           Beta beta, double kB);

/// Derivative engine applied to the log-partition of the given route.
/// ClosedForm differentiates the erf closed form (SingularLimit for b <= b_min).
[[nodiscard]] ThermoPoint thermo(const SpectrumCoefficients& c, Beta beta, ThermoMethod method,
                                 double kB = 1.0, const numerics::Tolerance& tol = engine_tolerance());

// ---------------------------------------------------------------------------
// Printed closed forms for U, C, S, F
// ---------------------------------------------------------------------------

/// Each evaluates the printed expression term by term. Verbatim keeps the
/// expression as typeset; Corrected applies the readings listed in the
/// README. All throw SingularLimit when b <= b_min.
[[nodiscard]] double mean_energy_closed(const SpectrumCoefficients& c, Beta beta,
                                        Transcription t = Transcription::Verbatim,
                                        double b_min = kDefaultBMin);
[[nodiscard]] double heat_capacity_closed(const SpectrumCoefficients& c, Beta beta, double kB,
                                          Transcription t = Transcription::Verbatim,
                                          double b_min = kDefaultBMin);
[[nodiscard]] double entropy_closed(const SpectrumCoefficients& c, Beta beta, double kB,
                                    Transcription t = Transcription::Verbatim,
                                    double b_min = kDefaultBMin);
[[nodiscard]] double free_energy_closed(const SpectrumCoefficients& c, Beta beta,
                                        double b_min = kDefaultBMin);

/// All four printed forms at one point, with Z from partition_closed.
[[nodiscard]] ThermoPoint thermo_closed(const SpectrumCoefficients& c, Beta beta, double kB,
                                        Transcription t = Transcription::Verbatim,
                                        double b_min = kDefaultBMin);

}  // namespace pdmosc
