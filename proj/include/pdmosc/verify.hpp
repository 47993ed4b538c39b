#pragma once

// Audit of the printed closed forms against independent numerical routes,
// and monotonicity checks for sampled curves.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdmosc/spectrum.hpp"
#include "pdmosc/thermo.hpp"

namespace pdmosc {

enum class Quantity { Z, U, C, S, F, Zs, Us, Ss, Fs, Cs };

inline constexpr Quantity kAllQuantities[] = {Quantity::Z,  Quantity::U,  Quantity::C,  Quantity::S,  Quantity::F,
                                              Quantity::Zs, Quantity::Us, Quantity::Ss, Quantity::Fs, Quantity::Cs};

[[nodiscard]] bool is_superstat(Quantity q) noexcept;
[[nodiscard]] std::string_view to_string(Quantity q) noexcept;
[[nodiscard]] std::optional<Quantity> parse_quantity(std::string_view name) noexcept;
[[nodiscard]] std::string_view to_string(Transcription t) noexcept;
[[nodiscard]] std::optional<Transcription> parse_transcription(std::string_view name) noexcept;

enum class Classification { Agree, Close, Disagree, PrintedNonFinite, OracleNonFinite };

[[nodiscard]] std::string_view to_string(Classification c) noexcept;

/// Agree: rel_diff <= 1e-6; Close: <= 1e-2; Disagree otherwise. Non-finite
/// oracle values take precedence over non-finite printed values.
[[nodiscard]] Classification classify(double printed, double oracle) noexcept;

/// |printed - oracle| / max(|oracle|, 1e-300).
[[nodiscard]] double relative_difference(double printed, double oracle) noexcept;

struct DiscrepancyReport {
    Quantity quantity = Quantity::Z;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> q;  // superstatistical quantities only
    Transcription transcription = Transcription::Verbatim;
    double printed = 0.0;
    double oracle = 0.0;
    double rel_diff = 0.0;
    Classification classification = Classification::Agree;
};

struct AuditGrid {
    std::vector<OscillatorParams> params;
    std::vector<double> betas;
    std::vector<double> qs;
    BConvention convention = BConvention::Spectrum;
};

/// alpha in {0.1, 0.3, 0.9} (natural units), 25 log-spaced beta on [0.1, 10],
/// q in {0, 0.25, 0.5, 0.75, 1}.
[[nodiscard]] AuditGrid default_audit_grid();

/// Every printed closed form against its oracle, for both transcriptions:
///   Z  vs the [0, 1] quadrature;
///   U, C, S, F vs the derivative engine on ln Z_closed;
///   Zs vs the superstatistical quadrature;
///   Us, Ss, Fs, Cs vs the derivative engine on ln Zs (quadrature).
/// Ordered by quantity, then alpha, beta and q indices, then transcription.
/// Numerical failures become non-finite values, never exceptions.
/// Throws std::invalid_argument for an empty grid or a parameter set whose b
/// is at or below the closed-form guard.
[[nodiscard]] std::vector<DiscrepancyReport> audit_grid(const AuditGrid& grid,
                                                        const numerics::Tolerance& tol = engine_tolerance());

/// Z, U, C, S, F printed forms against the level sum (the physical partition
/// function) and the derivative engine on ln Z_sum. Same ordering.
[[nodiscard]] std::vector<DiscrepancyReport> physical_audit(const AuditGrid& grid,
                                                            const numerics::Tolerance& tol = engine_tolerance());

/// CSV with header quantity,alpha,beta,q,transcription,printed,oracle,rel_diff,classification;
/// floats with 17 significant digits.
void write_report_csv(std::ostream& out, const std::vector<DiscrepancyReport>& reports);
[[nodiscard]] std::string report_csv(const std::vector<DiscrepancyReport>& reports);

/// %.17g, with "nan", "inf" and "-inf" spelled out.
[[nodiscard]] std::string format_double(double v);

// ---------------------------------------------------------------------------
// Trend checks
// ---------------------------------------------------------------------------

enum class Trend { Increasing, Decreasing, NonNegative };

struct CurvePoint {
    double x;
    double y;
};

struct TrendResult {
    bool pass = true;
    std::optional<std::size_t> first_violation;  // index of the offending point
};

/// Increasing: y[i] > y[i-1] - slack; Decreasing: y[i] < y[i-1] + slack, with
/// slack = rel_slack * max(|y[i]|, |y[i-1]|). NonNegative: y[i] >= -rel_slack * max|y|.
/// rel_slack = 0 makes the comparisons strict. Throws std::invalid_argument
/// for fewer than 3 points or x not strictly increasing.
[[nodiscard]] TrendResult trend_check(const std::vector<CurvePoint>& curve, Trend expected,
                                      double rel_slack = 1e-12);

}  // namespace pdmosc
