#pragma once

// Sweeps, figure presets and point evaluations behind the command-line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdmosc/numerics.hpp"
#include "pdmosc/spectrum.hpp"
#include "pdmosc/superstat.hpp"
#include "pdmosc/thermo.hpp"
#include "pdmosc/verify.hpp"

namespace pdmosc::cli {

enum class Observable { Energy, Z, U, C, S, F, Zs, Us, Ss, Fs, Cs };
enum class Axis { N, Alpha, Beta, Q };

/// Evaluation path. Sum: level sum (and the derivative engine on its log).
/// Closed: the printed closed forms. Quad01, QuadInf: quadrature in n over
/// [0, 1] or [0, inf). Engine: the derivative engine on ln Z_closed, or on
/// the quadrature ln Z_s for the superstatistical quantities.
enum class Method { Sum, Closed, Quad01, QuadInf, Engine };

/// Natural: hbar = kB = m0 = omega = 1. SI: CODATA hbar and kB, with m0 and
/// omega supplied by the caller; beta in 1/J, alpha in 1/m^2.
enum class Units { Natural, SI };

inline constexpr double kHbarSI = 1.054571817e-34;
inline constexpr double kBoltzmannSI = 1.380649e-23;

[[nodiscard]] std::string_view to_string(Observable o) noexcept;
[[nodiscard]] std::string_view to_string(Axis a) noexcept;
[[nodiscard]] std::string_view to_string(Method m) noexcept;
[[nodiscard]] std::string_view to_string(Units u) noexcept;
[[nodiscard]] std::optional<Observable> parse_observable(std::string_view s) noexcept;
[[nodiscard]] std::optional<Axis> parse_axis(std::string_view s) noexcept;
[[nodiscard]] std::optional<Method> parse_method(std::string_view s) noexcept;
[[nodiscard]] std::optional<Units> parse_units(std::string_view s) noexcept;

/// Sum for Energy and the canonical quantities, Engine for the superstatistical ones.
[[nodiscard]] Method default_method(Observable o) noexcept;

/// count >= 2 evenly spaced points from lo to hi, endpoints exact.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, std::size_t count);
/// count >= 2 points evenly spaced in log from lo > 0 to hi > 0, endpoints exact.
[[nodiscard]] std::vector<double> logspace(double lo, double hi, std::size_t count);

/// Parses "lo:hi:count". Throws std::invalid_argument on malformed text.
struct RangeSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};
[[nodiscard]] RangeSpec parse_range(std::string_view text);

/// Physical constants shared by a run. alpha, beta and q live elsewhere.
struct UnitSystem {
    Units units = Units::Natural;
    double m0 = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    double kB = 1.0;

    static UnitSystem natural() { return {}; }
    /// CODATA hbar and kB with the given mass (kg) and angular frequency (1/s).
    static UnitSystem si(double m0, double omega);

    /// hbar omega, the energy that the natural-unit results are measured in.
    [[nodiscard]] double energy_unit() const noexcept { return hbar * omega; }
    /// alpha in the units of this system expressed in natural units.
    [[nodiscard]] double natural_alpha(double alpha) const noexcept { return alpha * hbar / (m0 * omega); }
};

struct FixedParams {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> q;
    std::optional<double> n;
};

struct SweepSpec {
    Observable quantity = Observable::Z;
    Axis vary = Axis::Beta;
    std::vector<double> grid;
    FixedParams fixed;
    std::optional<Method> method;  // default_method(quantity) when empty
    Transcription transcription = Transcription::Verbatim;
    UnitSystem units;
    numerics::Tolerance tol = engine_tolerance();
    std::string label;  // curve column; the quantity name when empty

    /// Throws std::invalid_argument when the quantity does not depend on the
    /// varied axis, the varied axis is also fixed, a parameter the quantity
    /// depends on is missing (q alone defaults to 0), the method does not
    /// apply to the quantity, or the grid is empty.
    void validate() const;
};

struct Row {
    std::string curve;
    double x = 0.0;
    std::optional<double> y;  // empty when the point sits on a singular limit
    std::string warning;
};

using Table = std::vector<Row>;

/// One row per grid value, in grid order. SingularLimit becomes an empty y
/// with the message in the warning column; non-finite values are kept and
/// flagged. Other numerical failures propagate.
[[nodiscard]] Table run_sweep(const SweepSpec& spec);

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

struct PresetCurve {
    SweepSpec spec;
    std::optional<Trend> expected;  // finiteness only when empty
};

struct FigurePreset {
    std::string id;
    std::string description;
    std::vector<PresetCurve> curves;
};

/// Fig1a ... Fig10b, plus FigUa and FigUb for the mean energy.
[[nodiscard]] const std::vector<std::string>& figure_ids();

/// Throws std::invalid_argument for an unknown id.
[[nodiscard]] FigurePreset figure_preset(std::string_view id);

[[nodiscard]] Table run_figure(const FigurePreset& preset);

/// Applies each curve's trend (or finiteness) check to the matching rows.
/// Returns one message per failing curve; empty means every check passed.
[[nodiscard]] std::vector<std::string> check_figure(const FigurePreset& preset, const Table& table);

// ---------------------------------------------------------------------------
// Point evaluation
// ---------------------------------------------------------------------------

struct PointSpec {
    double alpha = 0.0;
    double beta = 1.0;
    std::optional<double> q;  // superstatistical point when set
    std::optional<Method> method;
    Transcription transcription = Transcription::Verbatim;
    UnitSystem units;
    numerics::Tolerance tol = engine_tolerance();
};

/// Ordered key/value pairs of a ThermoPoint or SuperstatPoint.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> evaluate_point(const PointSpec& spec);

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// Header curve,x,y,warning; empty y for missing values, floats at 17 digits.
void write_csv(std::ostream& out, const Table& table);
/// Array of {"curve", "x", "y", "warning"} objects; missing and non-finite y are null.
void write_json(std::ostream& out, const Table& table);

}  // namespace pdmosc::cli
