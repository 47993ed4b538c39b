#include "pdmosc/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace pdmosc::cli {

namespace {

struct Named {
    std::string_view name;
    int value;
};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<Named, N>& table, std::string_view s) noexcept {
    for (const auto& e : table) {
        if (e.name == s) return static_cast<Enum>(e.value);
    }
    return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<Named, N>& table, Enum v) noexcept {
    for (const auto& e : table) {
        if (e.value == static_cast<int>(v)) return e.name;
    }
    return "?";
}

constexpr std::array<Named, 11> kObservables{{{"Energy", 0},
                                              {"Z", 1},
                                              {"U", 2},
                                              {"C", 3},
                                              {"S", 4},
                                              {"F", 5},
                                              {"Zs", 6},
                                              {"Us", 7},
                                              {"Ss", 8},
                                              {"Fs", 9},
                                              {"Cs", 10}}};
constexpr std::array<Named, 4> kAxes{{{"n", 0}, {"alpha", 1}, {"beta", 2}, {"q", 3}}};
constexpr std::array<Named, 5> kMethods{
    {{"sum", 0}, {"closed", 1}, {"quad01", 2}, {"quadinf", 3}, {"engine", 4}}};
constexpr std::array<Named, 2> kUnits{{{"natural", 0}, {"si", 1}}};

bool is_superstat(Observable o) noexcept { return static_cast<int>(o) >= static_cast<int>(Observable::Zs); }

bool depends_on(Observable o, Axis a) noexcept {
    switch (a) {
        case Axis::Alpha: return true;
        case Axis::N: return o == Observable::Energy;
        case Axis::Beta: return o != Observable::Energy;
        case Axis::Q: return is_superstat(o);
    }
    return false;
}

bool method_applies(Observable o, Method m) noexcept {
    if (o == Observable::Energy) return true;
    if (is_superstat(o)) return m == Method::Closed || m == Method::QuadInf || m == Method::Engine;
    return true;
}

// Factor taking a natural-unit result to the requested unit system.
double unit_factor(Observable o, const UnitSystem& u) noexcept {
    switch (o) {
        case Observable::Z:
        case Observable::Zs: return 1.0;
        case Observable::C:
        case Observable::S:
        case Observable::Ss:
        case Observable::Cs: return u.kB;
        default: return u.energy_unit();
    }
}

double pick(const ThermoPoint& p, Observable o) {
    switch (o) {
        case Observable::Z: return p.Z;
        case Observable::U: return p.U;
        case Observable::C: return p.C;
        case Observable::S: return p.S;
        default: return p.F;
    }
}

double pick(const SuperstatPoint& p, Observable o) {
    switch (o) {
        case Observable::Zs: return p.Zs;
        case Observable::Us: return p.Us;
        case Observable::Ss: return p.Ss;
        case Observable::Fs: return p.Fs;
        default: return p.Cs;
    }
}

ThermoMethod thermo_method(Method m) noexcept {
    switch (m) {
        case Method::Sum: return ThermoMethod::Sum;
        case Method::Quad01: return ThermoMethod::Quadrature01;
        case Method::QuadInf: return ThermoMethod::QuadratureInf;
        default: return ThermoMethod::ClosedForm;
    }
}

double canonical_value(Observable o, Method m, Transcription t, const SpectrumCoefficients& c, Beta beta,
                       const numerics::Tolerance& tol) {
    if (m == Method::Closed) {
        switch (o) {
            case Observable::Z: return partition_closed(c, beta);
            case Observable::U: return mean_energy_closed(c, beta, t);
            case Observable::C: return heat_capacity_closed(c, beta, 1.0, t);
            case Observable::S: return entropy_closed(c, beta, 1.0, t);
            default: return free_energy_closed(c, beta);
        }
    }
    if (o == Observable::Z) {
        switch (m) {
            case Method::Sum: return partition_sum(c, beta, tol);
            case Method::Quad01: return partition_quadrature(c, beta, QuadratureRange::Unit01, tol);
            case Method::QuadInf: return partition_quadrature(c, beta, QuadratureRange::SemiInfinite, tol);
            default: return partition_closed(c, beta);
        }
    }
    return pick(thermo(c, beta, thermo_method(m), 1.0, tol), o);
}

double superstat_value(Observable o, Method m, Transcription t, const SpectrumCoefficients& c, Beta beta,
                       DeformationQ q, const numerics::Tolerance& tol) {
    if (m == Method::Closed) {
        switch (o) {
            case Observable::Zs: return superstat_partition_closed(c, beta, q, t);
            case Observable::Us: return superstat_mean_energy_closed(c, beta, q, t);
            case Observable::Ss: return superstat_entropy_closed(c, beta, q, 1.0, t);
            case Observable::Fs: return superstat_free_energy_closed(c, beta, q, t);
            default: return superstat_heat_capacity_closed(c, beta, q, 1.0, t);
        }
    }
    if (o == Observable::Zs) return superstat_partition_quadrature(c, beta, q, tol);
    const auto method = m == Method::QuadInf ? SuperstatMethod::Quadrature : SuperstatMethod::DerivativeEngine;
    return pick(superstat_thermo(c, beta, q, 1.0, method, t, tol), o);
}

struct Coordinates {
    double alpha = 0.0;
    double beta = 1.0;
    double q = 0.0;
    double n = 0.0;
};

double evaluate(const SweepSpec& spec, Method m, const Coordinates& at) {
    const UnitSystem& u = spec.units;
    const auto c = coefficients(OscillatorParams::natural(u.natural_alpha(at.alpha)));
    const double factor = unit_factor(spec.quantity, u);
    if (spec.quantity == Observable::Energy) {
        if (!(at.n >= 0.0)) throw std::invalid_argument("n must be non-negative");
        return factor * c.energy(at.n);
    }
    const Beta beta{at.beta * u.energy_unit()};
    if (is_superstat(spec.quantity)) {
        return factor * superstat_value(spec.quantity, m, spec.transcription, c, beta, DeformationQ{at.q}, spec.tol);
    }
    return factor * canonical_value(spec.quantity, m, spec.transcription, c, beta, spec.tol);
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

}  // namespace

std::string_view to_string(Observable o) noexcept { return name_of(kObservables, o); }
std::string_view to_string(Axis a) noexcept { return name_of(kAxes, a); }
std::string_view to_string(Method m) noexcept { return name_of(kMethods, m); }
std::string_view to_string(Units u) noexcept { return name_of(kUnits, u); }
std::optional<Observable> parse_observable(std::string_view s) noexcept { return lookup<Observable>(kObservables, s); }
std::optional<Axis> parse_axis(std::string_view s) noexcept { return lookup<Axis>(kAxes, s); }
std::optional<Method> parse_method(std::string_view s) noexcept { return lookup<Method>(kMethods, s); }
std::optional<Units> parse_units(std::string_view s) noexcept { return lookup<Units>(kUnits, s); }

Method default_method(Observable o) noexcept { return is_superstat(o) ? Method::Engine : Method::Sum; }

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw std::invalid_argument("a range needs at least 2 points");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("range ends must be finite");
    std::vector<double> out(count);
    const double n = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + (hi - lo) * (static_cast<double>(i) / n);
    out.back() = hi;
    return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0 && hi > 0.0)) throw std::invalid_argument("log range ends must be positive");
    auto out = linspace(std::log(lo), std::log(hi), count);
    for (double& v : out) v = std::exp(v);
    out.front() = lo;
    out.back() = hi;
    return out;
}

RangeSpec parse_range(std::string_view text) {
    auto number = [&](std::string_view part, auto& value) {
        const auto* end = part.data() + part.size();
        const auto [ptr, ec] = std::from_chars(part.data(), end, value);
        if (ec != std::errc{} || ptr != end || part.empty()) {
            throw std::invalid_argument("malformed range '" + std::string(text) + "', expected lo:hi:count");
        }
    };
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos) {
        throw std::invalid_argument("malformed range '" + std::string(text) + "', expected lo:hi:count");
    }
    RangeSpec r;
    number(text.substr(0, first), r.lo);
    number(text.substr(first + 1, second - first - 1), r.hi);
    number(text.substr(second + 1), r.count);
    if (r.count < 2) throw std::invalid_argument("range count must be at least 2");
    return r;
}

UnitSystem UnitSystem::si(double m0, double omega) {
    if (!(std::isfinite(m0) && m0 > 0.0)) throw std::invalid_argument("SI units need a positive m0");
    if (!(std::isfinite(omega) && omega > 0.0)) throw std::invalid_argument("SI units need a positive omega");
    return {Units::SI, m0, omega, kHbarSI, kBoltzmannSI};
}

void SweepSpec::validate() const {
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
    if (!depends_on(quantity, vary)) {
        throw std::invalid_argument(std::string(to_string(quantity)) + " does not depend on " +
                                    std::string(to_string(vary)));
    }
    const bool fixed_too = (vary == Axis::Alpha && fixed.alpha) || (vary == Axis::Beta && fixed.beta) ||
                           (vary == Axis::Q && fixed.q) || (vary == Axis::N && fixed.n);
    if (fixed_too) throw std::invalid_argument(std::string(to_string(vary)) + " is both varied and fixed");
    // q defaults to 0 (the Boltzmann factor); every other parameter the
    // quantity depends on must be given.
    auto require = [&](Axis a, bool given) {
        if (a != vary && depends_on(quantity, a) && !given) {
            throw std::invalid_argument(std::string(to_string(quantity)) + " needs a value for " +
                                        std::string(to_string(a)));
        }
    };
    require(Axis::Alpha, fixed.alpha.has_value());
    require(Axis::Beta, fixed.beta.has_value());
    require(Axis::N, fixed.n.has_value());
    if (method && !method_applies(quantity, *method)) {
        throw std::invalid_argument("method " + std::string(to_string(*method)) + " does not apply to " +
                                    std::string(to_string(quantity)));
    }
}

Table run_sweep(const SweepSpec& spec) {
    spec.validate();
    const Method m = spec.method.value_or(default_method(spec.quantity));
    const std::string label = spec.label.empty() ? std::string(to_string(spec.quantity)) : spec.label;

    Coordinates base;
    if (spec.fixed.alpha) base.alpha = *spec.fixed.alpha;
    if (spec.fixed.beta) base.beta = *spec.fixed.beta;
    if (spec.fixed.q) base.q = *spec.fixed.q;
    if (spec.fixed.n) base.n = *spec.fixed.n;

    Table out;
    out.reserve(spec.grid.size());
    for (double x : spec.grid) {
        Coordinates at = base;
        switch (spec.vary) {
            case Axis::N: at.n = x; break;
            case Axis::Alpha: at.alpha = x; break;
            case Axis::Beta: at.beta = x; break;
            case Axis::Q: at.q = x; break;
        }
        Row row{label, x, std::nullopt, {}};
        try {
            const double y = evaluate(spec, m, at);
            row.y = y;
            if (!std::isfinite(y)) row.warning = "non-finite value";
        } catch (const SingularLimit& e) {
            row.warning = e.what();
        }
        out.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

namespace {

const std::vector<double> kFigureAlphas = {0.1, 0.3, 0.9};
constexpr double kFigureQ = 0.5;

std::vector<double> alpha_axis() { return linspace(0.02, 0.95, 48); }
std::vector<double> beta_axis() { return linspace(0.1, 10.0, 50); }

// Panel (a): quantity against beta, one curve per alpha.
std::vector<PresetCurve> beta_panel(Observable o, std::optional<Trend> trend) {
    std::vector<PresetCurve> out;
    for (double alpha : kFigureAlphas) {
        SweepSpec s;
        s.quantity = o;
        s.vary = Axis::Beta;
        s.grid = beta_axis();
        s.fixed.alpha = alpha;
        if (is_superstat(o)) s.fixed.q = kFigureQ;
        s.label = "alpha=" + short_number(alpha);
        out.push_back({std::move(s), trend});
    }
    return out;
}

// Panel (b): quantity against alpha, one curve per beta.
std::vector<PresetCurve> alpha_panel(Observable o, const std::vector<double>& betas, std::optional<Trend> trend) {
    std::vector<PresetCurve> out;
    for (double beta : betas) {
        SweepSpec s;
        s.quantity = o;
        s.vary = Axis::Alpha;
        s.grid = alpha_axis();
        s.fixed.beta = beta;
        if (is_superstat(o)) s.fixed.q = kFigureQ;
        s.label = "beta=" + short_number(beta);
        out.push_back({std::move(s), trend});
    }
    return out;
}

struct PresetEntry {
    std::string_view id;
    std::string_view description;
};

constexpr PresetEntry kPresets[] = {
    {"Fig1a", "E_n against n for alpha in {0.1, 0.3, 0.9}"},
    {"Fig1b", "E_n against alpha for n in {1, 3, 5}"},
    {"Fig2a", "Z against beta for alpha in {0.1, 0.3, 0.9}"},
    {"Fig2b", "Z against alpha for beta in {2, 5, 8}"},
    {"FigUa", "U against beta for alpha in {0.1, 0.3, 0.9}"},
    {"FigUb", "U against alpha for beta in {2, 5, 10}"},
    {"Fig3a", "C against beta for alpha in {0.1, 0.3, 0.9}"},
    {"Fig3b", "C against alpha for beta in {0.5, 1, 2}"},
    {"Fig4a", "S against beta for alpha in {0.1, 0.3, 0.9}"},
    {"Fig4b", "S against alpha for beta in {0.2, 0.5, 1}"},
    {"Fig5a", "F against beta for alpha in {0.1, 0.3, 0.9}"},
    {"Fig5b", "F against alpha for beta in {0.2, 0.5, 1}"},
    {"Fig6a", "Zs against beta for alpha in {0.1, 0.3, 0.9}, q = 0.5"},
    {"Fig6b", "Zs against alpha for beta in {0.5, 1, 1.5}, q = 0.5"},
    {"Fig7a", "Us against beta for alpha in {0.1, 0.3, 0.9}, q = 0.5"},
    {"Fig7b", "Us against alpha for beta in {0.5, 1, 1.5}, q = 0.5"},
    {"Fig8a", "Ss against beta for alpha in {0.1, 0.3, 0.9}, q = 0.5"},
    {"Fig8b", "Ss against alpha for beta in {0.5, 1, 1.5}, q = 0.5"},
    {"Fig9a", "Fs against beta for alpha in {0.1, 0.3, 0.9}, q = 0.5"},
    {"Fig9b", "Fs against alpha for beta in {0.5, 1, 1.5}, q = 0.5"},
    {"Fig10a", "Cs against beta for alpha in {0.1, 0.3, 0.9}, q = 0.5"},
    {"Fig10b", "Cs against alpha for beta in {0.5, 1, 1.5}, q = 0.5"},
};

std::vector<PresetCurve> preset_curves(std::string_view id) {
    const std::vector<double> superstat_betas = {0.5, 1.0, 1.5};
    // Trends hold for the level sum: dZ/dbeta = -U Z, dU/dbeta = -var(E),
    // dS/dbeta = -beta var(E), dF/dbeta = S / beta^2, and every E_n grows with
    // alpha, which makes Z fall and F rise. C and S are non-negative.
    if (id == "Fig1a") {
        std::vector<PresetCurve> out;
        for (double alpha : kFigureAlphas) {
            SweepSpec s;
            s.quantity = Observable::Energy;
            s.vary = Axis::N;
            s.grid = linspace(0.0, 10.0, 11);
            s.fixed.alpha = alpha;
            s.label = "alpha=" + short_number(alpha);
            out.push_back({std::move(s), Trend::Increasing});
        }
        return out;
    }
    if (id == "Fig1b") {
        std::vector<PresetCurve> out;
        for (double n : {1.0, 3.0, 5.0}) {
            SweepSpec s;
            s.quantity = Observable::Energy;
            s.vary = Axis::Alpha;
            s.grid = alpha_axis();
            s.fixed.n = n;
            s.label = "n=" + short_number(n);
            out.push_back({std::move(s), Trend::Increasing});
        }
        return out;
    }
    if (id == "Fig2a") return beta_panel(Observable::Z, Trend::Decreasing);
    if (id == "Fig2b") return alpha_panel(Observable::Z, {2.0, 5.0, 8.0}, Trend::Decreasing);
    if (id == "FigUa") return beta_panel(Observable::U, Trend::Decreasing);
    if (id == "FigUb") return alpha_panel(Observable::U, {2.0, 5.0, 10.0}, Trend::NonNegative);
    if (id == "Fig3a") return beta_panel(Observable::C, Trend::NonNegative);
    if (id == "Fig3b") return alpha_panel(Observable::C, {0.5, 1.0, 2.0}, Trend::NonNegative);
    if (id == "Fig4a") return beta_panel(Observable::S, Trend::Decreasing);
    if (id == "Fig4b") return alpha_panel(Observable::S, {0.2, 0.5, 1.0}, Trend::NonNegative);
    if (id == "Fig5a") return beta_panel(Observable::F, Trend::Increasing);
    if (id == "Fig5b") return alpha_panel(Observable::F, {0.2, 0.5, 1.0}, Trend::Increasing);
    if (id == "Fig6a") return beta_panel(Observable::Zs, std::nullopt);
    if (id == "Fig6b") return alpha_panel(Observable::Zs, superstat_betas, std::nullopt);
    if (id == "Fig7a") return beta_panel(Observable::Us, std::nullopt);
    if (id == "Fig7b") return alpha_panel(Observable::Us, superstat_betas, std::nullopt);
    if (id == "Fig8a") return beta_panel(Observable::Ss, std::nullopt);
    if (id == "Fig8b") return alpha_panel(Observable::Ss, superstat_betas, std::nullopt);
    if (id == "Fig9a") return beta_panel(Observable::Fs, std::nullopt);
    if (id == "Fig9b") return alpha_panel(Observable::Fs, superstat_betas, std::nullopt);
    if (id == "Fig10a") return beta_panel(Observable::Cs, std::nullopt);
    if (id == "Fig10b") return alpha_panel(Observable::Cs, superstat_betas, std::nullopt);
    throw std::invalid_argument("unknown figure '" + std::string(id) + "'");
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& p : kPresets) out.emplace_back(p.id);
        return out;
    }();
    return ids;
}

FigurePreset figure_preset(std::string_view id) {
    for (const auto& p : kPresets) {
        if (p.id == id) return {std::string(p.id), std::string(p.description), preset_curves(id)};
    }
    throw std::invalid_argument("unknown figure '" + std::string(id) + "'");
}

Table run_figure(const FigurePreset& preset) {
    Table out;
    for (const auto& curve : preset.curves) {
        auto rows = run_sweep(curve.spec);
        out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    return out;
}

std::vector<std::string> check_figure(const FigurePreset& preset, const Table& table) {
    std::vector<std::string> failures;
    for (const auto& curve : preset.curves) {
        const std::string& label = curve.spec.label;
        std::vector<CurvePoint> points;
        bool finite = true;
        for (const auto& row : table) {
            if (row.curve != label) continue;
            if (!row.y || !std::isfinite(*row.y)) finite = false;
            points.push_back({row.x, row.y.value_or(std::nan(""))});
        }
        if (points.size() != curve.spec.grid.size()) {
            failures.push_back(preset.id + " " + label + ": expected " + std::to_string(curve.spec.grid.size()) +
                               " rows, found " + std::to_string(points.size()));
            continue;
        }
        if (!finite) {
            failures.push_back(preset.id + " " + label + ": non-finite or missing values");
            continue;
        }
        if (!curve.expected) continue;
        const auto result = trend_check(points, *curve.expected);
        if (!result.pass) {
            const std::size_t i = *result.first_violation;
            failures.push_back(preset.id + " " + label + ": trend violated at x = " + format_double(points[i].x));
        }
    }
    return failures;
}

// ---------------------------------------------------------------------------
// Point evaluation
// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> evaluate_point(const PointSpec& spec) {
    const UnitSystem& u = spec.units;
    const auto c = coefficients(OscillatorParams::natural(u.natural_alpha(spec.alpha)));
    const Beta beta{spec.beta * u.energy_unit()};
    const double energy = u.energy_unit();
    const double kB = u.kB;

    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("units", std::string(to_string(u.units)));
    out.emplace_back("alpha", format_double(spec.alpha));
    out.emplace_back("beta", format_double(spec.beta));

    if (spec.q) {
        const Method m = spec.method.value_or(Method::Engine);
        if (!method_applies(Observable::Zs, m)) {
            throw std::invalid_argument("method " + std::string(to_string(m)) +
                                        " does not apply to superstatistical points");
        }
        const auto method = m == Method::Closed    ? SuperstatMethod::ClosedForm
                            : m == Method::QuadInf ? SuperstatMethod::Quadrature
                                                   : SuperstatMethod::DerivativeEngine;
        const auto p = superstat_thermo(c, beta, DeformationQ{*spec.q}, 1.0, method, spec.transcription, spec.tol);
        out.emplace_back("q", format_double(*spec.q));
        out.emplace_back("method", std::string(to_string(m)));
        if (m == Method::Closed) out.emplace_back("transcription", std::string(to_string(spec.transcription)));
        out.emplace_back("Zs", format_double(p.Zs));
        out.emplace_back("Us", format_double(energy * p.Us));
        out.emplace_back("Ss", format_double(kB * p.Ss));
        out.emplace_back("Fs", format_double(energy * p.Fs));
        out.emplace_back("Cs", format_double(kB * p.Cs));
        return out;
    }

    const Method m = spec.method.value_or(Method::Sum);
    const ThermoPoint p = m == Method::Closed ? thermo_closed(c, beta, 1.0, spec.transcription)
                                              : thermo(c, beta, thermo_method(m), 1.0, spec.tol);
    out.emplace_back("method", std::string(to_string(m)));
    if (m == Method::Closed) out.emplace_back("transcription", std::string(to_string(spec.transcription)));
    out.emplace_back("Z", format_double(p.Z));
    out.emplace_back("U", format_double(energy * p.U));
    out.emplace_back("C", format_double(kB * p.C));
    out.emplace_back("S", format_double(kB * p.S));
    out.emplace_back("F", format_double(energy * p.F));
    return out;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

void write_csv(std::ostream& out, const Table& table) {
    out << "curve,x,y,warning\n";
    for (const auto& row : table) {
        out << csv_field(row.curve) << ',' << format_double(row.x) << ','
            << (row.y ? format_double(*row.y) : std::string{}) << ',' << csv_field(row.warning) << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table) {
        nlohmann::ordered_json r;
        r["curve"] = row.curve;
        r["x"] = row.x;
        if (row.y && std::isfinite(*row.y)) {
            r["y"] = *row.y;
        } else {
            r["y"] = nullptr;
        }
        r["warning"] = row.warning;
        rows.push_back(std::move(r));
    }
    out << rows.dump(2) << '\n';
}

}  // namespace pdmosc::cli
