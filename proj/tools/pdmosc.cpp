// Command-line front end: sweeps, figure presets, the formula audit and
// single-point evaluation.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdmosc/cli.hpp"
#include "pdmosc/errors.hpp"
#include "pdmosc/verify.hpp"

namespace {

using namespace pdmosc;
using namespace pdmosc::cli;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Options {
    double alpha = 0.0;
    double beta = 1.0;
    double q = 0.0;
    double n = 0.0;
    std::string quantity;
    std::string vary;
    std::string range;
    std::string spacing = "linear";
    std::vector<double> values;
    std::string method;
    std::string transcription = "verbatim";
    std::string units = "natural";
    double m0 = 0.0;
    double omega = 0.0;
    std::string out;
    std::string physical_out;
    std::string format = "csv";
    double tol_rel = engine_tolerance().rel();
    double tol_abs = engine_tolerance().abs();
    std::string figure;
    bool list = false;

    CLI::Option* alpha_opt = nullptr;
    CLI::Option* beta_opt = nullptr;
    CLI::Option* q_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* method_opt = nullptr;
    CLI::Option* m0_opt = nullptr;
    CLI::Option* omega_opt = nullptr;
};

template <typename T>
T parsed(std::optional<T> v, const std::string& what, const std::string& text) {
    if (!v) throw std::invalid_argument("unknown " + what + " '" + text + "'");
    return *v;
}

UnitSystem unit_system(const Options& o) {
    const Units u = parsed(parse_units(o.units), "units", o.units);
    if (u == Units::Natural) {
        if (o.m0_opt->count() || o.omega_opt->count()) {
            throw std::invalid_argument("--m0 and --omega only apply with --units si");
        }
        return UnitSystem::natural();
    }
    if (!o.m0_opt->count() || !o.omega_opt->count()) {
        throw std::invalid_argument("--units si needs --m0 (kg) and --omega (1/s)");
    }
    return UnitSystem::si(o.m0, o.omega);
}

std::optional<Method> method_of(const Options& o) {
    if (!o.method_opt->count()) return std::nullopt;
    return parsed(parse_method(o.method), "method", o.method);
}

numerics::Tolerance tolerance(const Options& o) { return numerics::Tolerance{o.tol_rel, o.tol_abs, 2000000}; }

// Runs body with the output stream chosen by --out.
template <typename Body>
void with_output(const std::string& path, Body&& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::invalid_argument("cannot open '" + path + "' for writing");
    body(file);
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void write_table(const Options& o, const Table& table) {
    if (o.format != "csv" && o.format != "json") throw std::invalid_argument("unknown format '" + o.format + "'");
    with_output(o.out, [&](std::ostream& s) {
        if (o.format == "json") {
            write_json(s, table);
        } else {
            write_csv(s, table);
        }
    });
}

void run_sweep_verb(const Options& o) {
    SweepSpec spec;
    spec.quantity = parsed(parse_observable(o.quantity), "quantity", o.quantity);
    spec.vary = parsed(parse_axis(o.vary), "axis", o.vary);
    if (!o.range.empty() && !o.values.empty()) throw std::invalid_argument("give either --range or --values");
    if (!o.range.empty()) {
        const RangeSpec r = parse_range(o.range);
        if (o.spacing == "linear") {
            spec.grid = linspace(r.lo, r.hi, r.count);
        } else if (o.spacing == "log") {
            spec.grid = logspace(r.lo, r.hi, r.count);
        } else {
            throw std::invalid_argument("unknown spacing '" + o.spacing + "'");
        }
    } else {
        spec.grid = o.values;
    }
    if (spec.grid.empty()) throw std::invalid_argument("sweep needs --range or --values");
    if (o.alpha_opt->count()) spec.fixed.alpha = o.alpha;
    if (o.beta_opt->count()) spec.fixed.beta = o.beta;
    if (o.q_opt->count()) spec.fixed.q = o.q;
    if (o.n_opt->count()) spec.fixed.n = o.n;
    spec.method = method_of(o);
    spec.transcription = parsed(parse_transcription(o.transcription), "transcription", o.transcription);
    spec.units = unit_system(o);
    spec.tol = tolerance(o);

    const Table table = run_sweep(spec);
    for (const auto& row : table) {
        if (!row.warning.empty()) std::cerr << "warning: x = " << format_double(row.x) << ": " << row.warning << '\n';
    }
    write_table(o, table);
}

void run_figure_verb(const Options& o) {
    if (o.list) {
        for (const auto& id : figure_ids()) std::cout << id << '\t' << figure_preset(id).description << '\n';
        return;
    }
    if (o.figure.empty()) throw std::invalid_argument("figure needs an id (see figure --list)");
    const FigurePreset preset = figure_preset(o.figure);
    const Table table = run_figure(preset);
    for (const auto& failure : check_figure(preset, table)) std::cerr << "check failed: " << failure << '\n';
    write_table(o, table);
}

void run_audit_verb(const Options& o) {
    const AuditGrid grid = default_audit_grid();
    const auto tol = tolerance(o);
    const auto reports = audit_grid(grid, tol);
    with_output(o.out, [&](std::ostream& s) { write_report_csv(s, reports); });

    std::map<std::string, std::size_t> counts;
    for (const auto& r : reports) ++counts[std::string(to_string(r.classification))];
    std::cerr << reports.size() << " reports:";
    for (const auto& [name, count] : counts) std::cerr << ' ' << name << '=' << count;
    std::cerr << '\n';

    if (!o.physical_out.empty()) {
        const auto physical = physical_audit(grid, tol);
        with_output(o.physical_out, [&](std::ostream& s) { write_report_csv(s, physical); });
    }
}

void run_point_verb(const Options& o) {
    if (!o.alpha_opt->count() || !o.beta_opt->count()) throw std::invalid_argument("point needs --alpha and --beta");
    PointSpec spec;
    spec.alpha = o.alpha;
    spec.beta = o.beta;
    if (o.q_opt->count()) spec.q = o.q;
    spec.method = method_of(o);
    spec.transcription = parsed(parse_transcription(o.transcription), "transcription", o.transcription);
    spec.units = unit_system(o);
    spec.tol = tolerance(o);
    for (const auto& [key, value] : evaluate_point(spec)) std::cout << key << '=' << value << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermodynamics of the position-dependent-mass oscillator"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "File of key = value lines; command-line flags take precedence");

    Options o;
    o.alpha_opt = app.add_option("--alpha", o.alpha, "Mass deformation alpha");
    o.beta_opt = app.add_option("--beta", o.beta, "Inverse temperature");
    o.q_opt = app.add_option("--q", o.q, "Superstatistical deformation q in [0, 1]");
    o.n_opt = app.add_option("--n", o.n, "Quantum number");
    app.add_option("--quantity", o.quantity, "Energy, Z, U, C, S, F, Zs, Us, Ss, Fs or Cs");
    app.add_option("--vary", o.vary, "Swept parameter: n, alpha, beta or q");
    app.add_option("--range", o.range, "Sweep grid lo:hi:count");
    app.add_option("--spacing", o.spacing, "Grid spacing for --range: linear or log");
    app.add_option("--values", o.values, "Explicit sweep grid")->delimiter(',');
    o.method_opt = app.add_option("--method", o.method, "sum, closed, quad01, quadinf or engine");
    app.add_option("--transcription", o.transcription, "verbatim or corrected");
    app.add_option("--units", o.units, "natural or si");
    o.m0_opt = app.add_option("--m0", o.m0, "Mass in kg (si units)");
    o.omega_opt = app.add_option("--omega", o.omega, "Angular frequency in 1/s (si units)");
    app.add_option("--out", o.out, "Output path (default stdout)");
    app.add_option("--physical-out", o.physical_out, "audit: also write the level-sum audit here");
    app.add_option("--format", o.format, "csv or json");
    app.add_option("--tol-rel", o.tol_rel, "Relative tolerance for sums and quadrature");
    app.add_option("--tol-abs", o.tol_abs, "Absolute tolerance for sums and quadrature");

    auto* sweep = app.add_subcommand("sweep", "Evaluate one quantity along a grid");
    auto* figure = app.add_subcommand("figure", "Reproduce a figure preset");
    figure->add_option("id", o.figure, "Preset id, e.g. Fig2a");
    figure->add_flag("--list", o.list, "List the presets");
    auto* audit = app.add_subcommand("audit", "Audit the printed closed forms against their oracles");
    auto* point = app.add_subcommand("point", "Evaluate every quantity at one point");
    for (auto* sub : {sweep, figure, audit, point}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*sweep) run_sweep_verb(o);
        if (*figure) run_figure_verb(o);
        if (*audit) run_audit_verb(o);
        if (*point) run_point_verb(o);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
