#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "oracles.hpp"
#include "pdmosc/cli.hpp"

using namespace pdmosc;
using namespace pdmosc::cli;

namespace {

SweepSpec sweep(Observable o, Axis vary, std::vector<double> grid) {
    SweepSpec s;
    s.quantity = o;
    s.vary = vary;
    s.grid = std::move(grid);
    return s;
}

std::string csv(const Table& t) {
    std::ostringstream s;
    write_csv(s, t);
    return s.str();
}

}  // namespace

TEST_CASE("names and grids") {
    CHECK(parse_observable("Energy") == Observable::Energy);
    CHECK(parse_observable("Cs") == Observable::Cs);
    CHECK_FALSE(parse_observable("cs").has_value());
    CHECK(parse_axis("beta") == Axis::Beta);
    CHECK(parse_method("quadinf") == Method::QuadInf);
    CHECK(parse_units("si") == Units::SI);
    CHECK(to_string(Method::Quad01) == "quad01");
    CHECK(default_method(Observable::U) == Method::Sum);
    CHECK(default_method(Observable::Us) == Method::Engine);

    const auto lin = linspace(0.02, 0.95, 48);
    CHECK(lin.size() == 48);
    CHECK(lin.front() == 0.02);
    CHECK(lin.back() == 0.95);
    const auto lg = logspace(0.5, 8.0, 16);
    CHECK(lg.front() == 0.5);
    CHECK(lg.back() == 8.0);
    CHECK(lg[1] / lg[0] == doctest::Approx(lg[15] / lg[14]));
    CHECK_THROWS_AS((void)linspace(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)logspace(0, 1, 3), std::invalid_argument);

    const auto r = parse_range("0.5:8:16");
    CHECK(r.lo == 0.5);
    CHECK(r.hi == 8.0);
    CHECK(r.count == 16);
    CHECK_THROWS_AS((void)parse_range("0.5:8"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_range("a:8:3"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_range("0:1:1"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_range("0:1:3x"), std::invalid_argument);
}

TEST_CASE("energy sweep over n") {
    auto s = sweep(Observable::Energy, Axis::N, linspace(0, 10, 11));
    s.fixed.alpha = 0.1;
    const auto t = run_sweep(s);
    REQUIRE(t.size() == 11);
    const auto c = coefficients(OscillatorParams::natural(0.1));
    for (std::size_t i = 0; i < t.size(); ++i) {
        REQUIRE(t[i].y.has_value());
        CHECK(*t[i].y == c.energy(double(i)));
        if (i > 0) CHECK(*t[i].y > *t[i - 1].y);
    }
}

TEST_CASE("partition sweep over beta decreases") {
    auto s = sweep(Observable::Z, Axis::Beta, logspace(0.5, 8, 16));
    s.fixed.alpha = 0.3;
    s.method = Method::Sum;
    const auto t = run_sweep(s);
    REQUIRE(t.size() == 16);
    const auto c = coefficients(OscillatorParams::natural(0.3));
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(std::abs(*t[i].y - oracle::level_moments(c.a, c.b, t[i].x).Z) < 1e-12 * *t[i].y);
        if (i > 0) CHECK(*t[i].y < *t[i - 1].y);
    }
}

TEST_CASE("superstatistical partition sweep over alpha") {
    auto s = sweep(Observable::Zs, Axis::Alpha, {0.1, 0.3, 0.5, 0.7, 0.9});
    s.fixed.beta = 1.0;
    s.fixed.q = 0.5;
    for (const auto& row : run_sweep(s)) {
        REQUIRE(row.y.has_value());
        CHECK(std::isfinite(*row.y));
        CHECK(*row.y > 0.0);
        CHECK(row.warning.empty());
    }
}

TEST_CASE("sweep validation") {
    auto s = sweep(Observable::Z, Axis::Q, {0.0, 0.5});
    s.fixed.alpha = 0.3;
    s.fixed.beta = 1.0;
    CHECK_THROWS_AS((void)run_sweep(s), std::invalid_argument);

    s = sweep(Observable::Z, Axis::Alpha, {0.1, 0.2});
    s.fixed.alpha = 0.1;
    s.fixed.beta = 1.0;
    CHECK_THROWS_AS((void)run_sweep(s), std::invalid_argument);

    s = sweep(Observable::U, Axis::Beta, {1.0, 2.0});
    CHECK_THROWS_AS((void)run_sweep(s), std::invalid_argument);  // alpha missing

    s = sweep(Observable::Us, Axis::Beta, {1.0, 2.0});
    s.fixed.alpha = 0.3;
    s.method = Method::Sum;
    CHECK_THROWS_AS((void)run_sweep(s), std::invalid_argument);

    s = sweep(Observable::Energy, Axis::Beta, {1.0, 2.0});
    s.fixed.alpha = 0.3;
    s.fixed.n = 1;
    CHECK_THROWS_AS((void)run_sweep(s), std::invalid_argument);

    s = sweep(Observable::Z, Axis::Beta, {});
    s.fixed.alpha = 0.3;
    CHECK_THROWS_AS((void)run_sweep(s), std::invalid_argument);
}

TEST_CASE("singular limit becomes a null row") {
    auto s = sweep(Observable::Z, Axis::Alpha, {0.0, 0.3});
    s.fixed.beta = 1.0;
    s.method = Method::Closed;
    const auto t = run_sweep(s);
    REQUIRE(t.size() == 2);
    CHECK_FALSE(t[0].y.has_value());
    CHECK_FALSE(t[0].warning.empty());
    CHECK(t[1].y.has_value());
    CHECK(t[1].warning.empty());

    const std::string text = csv(t);
    std::istringstream in(text);
    std::string header;
    std::string first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "curve,x,y,warning");
    CHECK(first.rfind("Z,0,,", 0) == 0);

    std::ostringstream js;
    write_json(js, t);
    const auto parsed = nlohmann::json::parse(js.str());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["y"].is_null());
    CHECK(parsed[1]["y"].get<double>() == *t[1].y);
    CHECK(parsed[1]["curve"] == "Z");
}

TEST_CASE("methods route to their paths") {
    const auto c = coefficients(OscillatorParams::natural(0.3));
    const Beta b{2.0};
    auto s = sweep(Observable::Z, Axis::Beta, {2.0, 3.0});
    s.fixed.alpha = 0.3;
    s.method = Method::Quad01;
    CHECK(*run_sweep(s)[0].y == partition_quadrature(c, b, QuadratureRange::Unit01));
    s.method = Method::Closed;
    CHECK(*run_sweep(s)[0].y == partition_closed(c, b));
    s.quantity = Observable::U;
    s.transcription = Transcription::Corrected;
    CHECK(*run_sweep(s)[0].y == mean_energy_closed(c, b, Transcription::Corrected));
    s.method = Method::Engine;
    CHECK(*run_sweep(s)[0].y == thermo(c, b, ThermoMethod::ClosedForm).U);
}

TEST_CASE("SI units rescale the natural results") {
    const double m0 = 9.1093837015e-31;
    const double omega = 1e14;
    const UnitSystem si = UnitSystem::si(m0, omega);
    CHECK(si.hbar == kHbarSI);
    CHECK(si.kB == kBoltzmannSI);
    CHECK_THROWS_AS((void)UnitSystem::si(0.0, omega), std::invalid_argument);

    const double e = kHbarSI * omega;
    const double alpha_nat = 0.3;
    const double alpha = alpha_nat * m0 * omega / kHbarSI;
    PointSpec p;
    p.alpha = alpha;
    p.beta = 2.0 / e;
    p.units = si;
    const auto values = evaluate_point(p);
    PointSpec nat;
    nat.alpha = alpha_nat;
    nat.beta = 2.0;
    const auto reference = evaluate_point(nat);

    auto get = [](const auto& kv, const std::string& key) {
        for (const auto& [k, v] : kv) {
            if (k == key) return std::stod(v);
        }
        FAIL("missing key " << key);
        return 0.0;
    };
    CHECK(get(values, "Z") == doctest::Approx(get(reference, "Z")).epsilon(1e-12));
    CHECK(get(values, "U") == doctest::Approx(e * get(reference, "U")).epsilon(1e-12));
    CHECK(get(values, "F") == doctest::Approx(e * get(reference, "F")).epsilon(1e-12));
    CHECK(get(values, "S") == doctest::Approx(kBoltzmannSI * get(reference, "S")).epsilon(1e-12));
    CHECK(get(values, "C") == doctest::Approx(kBoltzmannSI * get(reference, "C")).epsilon(1e-9));

    // The SI spectrum reproduces the level formula in physical constants.
    auto s = sweep(Observable::Energy, Axis::N, {0.0, 3.0});
    s.fixed.alpha = alpha;
    s.units = si;
    OscillatorParams phys{m0, omega, kHbarSI, alpha, kBoltzmannSI};
    const auto t = run_sweep(s);
    // alpha is outside [0, 1) in 1/m^2, so evaluate the closed level formula by hand.
    const double root = std::sqrt(1.0 + alpha * alpha * kHbarSI * kHbarSI / (4 * m0 * m0 * omega * omega));
    const double e3 = kHbarSI * omega * 3.5 * root + alpha * kHbarSI * kHbarSI / (2 * m0) * (9 + 6 + 0.5);
    CHECK(*t[1].y == doctest::Approx(e3).epsilon(1e-13));
    (void)phys;
}

TEST_CASE("point evaluation") {
    PointSpec p;
    p.alpha = 0.3;
    p.beta = 2.0;
    const auto kv = evaluate_point(p);
    std::vector<std::string> keys;
    for (const auto& [k, v] : kv) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"units", "alpha", "beta", "method", "Z", "U", "C", "S", "F"});

    p.q = 0.5;
    p.method = Method::Closed;
    keys.clear();
    for (const auto& [k, v] : evaluate_point(p)) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"units", "alpha", "beta", "q", "method", "transcription", "Zs", "Us",
                                           "Ss", "Fs", "Cs"});
    p.method = Method::Quad01;
    CHECK_THROWS_AS((void)evaluate_point(p), std::invalid_argument);
}

TEST_CASE("figure presets") {
    const auto& ids = figure_ids();
    CHECK(ids.size() == 22);
    for (int i = 1; i <= 10; ++i) {
        for (const char* panel : {"a", "b"}) {
            const std::string id = "Fig" + std::to_string(i) + panel;
            CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
        }
    }
    CHECK_THROWS_AS((void)figure_preset("Fig11a"), std::invalid_argument);

    const auto f1a = figure_preset("Fig1a");
    REQUIRE(f1a.curves.size() == 3);
    CHECK(f1a.curves[0].spec.fixed.alpha == 0.1);
    CHECK(f1a.curves[2].spec.fixed.alpha == 0.9);
    CHECK(f1a.curves[0].spec.grid == linspace(0, 10, 11));

    const auto f2b = figure_preset("Fig2b");
    REQUIRE(f2b.curves.size() == 3);
    CHECK(f2b.curves[1].spec.fixed.beta == 5.0);
    CHECK(f2b.curves[0].spec.grid.front() == 0.02);
    CHECK(f2b.curves[0].spec.grid.back() == 0.95);

    const auto f10b = figure_preset("Fig10b");
    CHECK(f10b.curves[0].spec.quantity == Observable::Cs);
    CHECK(f10b.curves[2].spec.fixed.beta == 1.5);
    CHECK_FALSE(f10b.curves[0].expected.has_value());

    for (const auto& id : ids) {
        const auto preset = figure_preset(id);
        const auto table = run_figure(preset);
        const auto failures = check_figure(preset, table);
        CHECK_MESSAGE(failures.empty(), id, ": ", failures.empty() ? "" : failures.front());
        CHECK(csv(table) == csv(run_figure(figure_preset(id))));
        std::set<std::string> labels;
        for (const auto& row : table) labels.insert(row.curve);
        CHECK(labels.size() == preset.curves.size());
    }
}

TEST_CASE("figure checks catch violations") {
    auto preset = figure_preset("Fig2a");
    auto table = run_figure(preset);
    std::swap(table[3].y, table[4].y);
    CHECK(check_figure(preset, table).size() == 1);
    table = run_figure(preset);
    table[0].y.reset();
    CHECK(check_figure(preset, table).size() == 1);
    table.pop_back();
    CHECK(check_figure(preset, table).size() == 2);
}
