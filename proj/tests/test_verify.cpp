#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "oracles.hpp"
#include "pdmosc/verify.hpp"

using namespace pdmosc;

namespace {

const std::vector<DiscrepancyReport>& full_audit() {
    static const std::vector<DiscrepancyReport> reports = audit_grid(default_audit_grid());
    return reports;
}

const DiscrepancyReport* find(const std::vector<DiscrepancyReport>& reports, Quantity quantity, double alpha,
                              double beta, Transcription t) {
    for (const auto& r : reports) {
        if (r.quantity == quantity && r.alpha == alpha && r.beta == beta && r.transcription == t) return &r;
    }
    return nullptr;
}

std::vector<CurvePoint> curve(std::initializer_list<std::pair<double, double>> pts) {
    std::vector<CurvePoint> out;
    for (auto [x, y] : pts) out.push_back({x, y});
    return out;
}

}  // namespace

TEST_CASE("relative difference and classification") {
    CHECK(relative_difference(1.5, 1.0) == 0.5);
    CHECK(relative_difference(1e-310, 0.0) == doctest::Approx(1e-10));
    CHECK(classify(1.0 + 1e-7, 1.0) == Classification::Agree);
    CHECK(classify(1.0 + 1e-6, 1.0) == Classification::Agree);
    CHECK(classify(1.0 + 1e-3, 1.0) == Classification::Close);
    CHECK(classify(1.1, 1.0) == Classification::Disagree);
    CHECK(classify(-1.0, 1.0) == Classification::Disagree);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(classify(nan, 1.0) == Classification::PrintedNonFinite);
    CHECK(classify(inf, 1.0) == Classification::PrintedNonFinite);
    CHECK(classify(1.0, nan) == Classification::OracleNonFinite);
    CHECK(classify(nan, inf) == Classification::OracleNonFinite);
}

TEST_CASE("names round-trip") {
    for (Quantity q : kAllQuantities) CHECK(parse_quantity(to_string(q)) == q);
    CHECK_FALSE(parse_quantity("E").has_value());
    CHECK(parse_transcription("verbatim") == Transcription::Verbatim);
    CHECK(parse_transcription("corrected") == Transcription::Corrected);
    CHECK_FALSE(parse_transcription("fixed").has_value());
    CHECK(is_superstat(Quantity::Cs));
    CHECK_FALSE(is_superstat(Quantity::F));
}

TEST_CASE("float formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-std::nan("")) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("trend checks") {
    CHECK(trend_check(curve({{1, 1}, {2, 2}, {3, 3}}), Trend::Increasing).pass);
    const auto dec = trend_check(curve({{1, 3}, {2, 2}, {3, 2.5}}), Trend::Decreasing);
    CHECK_FALSE(dec.pass);
    REQUIRE(dec.first_violation.has_value());
    CHECK(*dec.first_violation == 2);

    std::vector<CurvePoint> levels;
    const auto c = coefficients(OscillatorParams::natural(0.9));
    for (int n = 0; n <= 10; ++n) levels.push_back({double(n), c.energy(n)});
    CHECK(trend_check(levels, Trend::Increasing).pass);

    CHECK_FALSE(trend_check(curve({{1, 2}, {2, 2}, {3, 3}}), Trend::Increasing, 0.0).pass);
    CHECK(trend_check(curve({{1, 2}, {2, 2 - 1e-15}, {3, 3}}), Trend::Increasing).pass);
    CHECK(trend_check(curve({{1, 0}, {2, 1}, {3, -1e-15}}), Trend::NonNegative).pass);
    const auto neg = trend_check(curve({{1, 0}, {2, -1}, {3, 1}}), Trend::NonNegative);
    CHECK_FALSE(neg.pass);
    CHECK(*neg.first_violation == 1);
    CHECK_FALSE(trend_check(curve({{1, 1}, {2, std::nan("")}, {3, 3}}), Trend::Increasing).pass);

    CHECK_THROWS_AS((void)trend_check(curve({{1, 1}, {2, 2}}), Trend::Increasing), std::invalid_argument);
    CHECK_THROWS_AS((void)trend_check(curve({{1, 1}, {1, 2}, {3, 3}}), Trend::Increasing),
                    std::invalid_argument);
}

TEST_CASE("grid validation") {
    AuditGrid g = default_audit_grid();
    CHECK(g.params.size() == 3);
    CHECK(g.betas.size() == 25);
    CHECK(g.betas.front() == doctest::Approx(0.1));
    CHECK(g.betas.back() == doctest::Approx(10.0));
    CHECK(g.qs.size() == 5);

    AuditGrid empty = g;
    empty.betas.clear();
    CHECK_THROWS_AS((void)audit_grid(empty), std::invalid_argument);
    AuditGrid flat = g;
    flat.params = {OscillatorParams::natural(0.0)};
    CHECK_THROWS_AS((void)audit_grid(flat), std::invalid_argument);
    CHECK_THROWS_AS((void)physical_audit(flat), std::invalid_argument);
}

TEST_CASE("audit coverage and ordering") {
    const auto& reports = full_audit();
    // 5 canonical quantities x 3 alpha x 25 beta x 2, plus 5 superstat x 3 x 25 x 5 x 2
    CHECK(reports.size() == 5 * 3 * 25 * 2 + 5 * 3 * 25 * 5 * 2);

    std::set<Quantity> seen;
    for (const auto& r : reports) {
        seen.insert(r.quantity);
        CHECK(r.q.has_value() == is_superstat(r.quantity));
        CHECK(r.classification != Classification::OracleNonFinite);
    }
    CHECK(seen.size() == std::size(kAllQuantities));

    // Sorted by quantity, then grid indices, transcription fastest.
    for (std::size_t i = 1; i < reports.size(); ++i) {
        CHECK(static_cast<int>(reports[i - 1].quantity) <= static_cast<int>(reports[i].quantity));
    }
    CHECK(reports[0].transcription == Transcription::Verbatim);
    CHECK(reports[1].transcription == Transcription::Corrected);
    CHECK(reports[0].beta == reports[1].beta);
    CHECK(reports[2].beta > reports[0].beta);
}

TEST_CASE("audit entries with provable outcomes") {
    const auto& reports = full_audit();
    for (const auto& r : reports) {
        if (r.quantity == Quantity::F || r.quantity == Quantity::Z) {
            CHECK(r.classification == Classification::Agree);
        }
    }
    const auto* z = find(reports, Quantity::Z, 0.1, oracle::beta_grid()[12], Transcription::Verbatim);
    REQUIRE(z != nullptr);
    CHECK(z->beta == doctest::Approx(1.0));
    // The oracle column is the unit-interval integral.
    const auto c = coefficients(OscillatorParams::natural(0.1));
    CHECK(std::abs(z->oracle - oracle::unit_interval_closed(c.a, c.b, z->beta)) < 1e-12 * z->oracle);

    // Corrected readings reproduce their oracles wherever the oracle is trusted.
    for (const auto& r : reports) {
        if (r.transcription != Transcription::Corrected) continue;
        if (r.quantity == Quantity::C || r.quantity == Quantity::Cs) continue;
        if (r.quantity == Quantity::S) {
            // S passes through zero near alpha = 0.1, beta = 0.1; the engine's
            // first derivative is good to about 1e-9 absolute there.
            CHECK(std::abs(r.printed - r.oracle) < 1e-8);
            continue;
        }
        CHECK_MESSAGE(r.classification == Classification::Agree, to_string(r.quantity), " alpha=", r.alpha,
                      " beta=", r.beta, " rel=", r.rel_diff);
    }
}

TEST_CASE("audit is deterministic and serialises to the documented format") {
    AuditGrid g = default_audit_grid();
    g.betas = {0.5, 2.0};
    g.qs = {0.0, 0.5};
    const std::string a = report_csv(audit_grid(g));
    const std::string b = report_csv(audit_grid(g));
    CHECK(a == b);

    std::istringstream in(a);
    std::string line;
    std::getline(in, line);
    CHECK(line == "quantity,alpha,beta,q,transcription,printed,oracle,rel_diff,classification");
    std::getline(in, line);
    CHECK(line.rfind("Z,0.10000000000000001,0.5,,verbatim,", 0) == 0);
    std::size_t rows = 0;
    bool saw_superstat = false;
    do {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
        if (line.rfind("Zs,", 0) == 0) {
            saw_superstat = true;
            const auto third = line.find(',', line.find(',', line.find(',') + 1) + 1);
            CHECK(line[third + 1] != ',');
        }
    } while (std::getline(in, line));
    CHECK(rows == 5 * 3 * 2 * 2 + 5 * 3 * 2 * 2 * 2);
    CHECK(saw_superstat);
}

TEST_CASE("physical audit compares against the level sum") {
    AuditGrid g = default_audit_grid();
    g.betas = {0.3, 3.0};
    const auto reports = physical_audit(g);
    CHECK(reports.size() == 5 * 3 * 2 * 2);
    for (const auto& r : reports) {
        CHECK_FALSE(r.q.has_value());
        CHECK(std::isfinite(r.oracle));
        if (r.quantity == Quantity::Z) {
            const auto c = coefficients(OscillatorParams::natural(r.alpha));
            CHECK(std::abs(r.oracle - oracle::level_moments(c.a, c.b, r.beta).Z) < 1e-12 * r.oracle);
            // The unit-interval integral is not the level sum.
            CHECK(r.classification != Classification::Agree);
        }
    }
}
