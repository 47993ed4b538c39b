#include "pdmosc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pdmosc/superstat.hpp"

namespace pdmosc {

namespace {

constexpr Transcription kTranscriptions[] = {Transcription::Verbatim, Transcription::Corrected};

// Value of a numerical route, or NaN if it fails.
double guarded(const std::function<double()>& f) {
    try {
        return f();
    } catch (const NumericalError&) {
        return std::nan("");
    }
}

DiscrepancyReport make_report(Quantity quantity, double alpha, double beta, std::optional<double> q,
                              Transcription t, double printed, double oracle) {
    DiscrepancyReport r;
    r.quantity = quantity;
    r.alpha = alpha;
    r.beta = beta;
    r.q = q;
    r.transcription = t;
    r.printed = printed;
    r.oracle = oracle;
    r.rel_diff = relative_difference(printed, oracle);
    r.classification = classify(printed, oracle);
    return r;
}

void validate_grid(const AuditGrid& grid) {
    if (grid.params.empty() || grid.betas.empty() || grid.qs.empty()) {
        throw std::invalid_argument("audit grid must be non-empty in every direction");
    }
    for (const auto& p : grid.params) {
        if (coefficients(p, grid.convention).b <= kDefaultBMin) {
            throw std::invalid_argument("alpha = " + format_double(p.alpha) +
                                        " puts b at or below the closed-form guard");
        }
    }
    for (double b : grid.betas) (void)Beta{b};
    for (double q : grid.qs) (void)DeformationQ{q};
}

struct ThermoValues {
    double Z, U, C, S, F;
};

ThermoValues values_of(const ThermoPoint& p) { return {p.Z, p.U, p.C, p.S, p.F}; }

ThermoValues guarded_thermo(const std::function<ThermoPoint()>& f) {
    try {
        return values_of(f());
    } catch (const NumericalError&) {
        const double nan = std::nan("");
        return {nan, nan, nan, nan, nan};
    }
}

double pick(const ThermoValues& v, Quantity q) {
    switch (q) {
        case Quantity::Z: return v.Z;
        case Quantity::U: return v.U;
        case Quantity::C: return v.C;
        case Quantity::S: return v.S;
        default: return v.F;
    }
}

// Printed value of a canonical quantity under a transcription.
double printed_thermo(Quantity q, const SpectrumCoefficients& c, Beta beta, double kB, Transcription t) {
    switch (q) {
        case Quantity::Z: return guarded([&] { return partition_closed(c, beta); });
        case Quantity::U: return guarded([&] { return mean_energy_closed(c, beta, t); });
        case Quantity::C: return guarded([&] { return heat_capacity_closed(c, beta, kB, t); });
        case Quantity::S: return guarded([&] { return entropy_closed(c, beta, kB, t); });
        default: return guarded([&] { return free_energy_closed(c, beta); });
    }
}

std::vector<DiscrepancyReport> canonical_audit(const AuditGrid& grid, const numerics::Tolerance& tol,
                                               bool physical) {
    validate_grid(grid);
    constexpr Quantity canonical[] = {Quantity::Z, Quantity::U, Quantity::C, Quantity::S, Quantity::F};

    // Oracle values per (alpha, beta), computed once.
    const std::size_t nb = grid.betas.size();
    std::vector<ThermoValues> oracle(grid.params.size() * nb);
    for (std::size_t i = 0; i < grid.params.size(); ++i) {
        const auto c = coefficients(grid.params[i], grid.convention);
        const double kB = grid.params[i].kB;
        for (std::size_t j = 0; j < nb; ++j) {
            const Beta beta{grid.betas[j]};
            ThermoValues v = guarded_thermo([&] {
                return thermo(c, beta, physical ? ThermoMethod::Sum : ThermoMethod::ClosedForm, kB, tol);
            });
            if (!physical) {
                v.Z = guarded([&] { return partition_quadrature(c, beta, QuadratureRange::Unit01, tol); });
            }
            oracle[i * nb + j] = v;
        }
    }

    std::vector<DiscrepancyReport> out;
    for (Quantity q : canonical) {
        for (std::size_t i = 0; i < grid.params.size(); ++i) {
            const auto& p = grid.params[i];
            const auto c = coefficients(p, grid.convention);
            for (std::size_t j = 0; j < nb; ++j) {
                const Beta beta{grid.betas[j]};
                const double o = pick(oracle[i * nb + j], q);
                for (Transcription t : kTranscriptions) {
                    out.push_back(make_report(q, p.alpha, beta.value(), std::nullopt, t,
                                              printed_thermo(q, c, beta, p.kB, t), o));
                }
            }
        }
    }
    return out;
}

}  // namespace

bool is_superstat(Quantity q) noexcept {
    switch (q) {
        case Quantity::Zs:
        case Quantity::Us:
        case Quantity::Ss:
        case Quantity::Fs:
        case Quantity::Cs: return true;
        default: return false;
    }
}

std::string_view to_string(Quantity q) noexcept {
    switch (q) {
        case Quantity::Z: return "Z";
        case Quantity::U: return "U";
        case Quantity::C: return "C";
        case Quantity::S: return "S";
        case Quantity::F: return "F";
        case Quantity::Zs: return "Zs";
        case Quantity::Us: return "Us";
        case Quantity::Ss: return "Ss";
        case Quantity::Fs: return "Fs";
        case Quantity::Cs: return "Cs";
    }
    return "?";
}

std::optional<Quantity> parse_quantity(std::string_view name) noexcept {
    for (Quantity q : kAllQuantities) {
        if (to_string(q) == name) return q;
    }
    return std::nullopt;
}

std::string_view to_string(Transcription t) noexcept {
    return t == Transcription::Verbatim ? "verbatim" : "corrected";
}

std::optional<Transcription> parse_transcription(std::string_view name) noexcept {
    if (name == "verbatim") return Transcription::Verbatim;
    if (name == "corrected") return Transcription::Corrected;
    return std::nullopt;
}

std::string_view to_string(Classification c) noexcept {
    switch (c) {
        case Classification::Agree: return "Agree";
        case Classification::Close: return "Close";
        case Classification::Disagree: return "Disagree";
        case Classification::PrintedNonFinite: return "PrintedNonFinite";
        case Classification::OracleNonFinite: return "OracleNonFinite";
    }
    return "?";
}

double relative_difference(double printed, double oracle) noexcept {
    return std::abs(printed - oracle) / std::max(std::abs(oracle), 1e-300);
}

Classification classify(double printed, double oracle) noexcept {
    if (!std::isfinite(oracle)) return Classification::OracleNonFinite;
    if (!std::isfinite(printed)) return Classification::PrintedNonFinite;
    const double d = relative_difference(printed, oracle);
    if (d <= 1e-6) return Classification::Agree;
    if (d <= 1e-2) return Classification::Close;
    return Classification::Disagree;
}

AuditGrid default_audit_grid() {
    AuditGrid g;
    for (double alpha : {0.1, 0.3, 0.9}) g.params.push_back(OscillatorParams::natural(alpha));
    for (int i = 0; i < 25; ++i) g.betas.push_back(0.1 * std::pow(100.0, i / 24.0));
    g.qs = {0.0, 0.25, 0.5, 0.75, 1.0};
    return g;
}

std::vector<DiscrepancyReport> audit_grid(const AuditGrid& grid, const numerics::Tolerance& tol) {
    std::vector<DiscrepancyReport> out = canonical_audit(grid, tol, false);

    constexpr Quantity super[] = {Quantity::Zs, Quantity::Us, Quantity::Ss, Quantity::Fs, Quantity::Cs};
    const std::size_t nb = grid.betas.size();
    const std::size_t nq = grid.qs.size();

    struct SuperValues {
        double Zs, Us, Ss, Fs, Cs;
    };
    auto pick_super = [](const SuperValues& v, Quantity q) {
        switch (q) {
            case Quantity::Zs: return v.Zs;
            case Quantity::Us: return v.Us;
            case Quantity::Ss: return v.Ss;
            case Quantity::Fs: return v.Fs;
            default: return v.Cs;
        }
    };

    std::vector<SuperValues> oracle(grid.params.size() * nb * nq);
    for (std::size_t i = 0; i < grid.params.size(); ++i) {
        const auto c = coefficients(grid.params[i], grid.convention);
        const double kB = grid.params[i].kB;
        for (std::size_t j = 0; j < nb; ++j) {
            for (std::size_t k = 0; k < nq; ++k) {
                const Beta beta{grid.betas[j]};
                const DeformationQ q{grid.qs[k]};
                SuperValues v{};
                try {
                    const auto p = superstat_thermo(c, beta, q, kB, SuperstatMethod::DerivativeEngine,
                                                    Transcription::Verbatim, tol);
                    v = {p.Zs, p.Us, p.Ss, p.Fs, p.Cs};
                } catch (const NumericalError&) {
                    const double nan = std::nan("");
                    v = {nan, nan, nan, nan, nan};
                }
                oracle[(i * nb + j) * nq + k] = v;
            }
        }
    }

    for (Quantity quantity : super) {
        for (std::size_t i = 0; i < grid.params.size(); ++i) {
            const auto& p = grid.params[i];
            const auto c = coefficients(p, grid.convention);
            for (std::size_t j = 0; j < nb; ++j) {
                for (std::size_t k = 0; k < nq; ++k) {
                    const Beta beta{grid.betas[j]};
                    const DeformationQ q{grid.qs[k]};
                    const double o = pick_super(oracle[(i * nb + j) * nq + k], quantity);
                    for (Transcription t : kTranscriptions) {
                        const double printed = guarded([&]() -> double {
                            switch (quantity) {
                                case Quantity::Zs: return superstat_partition_closed(c, beta, q, t);
                                case Quantity::Us: return superstat_mean_energy_closed(c, beta, q, t);
                                case Quantity::Ss: return superstat_entropy_closed(c, beta, q, p.kB, t);
                                case Quantity::Fs: return superstat_free_energy_closed(c, beta, q, t);
                                default: return superstat_heat_capacity_closed(c, beta, q, p.kB, t);
                            }
                        });
                        out.push_back(make_report(quantity, p.alpha, beta.value(), q.value(), t, printed, o));
                    }
                }
            }
        }
    }
    return out;
}

std::vector<DiscrepancyReport> physical_audit(const AuditGrid& grid, const numerics::Tolerance& tol) {
    return canonical_audit(grid, tol, true);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_report_csv(std::ostream& out, const std::vector<DiscrepancyReport>& reports) {
    out << "quantity,alpha,beta,q,transcription,printed,oracle,rel_diff,classification\n";
    for (const auto& r : reports) {
        out << to_string(r.quantity) << ',' << format_double(r.alpha) << ',' << format_double(r.beta) << ','
            << (r.q ? format_double(*r.q) : std::string{}) << ',' << to_string(r.transcription) << ','
            << format_double(r.printed) << ',' << format_double(r.oracle) << ',' << format_double(r.rel_diff)
            << ',' << to_string(r.classification) << '\n';
    }
}

std::string report_csv(const std::vector<DiscrepancyReport>& reports) {
    std::ostringstream s;
    write_report_csv(s, reports);
    return s.str();
}

TrendResult trend_check(const std::vector<CurvePoint>& curve, Trend expected, double rel_slack) {
    if (curve.size() < 3) throw std::invalid_argument("trend_check needs at least 3 points");
    if (!(rel_slack >= 0.0)) throw std::invalid_argument("rel_slack must be non-negative");
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (!(curve[i].x > curve[i - 1].x)) throw std::invalid_argument("curve x must be strictly increasing");
    }
    TrendResult r;
    auto fail = [&r](std::size_t i) {
        r.pass = false;
        r.first_violation = i;
        return r;
    };
    if (expected == Trend::NonNegative) {
        double scale = 0.0;
        for (const auto& p : curve) scale = std::max(scale, std::abs(p.y));
        for (std::size_t i = 0; i < curve.size(); ++i) {
            if (!(curve[i].y >= -rel_slack * scale)) return fail(i);
        }
        return r;
    }
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double prev = curve[i - 1].y;
        const double cur = curve[i].y;
        const double slack = rel_slack * std::max(std::abs(cur), std::abs(prev));
        const bool ok = expected == Trend::Increasing ? cur > prev - slack : cur < prev + slack;
        if (!ok) return fail(i);
    }
    return r;
}

}  // namespace pdmosc
