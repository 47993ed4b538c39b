#include "pdmosc/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pdmosc {

namespace {

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

using numerics::DerivativeOrder;
using numerics::Tolerance;

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.0 / std::numbers::inv_sqrtpi;

// Below this first erf argument the closed form uses the erf difference
// directly; above it, the erfcx form avoids the overflowing prefactor.
constexpr double kErfcxSwitch = 2.0;

// Characteristic scale for the second derivative, in units of beta. The
// [0, 1] closed form has a variance far below ln Z itself at small beta, so
// the roundoff-balanced step for scale = beta leaves ~1e-3 relative noise in
// C; the wider step keeps the extrapolated truncation error below 1e-9.
constexpr double kCurvatureScale = 16.0;

// E(n) - E(0) = n (a + b (n + 2)).
double excitation(const SpectrumCoefficients& c, double n) noexcept {
    return n * (c.a + c.b * (n + 2.0));
}

void require_regular(const SpectrumCoefficients& c, double b_min) {
    c.validate();
    if (c.b <= b_min) {
        throw SingularLimit("closed form is singular for b <= " + short_number(b_min) +
                            " (b = " + short_number(c.b) + "); use the level sum");
    }
}

// ln Z_closed + beta E0.
double shifted_log_closed(const SpectrumCoefficients& c, double beta, double b_min) {
    require_regular(c, b_min);
    const double a = c.a;
    const double b = c.b;
    const double r = std::sqrt(beta / b);
    const double u1 = 0.5 * (a + 2.0 * b) * r;
    const double u2 = 0.5 * (a + 4.0 * b) * r;
    const double log_pref = std::log(kSqrtPi / (2.0 * std::sqrt(b * beta)));
    if (u1 < kErfcxSwitch) {
        return u1 * u1 + log_pref + std::log(numerics::erf_diff(u1, u2));
    }
    // exp(u1^2) (erfc(u1) - erfc(u2)), with u2^2 - u1^2 = beta (a + 3b).
    const double scaled =
        numerics::erfcx(u1) - std::exp(-beta * (a + 3.0 * b)) * numerics::erfcx(u2);
    return log_pref + std::log(scaled);
}

// ln integral of exp(-beta (E(n) - E0)).
double shifted_log_quadrature(const SpectrumCoefficients& c, double beta, QuadratureRange range,
                              const Tolerance& tol) {
    c.validate();
    auto f = [&c, beta](double n) { return std::exp(-beta * excitation(c, n)); };
    const auto r = range == QuadratureRange::Unit01 ? numerics::integrate_finite(f, 0.0, 1.0, tol)
                                                    : numerics::integrate_semi_infinite(f, 0.0, tol);
    return std::log(r.value);
}

struct ErfTerms {
    double a, b, beta;
    double u1, u2;
    double E1, E2;  // erf(u1), erf(u2)
    double D;       // erf(u2) - erf(u1)
    double Ee;      // exp((a + 3b) beta)
    double P;       // a^2 beta + 2 b^2 beta + 2 b (-1 + a beta)
    double G;       // (a + 2b)^2 beta / (4b)
    double X3;      // 3 a beta + a^2 beta / (2b) + 5 b beta
    double X5;      // 5 a beta + 3 a^2 beta / (4b) + 9 b beta
};

ErfTerms erf_terms(const SpectrumCoefficients& c, double beta, double b_min) {
    require_regular(c, b_min);
    ErfTerms t{};
    t.a = c.a;
    t.b = c.b;
    t.beta = beta;
    const double a = c.a;
    const double b = c.b;
    const double r = std::sqrt(beta / b);
    t.u1 = 0.5 * (a + 2.0 * b) * r;
    t.u2 = 0.5 * (a + 4.0 * b) * r;
    t.E1 = numerics::erf(t.u1);
    t.E2 = numerics::erf(t.u2);
    t.D = numerics::erf_diff(t.u1, t.u2);
    t.Ee = std::exp((a + 3.0 * b) * beta);
    t.P = a * a * beta + 2.0 * b * b * beta + 2.0 * b * (-1.0 + a * beta);
    t.G = (a + 2.0 * b) * (a + 2.0 * b) * beta / (4.0 * b);
    t.X3 = 3.0 * a * beta + a * a * beta / (2.0 * b) + 5.0 * b * beta;
    t.X5 = 5.0 * a * beta + 3.0 * a * a * beta / (4.0 * b) + 9.0 * b * beta;
    return t;
}

}  // namespace

Beta::Beta(double value) : value_(value) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw std::invalid_argument("beta must be positive and finite");
    }
}

Tolerance engine_tolerance() { return Tolerance{1e-16, 0.0, 2000000}; }

double excited_weight(const SpectrumCoefficients& c, Beta beta, const Tolerance& tol) {
    c.validate();
    const double bt = beta.value();
    const double geometric_ratio = -std::expm1(-bt * c.a);  // 1 - exp(-beta a)
    const double s = std::sqrt(bt * c.b);

    auto term = [&](std::size_t k) { return std::exp(-bt * excitation(c, static_cast<double>(k + 1))); };
    // Bound on the sum over n > N of the excited terms, N = k + 1.
    auto tail = [&](std::size_t k) {
        const double N = static_cast<double>(k + 1);
        double bound = std::exp(-bt * excitation(c, N + 1.0)) / geometric_ratio;
        if (c.b > 0.0) {
            // Terms decrease, so the tail is below the integral from N of the
            // Gaussian exp(-beta (b n^2 + (a + 2b) n)).
            const double arg = s * N + (c.a + 2.0 * c.b) * bt / (2.0 * s);
            const double gauss = std::exp(-bt * excitation(c, N)) * numerics::erfcx(arg) * kSqrtPi / (2.0 * s);
            bound = std::min(bound, gauss);
        }
        return bound;
    };
    return numerics::sum_decaying(term, tail, tol);
}

double log_partition_sum(const SpectrumCoefficients& c, Beta beta, const Tolerance& tol) {
    return -beta.value() * c.ground() + std::log1p(excited_weight(c, beta, tol));
}

double partition_sum(const SpectrumCoefficients& c, Beta beta, const Tolerance& tol) {
    return std::exp(log_partition_sum(c, beta, tol));
}

double log_partition_closed(const SpectrumCoefficients& c, Beta beta, double b_min) {
    return shifted_log_closed(c, beta.value(), b_min) - beta.value() * c.ground();
}

double partition_closed(const SpectrumCoefficients& c, Beta beta, double b_min) {
    return std::exp(log_partition_closed(c, beta, b_min));
}

double partition_quadrature(const SpectrumCoefficients& c, Beta beta, QuadratureRange range,
                            const Tolerance& tol) {
    c.validate();
    const double bt = beta.value();
    auto f = [&c, bt](double n) { return std::exp(-bt * c.energy(n)); };
    if (range == QuadratureRange::Unit01) return numerics::integrate_finite(f, 0.0, 1.0, tol).value;
    return numerics::integrate_semi_infinite(f, 0.0, tol).value;
}

double log_partition_quadrature(const SpectrumCoefficients& c, Beta beta, QuadratureRange range,
                                const Tolerance& tol) {
    return shifted_log_quadrature(c, beta.value(), range, tol) - beta.value() * c.ground();
}

ThermoPoint thermo_from_logZ(const LogPartitionFn& logZ, Beta beta, double kB) {
    return thermo_from_logZ(logZ, 0.0, beta, kB);
}

ThermoPoint thermo_from_logZ(const LogPartitionFn& shifted_logZ, double energy_shift, Beta beta,
                             double kB) {
    if (!(std::isfinite(kB) && kB > 0.0)) throw std::invalid_argument("kB must be positive");
    const double bt = beta.value();
    const double g = shifted_logZ(bt);
    const double g1 = numerics::derivative(shifted_logZ, bt, DerivativeOrder::First, bt, true);
    const double g2 = numerics::derivative(shifted_logZ, bt, DerivativeOrder::Second, kCurvatureScale * bt, true);
    ThermoPoint p;
    p.beta = beta;
    p.Z = std::exp(g - bt * energy_shift);
    p.U = energy_shift - g1;
    p.C = kB * bt * bt * g2;
    p.S = kB * (g - bt * g1);
    p.F = energy_shift - g / bt;
    return p;
}

ThermoPoint thermo(const SpectrumCoefficients& c, Beta beta, ThermoMethod method, double kB,
                   const Tolerance& tol) {
    c.validate();
    LogPartitionFn g;
    switch (method) {
        case ThermoMethod::Sum:
            g = [&](double bt) { return std::log1p(excited_weight(c, Beta{bt}, tol)); };
            break;
        case ThermoMethod::ClosedForm:
            require_regular(c, kDefaultBMin);
            g = [&](double bt) { return shifted_log_closed(c, bt, kDefaultBMin); };
            break;
        case ThermoMethod::Quadrature01:
            g = [&](double bt) { return shifted_log_quadrature(c, bt, QuadratureRange::Unit01, tol); };
            break;
        case ThermoMethod::QuadratureInf:
            g = [&](double bt) {
                return shifted_log_quadrature(c, bt, QuadratureRange::SemiInfinite, tol);
            };
            break;
    }
    ThermoPoint p = thermo_from_logZ(g, c.ground(), beta, kB);
    p.method = method;
    return p;
}

double mean_energy_closed(const SpectrumCoefficients& c, Beta beta, Transcription tr, double b_min) {
    const ErfTerms t = erf_terms(c, beta.value(), b_min);
    const double a = t.a;
    const double b = t.b;
    const double bt = t.beta;
    const bool fixed = tr == Transcription::Corrected;

    const double first = fixed ? 3.0 * a * bt : 3.0 * bt;
    const double X = first + a * a * bt / (2.0 * b) + 5.0 * b * bt;
    const double Y = fixed ? t.G : (a * a + 2.0 * b) * (a * a + 2.0 * b) * bt / (4.0 * b);

    const double den = 4.0 * b * bt * kSqrtPi * t.D;
    const double n1 = std::exp(-X) * 2.0 * std::sqrt(b * bt) * std::exp(Y) *
                      (2.0 * b * (-2.0 + t.Ee) + a * (-1.0 + t.Ee));
    const double n2 = std::exp(-X) * t.P * std::exp(t.X3) * kSqrtPi * (-t.D);
    return (n1 + n2) / den;
}

double heat_capacity_closed(const SpectrumCoefficients& c, Beta beta, double kB, Transcription tr,
                            double b_min) {
    const ErfTerms t = erf_terms(c, beta.value(), b_min);
    const double a = t.a;
    const double b = t.b;
    const double bt = t.beta;
    const double Ee = t.Ee;
    const double sbb = std::sqrt(b * bt);
    const double e3 = std::exp(t.X3);
    const double e5 = std::exp(t.X5);

    const double poly_head = 6.0 * a * a * b * bt * (-2.0 + Ee) + a * a * a * bt * (-1.0 + Ee) +
                             4.0 * b * b * (-2.0 + Ee + 2.0 * b * bt * (-8.0 + Ee));
    const double P1 = poly_head + 2.0 * a * b * (-1.0 + Ee + 6.0 * b * bt * (-4.0 + Ee));
    const double lead = a - a * Ee - 2.0 * b * (-2.0 + Ee);
    const double first = 2.0 * b * bt * std::sqrt(bt / b) * std::exp(t.G) * lead * lead;

    double bracket;
    if (tr == Transcription::Verbatim) {
        const double P2 = poly_head + 2.0 * a * b * (-1.0 + Ee) + 6.0 * b * bt * (-4.0 + Ee);
        bracket = first - 4.0 * b * sbb * e5 * kPi * t.E1 * t.E1 - bt * e3 * P1 * kSqrtPi * t.E2 -
                  4.0 * b * sbb * e5 * kPi * t.E2 * t.E2 + kSqrtPi * t.E1 * bt * e3 * P2 +
                  8.0 * b * sbb * e5 * kSqrtPi * t.E2;
    } else {
        // Cross term erf(u1) erf(u2) restored and the erf terms collected into
        // (erf(u1) - erf(u2)) = -D; the overall sign is flipped.
        bracket = -(first - 4.0 * b * sbb * e5 * kPi * t.D * t.D - kSqrtPi * bt * e3 * P1 * t.D);
    }
    const double value = bt * std::exp(-t.X5) * bracket / (8.0 * std::pow(b * bt, 1.5) * kPi * t.D * t.D);
    return kB * value;
}

double entropy_closed(const SpectrumCoefficients& c, Beta beta, double kB, Transcription tr,
                      double b_min) {
    const ErfTerms t = erf_terms(c, beta.value(), b_min);
    const double a = t.a;
    const double b = t.b;
    const double bt = t.beta;
    const double r = std::sqrt(bt / b);
    const double e3 = std::exp(t.X3);

    const double lead = 2.0 * bt * std::exp(t.G) * (a - a * t.Ee - 2.0 * b * (-2.0 + t.Ee));
    double inner;
    double den;
    if (tr == Transcription::Verbatim) {
        inner = lead - r * t.P * e3 * kSqrtPi * t.E1 + r * t.P * e3 * kSqrtPi * t.E2;
        den = 4.0 * bt * kPi * (-t.D);
    } else {
        inner = lead + r * t.P * e3 * kSqrtPi * t.D;
        den = 4.0 * bt * kSqrtPi * (-t.D);
    }
    const double log_z = log_partition_closed(c, beta, b_min);
    return kB * (r * std::exp(-t.X3) * inner / den + log_z);
}

double free_energy_closed(const SpectrumCoefficients& c, Beta beta, double b_min) {
    return -log_partition_closed(c, beta, b_min) / beta.value();
}

ThermoPoint thermo_closed(const SpectrumCoefficients& c, Beta beta, double kB, Transcription t,
                          double b_min) {
    ThermoPoint p;
    p.beta = beta;
    p.method = ThermoMethod::ClosedForm;
    p.Z = partition_closed(c, beta, b_min);
    p.U = mean_energy_closed(c, beta, t, b_min);
    p.C = heat_capacity_closed(c, beta, kB, t, b_min);
    p.S = entropy_closed(c, beta, kB, t, b_min);
    p.F = free_energy_closed(c, beta, b_min);
    return p;
}

}  // namespace pdmosc
