#include "pdmosc/superstat.hpp"

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

using numerics::Tolerance;

constexpr double kSqrtPi = 1.0 / std::numbers::inv_sqrtpi;

// A printed bracket of the form A + e^G sqrt(pi) (B - C erf(u1)), with the
// printed terms sorted by their e^G and erf factors.
struct Terms {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
};

struct Setup {
    double a, b, beta, q;
    double s;   // sqrt(b beta)
    double u1;  // (a + 2b) beta / (2 sqrt(b beta))
    double G;   // (a + 2b)^2 beta / (4b) = u1^2
};

Setup setup(const SpectrumCoefficients& c, double beta, double q, double b_min) {
    c.validate();
    if (c.b <= b_min) {
        throw SingularLimit("superstatistical closed form is singular for b <= " + short_number(b_min) +
                            " (b = " + short_number(c.b) + ")");
    }
    Setup st{};
    st.a = c.a;
    st.b = c.b;
    st.beta = beta;
    st.q = q;
    st.s = std::sqrt(c.b * beta);
    st.u1 = (c.a + 2.0 * c.b) * beta / (2.0 * st.s);
    st.G = (c.a + 2.0 * c.b) * (c.a + 2.0 * c.b) * beta / (4.0 * c.b);
    return st;
}

// As typeset: e^G and erf(u1) evaluated separately.
double literal(const Terms& t, const Setup& st) {
    return t.A + std::exp(st.G) * kSqrtPi * (t.B - t.C * numerics::erf(st.u1));
}

// For brackets whose e^G and e^G erf coefficients coincide (B = C):
// e^G (1 - erf(u1)) = erfcx(u1) since G = u1^2.
double collected(const Terms& t, const Setup& st) {
    return t.A + kSqrtPi * t.C * numerics::erfcx(st.u1);
}

// The bracket of the printed Z_s. sign_a3 is the sign of the 2 a^3 sqrt(b) beta
// term; erf_whole places erf on the whole trailing polynomial rather than on
// its last term only.
Terms zs_bracket(const Setup& st, double sign_a3, bool erf_whole) {
    const double a = st.a;
    const double b = st.b;
    const double bt = st.beta;
    const double q = st.q;
    const double sb = std::sqrt(b);
    const double sbt = std::sqrt(bt);
    const double K = 8.0 + (3.0 - 2.0 * a * bt + 2.0 * a * a * bt * bt) * q;
    const double rest = std::pow(a, 4) * bt * bt * q + 4.0 * std::pow(b, 4) * bt * bt * q +
                        4.0 * a * a * b * bt * (-1.0 + a * bt) * q + 8.0 * b * b * b * bt * (-1.0 + a * bt) * q;

    Terms t;
    t.A = sbt * (12.0 * a * std::pow(b, 1.5) + 24.0 * std::pow(b, 2.5) + sign_a3 * 2.0 * a * a * a * sb * bt) * q -
          4.0 * a * a * b * bt * st.s * q;
    t.B = sbt * std::pow(a, 4) * std::pow(bt, 1.5) * q - 4.0 * a * a * b * bt * (1.0 - a * bt) * q +
          4.0 * std::pow(b, 4) * bt * bt * q + 8.0 * b * b * b * bt * (-1.0 + a * bt) * q + 4.0 * b * b * K;
    if (erf_whole) {
        t.C = rest + 4.0 * b * b * K;
    } else {
        t.B -= rest;
        t.C = 4.0 * b * b * K;
    }
    return t;
}

// Bracket of the printed Z_s (sign_a3 = -1) or of the Z_s inside F_s (+1).
double zs_bracket_value(const Setup& st, double sign_a3, bool erf_whole) {
    return collected(zs_bracket(st, sign_a3, erf_whole), st);
}

double log_zs_prefactor(const Setup& st) {
    return -std::log(64.0 * std::pow(st.b, 2.5) * std::sqrt(st.beta));
}

// ln Z_s + beta E0; NaN when the bracket is not positive.
double shifted_log_zs(const Setup& st, double sign_a3, bool erf_whole) {
    return std::log(zs_bracket_value(st, sign_a3, erf_whole)) + log_zs_prefactor(st);
}

// Numerator of the printed U_s (and of S_s, which repeats it with small
// differences). x_coeff multiplies b beta in the 2 a^4 b beta^2 (...) line;
// b_power is the power of b in the 8 a b^k beta (...) line.
Terms us_numerator(const Setup& st, double x_coeff, int b_power) {
    const double a = st.a;
    const double b = st.b;
    const double bt = st.beta;
    const double q = st.q;
    const double s = st.s;
    const double b15 = std::pow(b, 1.5) * std::pow(bt, 1.5);
    Terms t;
    // 4a^3 (-2 b^{3/2} beta^{3/2} s + b^{5/2} beta^{5/2} s + 2 b^2 beta^2 (1 + sE) + 2 b^3 beta^3 (-3 + 4 sE)) q
    t.A += 4.0 * a * a * a * q *
           (-2.0 * b15 * s + std::pow(b, 2.5) * std::pow(bt, 2.5) * s + 2.0 * b * b * bt * bt -
            6.0 * b * b * b * bt * bt * bt);
    t.B += 4.0 * a * a * a * q * (2.0 * b * b * bt * bt * s + 8.0 * b * b * b * bt * bt * bt * s);
    // 2a^5 b beta^3 (-1 + 3 sE) q
    t.A += -2.0 * std::pow(a, 5) * b * bt * bt * bt * q;
    t.B += 6.0 * std::pow(a, 5) * b * bt * bt * bt * s * q;
    // 2a^4 b beta^2 (x b beta + sE + 9 b^{3/2} beta^{3/2} E) q
    t.A += 2.0 * std::pow(a, 4) * b * bt * bt * x_coeff * b * bt * q;
    t.B += 2.0 * std::pow(a, 4) * b * bt * bt * (s + 9.0 * b15) * q;
    // a^6 beta^3 sE q
    t.B += std::pow(a, 6) * bt * bt * bt * s * q;
    // 8 a b^k beta (-8 - (3 + 3 b beta + 5 b^2 beta^2) q + sE (8 + q + 2 b beta q + 3 b^2 beta^2 q))
    const double lead8 = 8.0 * a * std::pow(b, b_power) * bt;
    t.A += lead8 * (-8.0 - (3.0 + 3.0 * b * bt + 5.0 * b * b * bt * bt) * q);
    t.B += lead8 * s * (8.0 + q + 2.0 * b * bt * q + 3.0 * b * b * bt * bt * q);
    // 4 a^2 b^2 beta (-2 b beta q - 10 b^2 beta^2 q + sE (8 + q + 4 b beta q + 9 b^2 beta^2 q))
    const double lead4 = 4.0 * a * a * b * b * bt;
    t.A += lead4 * (-2.0 * b * bt * q - 10.0 * b * b * bt * bt * q);
    t.B += lead4 * s * (8.0 + q + 4.0 * b * bt * q + 9.0 * b * b * bt * bt * q);
    // 8 b^3 (-6 b^{3/2} beta^{3/2} s q + b^3 beta^3 (-2 + sE) q + b^2 beta^2 (4 + sE) q
    //        - sE (8 + 3q) + b beta (sE (8 + q) - 2 (8 + 3q)))
    const double lead_b3 = 8.0 * b * b * b;
    t.A += lead_b3 * (-6.0 * b15 * s * q - 2.0 * b * b * b * bt * bt * bt * q + 4.0 * b * b * bt * bt * q -
                      2.0 * b * bt * (8.0 + 3.0 * q));
    t.B += lead_b3 * s *
           (b * b * b * bt * bt * bt * q + b * b * bt * bt * q - (8.0 + 3.0 * q) + b * bt * (8.0 + q));
    // - s (a^2 beta + 2 b^2 beta + 2b(-1 + a beta)) E (a^4 beta^2 q + 4 b^4 beta^2 q + 4 a^2 b beta (1 + a beta) q
    //   + 8 b^3 beta (1 + a beta) q + 4 b^2 (8 + (3 + 2 a beta + 2 a^2 beta^2) q)) erf
    const double p_plus = a * a * bt + 2.0 * b * b * bt + 2.0 * b * (-1.0 + a * bt);
    const double Q = std::pow(a, 4) * bt * bt * q + 4.0 * std::pow(b, 4) * bt * bt * q +
                     4.0 * a * a * b * bt * (1.0 + a * bt) * q + 8.0 * b * b * b * bt * (1.0 + a * bt) * q +
                     4.0 * b * b * (8.0 + (3.0 + 2.0 * a * bt + 2.0 * a * a * bt * bt) * q);
    t.C += s * p_plus * Q;
    return t;
}

// Bracket of the U_s / S_s denominator (without the 4 (b beta)^{3/2} factor).
// b_power is the power of b in its 8 b^k beta (-1 + a beta) term.
Terms us_denominator(const Setup& st, int b_power) {
    const double a = st.a;
    const double b = st.b;
    const double bt = st.beta;
    const double q = st.q;
    const double sbt = std::sqrt(bt);
    const double K = 8.0 + (3.0 - 2.0 * a * bt + 2.0 * a * a * bt * bt) * q;
    Terms t;
    t.A = 12.0 * a * std::pow(b, 1.5) * sbt * q + 24.0 * std::pow(b, 2.5) * sbt * q -
          2.0 * a * a * a * std::sqrt(b) * std::pow(bt, 1.5) * q - 4.0 * a * a * b * bt * st.s * q;
    t.B = -4.0 * a * a * b * bt * (1.0 - a * bt) * q + std::pow(a, 4) * bt * bt * q +
          4.0 * std::pow(b, 4) * bt * bt * q + 8.0 * std::pow(b, b_power) * bt * (-1.0 + a * bt) * q +
          4.0 * b * b * K;
    t.C = std::pow(a, 4) * bt * bt * q + 4.0 * std::pow(b, 4) * bt * bt * q +
          4.0 * a * a * b * bt * (-1.0 + a * bt) * q + 8.0 * b * b * b * bt * (-1.0 + a * bt) * q +
          4.0 * b * b * K;
    return t;
}

double shifted_log_zs_quadrature(const SpectrumCoefficients& c, double beta, double q, const Tolerance& tol) {
    const double e0 = c.ground();
    auto f = [&c, beta, q, e0](double n) {
        const double e = c.energy(n);
        return std::exp(-beta * (e - e0)) * (1.0 + 0.5 * q * beta * beta * e * e);
    };
    return std::log(numerics::integrate_semi_infinite(f, 0.0, tol).value);
}

}  // namespace

DeformationQ::DeformationQ(double q) : q_(q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
}

double boltzmann_factor_q(double energy, Beta beta, DeformationQ q) {
    if (!(energy >= 0.0)) throw std::invalid_argument("energy must be non-negative");
    const double bt = beta.value();
    return std::exp(-bt * energy) * (1.0 + 0.5 * q.value() * bt * bt * energy * energy);
}

double superstat_partition_quadrature(const SpectrumCoefficients& c, Beta beta, DeformationQ q,
                                      const Tolerance& tol) {
    c.validate();
    auto f = [&c, beta, q](double n) { return boltzmann_factor_q(c.energy(n), beta, q); };
    return numerics::integrate_semi_infinite(f, 0.0, tol).value;
}

double log_superstat_partition_quadrature(const SpectrumCoefficients& c, Beta beta, DeformationQ q,
                                          const Tolerance& tol) {
    c.validate();
    return shifted_log_zs_quadrature(c, beta.value(), q.value(), tol) - beta.value() * c.ground();
}

double log_superstat_partition_closed(const SpectrumCoefficients& c, Beta beta, DeformationQ q,
                                      Transcription t, double b_min) {
    const Setup st = setup(c, beta.value(), q.value(), b_min);
    return shifted_log_zs(st, -1.0, t == Transcription::Corrected) - beta.value() * c.ground();
}

double superstat_partition_closed(const SpectrumCoefficients& c, Beta beta, DeformationQ q,
                                  Transcription t, double b_min) {
    const Setup st = setup(c, beta.value(), q.value(), b_min);
    // Keeps the sign of the bracket, which the verbatim reading can turn negative.
    const double w = zs_bracket_value(st, -1.0, t == Transcription::Corrected);
    return std::copysign(std::exp(std::log(std::abs(w)) + log_zs_prefactor(st) - st.beta * c.ground()), w);
}

double superstat_mean_energy_closed(const SpectrumCoefficients& c, Beta beta, DeformationQ q,
                                    Transcription t, double b_min) {
    const Setup st = setup(c, beta.value(), q.value(), b_min);
    const double prefactor = 4.0 * std::pow(st.b, 1.5) * std::pow(st.beta, 1.5);
    if (t == Transcription::Verbatim) {
        const double num = literal(us_numerator(st, -4.0, 2), st);
        const double den = prefactor * literal(us_denominator(st, 2), st);
        return -num / den;
    }
    const double num = collected(us_numerator(st, -4.0, 3), st);
    const double den = prefactor * collected(us_denominator(st, 3), st);
    return -num / den;
}

double superstat_entropy_closed(const SpectrumCoefficients& c, Beta beta, DeformationQ q, double kB,
                                Transcription t, double b_min) {
    const Setup st = setup(c, beta.value(), q.value(), b_min);
    const double prefactor = 4.0 * std::pow(st.b * st.beta, 1.5);
    const double log_z = shifted_log_zs(st, -1.0, true) - st.beta * c.ground();
    double ratio;
    if (t == Transcription::Verbatim) {
        // "-6 b beta + b beta" as printed.
        ratio = literal(us_numerator(st, -6.0 + 1.0, 3), st) / (prefactor * literal(us_denominator(st, 3), st));
    } else {
        ratio = collected(us_numerator(st, -4.0, 3), st) / (prefactor * collected(us_denominator(st, 3), st));
    }
    return kB * (-st.beta * ratio + log_z);
}

double superstat_free_energy_closed(const SpectrumCoefficients& c, Beta beta, DeformationQ q, Transcription t,
                                    double b_min) {
    const Setup st = setup(c, beta.value(), q.value(), b_min);
    const bool fixed = t == Transcription::Corrected;
    const double log_z = shifted_log_zs(st, fixed ? -1.0 : 1.0, fixed) - st.beta * c.ground();
    return -log_z / st.beta;
}

double superstat_heat_capacity_closed(const SpectrumCoefficients& c, Beta beta, DeformationQ q, double kB,
                                      Transcription t, double b_min) {
    (void)setup(c, beta.value(), q.value(), b_min);
    const bool fixed = t == Transcription::Corrected;
    auto g = [&](double bt) { return shifted_log_zs(setup(c, bt, q.value(), b_min), -1.0, fixed); };
    return thermo_from_logZ(g, c.ground(), beta, kB).C;
}

SuperstatPoint superstat_thermo(const SpectrumCoefficients& c, Beta beta, DeformationQ q, double kB,
                                SuperstatMethod method, Transcription t, const Tolerance& tol) {
    SuperstatPoint p;
    p.beta = beta;
    p.q = q;
    p.method = method;
    if (method == SuperstatMethod::ClosedForm) {
        p.Zs = superstat_partition_closed(c, beta, q, t);
        p.Us = superstat_mean_energy_closed(c, beta, q, t);
        p.Ss = superstat_entropy_closed(c, beta, q, kB, t);
        p.Fs = superstat_free_energy_closed(c, beta, q, t);
        p.Cs = superstat_heat_capacity_closed(c, beta, q, kB, t);
        return p;
    }
    c.validate();
    auto g = [&](double bt) { return shifted_log_zs_quadrature(c, bt, q.value(), tol); };
    const ThermoPoint tp = thermo_from_logZ(g, c.ground(), beta, kB);
    p.Zs = tp.Z;
    p.Us = tp.U;
    p.Ss = tp.S;
    p.Fs = tp.F;
    p.Cs = tp.C;
    return p;
}

}  // namespace pdmosc
