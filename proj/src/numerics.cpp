#include "pdmosc/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmosc::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// erf via exp(-x^2) * sum (2x^2)^n / (2n+1)!!; every term is positive so
// there is no cancellation. Used for |x| < 2.
double erf_series(double x) noexcept {
    const double two_x2 = 2.0 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 200; ++n) {
        term *= two_x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < kEps * 0.25 * sum) break;
    }
    return 2.0 * kInvSqrtPi * x * std::exp(-x * x) * sum;
}

// exp(x^2) erfc(x) from the Laplace continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm. Used for x >= 1.
double erfcx_continued_fraction(double x) noexcept {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < 5000; ++k) {
        const double ak = 0.5 * k;
        d = x + ak * d;
        if (d == 0.0) d = tiny;
        c = x + ak / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return kInvSqrtPi / f;
}

// QUADPACK qk15 abscissae and weights. Gauss nodes are the odd entries.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    double abs_value;  // integral of |f|, for the roundoff floor
};

struct ByError {
    bool operator()(const Segment& a, const Segment& b) const noexcept {
        return a.error < b.error;
    }
};

Segment gauss_kronrod_15(const ScalarFn& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f_lo{};
    std::array<double, 7> f_hi{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        f_lo[j] = f(center - dx);
        f_hi[j] = f(center + dx);
        const double pair = f_lo[j] + f_hi[j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }

    // Mean absolute deviation from the mean, as in QUADPACK's resasc.
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        asc += kKronrodWeights[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));
    }

    const double value = kronrod * half;
    const double abs_value = abs_sum * std::abs(half);
    asc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) {
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    }
    if (abs_value > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * abs_value, err);
    }
    if (!std::isfinite(value)) {
        throw NonConvergence("integrand produced a non-finite value on [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]");
    }
    return Segment{lo, hi, value, err, abs_value};
}

}  // namespace

Tolerance::Tolerance(double rel, double abs, std::size_t max_evals)
    : rel_(rel), abs_(abs), max_evals_(max_evals) {
    if (!(rel >= 0.0) || !(abs >= 0.0)) throw std::invalid_argument("tolerances must be >= 0");
    if (rel == 0.0 && abs == 0.0) {
        throw std::invalid_argument("relative and absolute tolerance cannot both be zero");
    }
    if (max_evals < 15) throw std::invalid_argument("max_evals must be at least 15");
}

double Tolerance::target(double value) const noexcept {
    return std::max(abs_, rel_ * std::abs(value));
}

double erf(double x) noexcept {
    const double ax = std::abs(x);
    double r;
    if (ax < 2.0) {
        r = erf_series(ax);
    } else if (ax < 6.0) {
        r = 1.0 - std::exp(-ax * ax) * erfcx_continued_fraction(ax);
    } else {
        r = 1.0;
    }
    return std::signbit(x) ? -r : r;
}

double erfc(double x) noexcept {
    if (x < 1.0) return 1.0 - erf(x);
    return std::exp(-x * x) * erfcx_continued_fraction(x);
}

double erfcx(double x) noexcept {
    if (x >= 1.0) return erfcx_continued_fraction(x);
    if (x >= 0.0) return std::exp(x * x) * (1.0 - erf_series(x));
    // erfc(x) = 2 - erfc(-x) for negative x
    return 2.0 * std::exp(x * x) - erfcx(-x);
}

double erf_diff(double lo, double hi) noexcept {
    if (lo >= 0.0 && hi >= 0.0) return erfc(lo) - erfc(hi);
    if (lo <= 0.0 && hi <= 0.0) return erfc(-hi) - erfc(-lo);
    return erf(hi) - erf(lo);
}

QuadratureResult integrate_finite(const ScalarFn& f, double lo, double hi, const Tolerance& tol) {
    if (!(lo <= hi)) throw std::invalid_argument("integrate_finite requires lo <= hi");
    if (lo == hi) return {};

    std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
    Segment first = gauss_kronrod_15(f, lo, hi);
    std::size_t evals = 15;
    double value = first.value;
    double error = first.error;
    double abs_value = first.abs_value;
    heap.push(first);

    auto satisfied = [&] {
        // Twice the per-segment floor, so a sum of floored segments terminates.
        const double floor = 100.0 * kEps * abs_value;
        return error <= std::max(tol.target(value), floor);
    };

    while (!satisfied()) {
        if (evals + 30 > tol.max_evals()) {
            throw NonConvergence("quadrature did not reach tolerance within " +
                                 std::to_string(tol.max_evals()) + " evaluations (error estimate " +
                                 std::to_string(error) + ")");
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw NonConvergence("quadrature interval cannot be bisected further");
        }
        const Segment left = gauss_kronrod_15(f, worst.lo, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.hi);
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum so the reported value does not carry the running-update drift.
    double total = 0.0;
    double total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    return {total, total_err, evals};
}

QuadratureResult integrate_semi_infinite(const ScalarFn& f, double lo, const Tolerance& tol) {
    auto mapped = [&f, lo](double t) {
        const double s = 1.0 - t;
        if (s <= 0.0) return 0.0;
        const double v = f(lo + t / s);
        return v / (s * s);
    };

    // Last decade of the map: n - lo runs from about 1e5 to 1e6.
    const double t5 = 1.0 - 1e-5;
    const double t6 = 1.0 - 1e-6;
    const double g5 = std::abs(mapped(t5));
    const double g6 = std::abs(mapped(t6));
    if (!std::isfinite(g5) || !std::isfinite(g6) || g6 > g5) {
        throw NonDecaying("integrand does not decay fast enough for the semi-infinite map");
    }
    return integrate_finite(mapped, 0.0, 1.0, tol);
}

double sum_decaying(const TermFn& term, const TermFn& tail_bound, const Tolerance& tol) {
    double sum = 0.0;
    double compensation = 0.0;
    for (std::size_t n = 0; n < tol.max_evals(); ++n) {
        // Kahan summation keeps long sums at small beta accurate.
        const double y = term(n) - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        if (tail_bound(n) <= tol.target(sum)) return sum;
    }
    throw NonConvergence("series tail bound not met within " + std::to_string(tol.max_evals()) +
                         " terms");
}

double initial_step(DerivativeOrder order, double scale) noexcept {
    const double factor = order == DerivativeOrder::First ? std::cbrt(kEps) : std::sqrt(std::sqrt(kEps));
    return scale * factor;
}

double derivative(const ScalarFn& f, double x, DerivativeOrder order, double scale,
                  bool positive_only) {
    if (!(scale > 0.0)) throw std::invalid_argument("derivative scale must be positive");
    const double h = initial_step(order, scale);
    // The widest stencil reaches x - 4h.
    if (positive_only && x - 4.0 * h <= 0.0) {
        throw DomainEdge("difference stencil crosses zero for a positive-only function");
    }

    const double fx = order == DerivativeOrder::Second ? f(x) : 0.0;
    auto difference = [&](double step) {
        // Use the step actually representable around x.
        volatile double xp = x + step;
        const double s = xp - x;
        if (order == DerivativeOrder::First) return (f(x + s) - f(x - s)) / (2.0 * s);
        return (f(x + s) - 2.0 * fx + f(x - s)) / (s * s);
    };

    // Richardson tableau over 4h, 2h, h: the finest step is the classical
    // roundoff/truncation balance. Central differences have even error
    // expansions, so level j removes the step^(2j) term.
    std::array<std::array<double, 3>, 3> r{};
    double step = 4.0 * h;
    for (std::size_t i = 0; i < 3; ++i) {
        r[i][0] = difference(step);
        for (std::size_t j = 1; j <= i; ++j) {
            const double factor = std::pow(4.0, static_cast<double>(j));
            r[i][j] = r[i][j - 1] + (r[i][j - 1] - r[i - 1][j - 1]) / (factor - 1.0);
        }
        step *= 0.5;
    }
    return r[2][2];
}

}  // namespace pdmosc::numerics
