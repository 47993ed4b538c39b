#pragma once

// Numerical kernel: error functions, adaptive Gauss-Kronrod quadrature,
// guarded series summation and Richardson-extrapolated differentiation.
//
// Everything here is a pure function of its arguments.

#include <cstddef>
#include <functional>

#include "pdmosc/errors.hpp"

namespace pdmosc::numerics {

using ScalarFn = std::function<double(double)>;
using TermFn = std::function<double(std::size_t)>;

/// Stopping rule shared by quadrature and summation.
///
/// A routine succeeds once its error (or tail bound) is at most
/// max(abs, rel * |result|). max_evals caps integrand evaluations
/// (quadrature) or summed terms (series).
class Tolerance {
public:
    Tolerance(double rel, double abs, std::size_t max_evals = 200000);

    [[nodiscard]] double rel() const noexcept { return rel_; }
    [[nodiscard]] double abs() const noexcept { return abs_; }
    [[nodiscard]] std::size_t max_evals() const noexcept { return max_evals_; }

    /// Target error for a result of magnitude |value|.
    [[nodiscard]] double target(double value) const noexcept;

    /// Default used by the oracle paths: relative 1e-13.
    static Tolerance tight() { return Tolerance{1e-13, 0.0}; }

private:
    double rel_;
    double abs_;
    std::size_t max_evals_;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evals = 0;
};

// ---------------------------------------------------------------------------
// Error function family
// ---------------------------------------------------------------------------

/// erf(x), absolute error below 1e-14 on all finite x. Exactly odd.
[[nodiscard]] double erf(double x) noexcept;

/// erfc(x) = 1 - erf(x) with full relative accuracy for x > 0.
[[nodiscard]] double erfc(double x) noexcept;

/// Scaled complement exp(x^2) * erfc(x); finite for all x >= 0.
[[nodiscard]] double erfcx(double x) noexcept;

/// erf(hi) - erf(lo), evaluated through the complement when both
/// arguments are positive so the difference keeps its relative accuracy.
[[nodiscard]] double erf_diff(double lo, double hi) noexcept;

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [lo, hi].
///
/// The interval with the largest error estimate is bisected until the
/// summed estimate meets tol. Tolerances tighter than the roundoff floor
/// (100 eps times the integral of |f|) are clamped to that floor.
/// Throws NonConvergence once tol.max_evals() evaluations are spent,
/// std::invalid_argument if lo > hi.
[[nodiscard]] QuadratureResult integrate_finite(const ScalarFn& f, double lo, double hi,
                                                const Tolerance& tol);

/// Integral of f over [lo, inf) via n = lo + t/(1-t), t in [0, 1).
///
/// Throws NonDecaying when the mapped integrand f(n(t))/(1-t)^2 still grows
/// across the last decade of the map, NonConvergence as integrate_finite.
[[nodiscard]] QuadratureResult integrate_semi_infinite(const ScalarFn& f, double lo,
                                                       const Tolerance& tol);

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

/// Partial sum S_N of term(0) + term(1) + ... stopping at the first N with
/// tail_bound(N) <= max(tol.abs, tol.rel * S_N). tail_bound(N) must bound
/// the sum of term(n) over n > N. Throws NonConvergence after
/// tol.max_evals() terms.
[[nodiscard]] double sum_decaying(const TermFn& term, const TermFn& tail_bound,
                                  const Tolerance& tol);

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

enum class DerivativeOrder { First = 1, Second = 2 };

/// Central-difference derivative with two Richardson refinement levels
/// (steps 4h, 2h, h).
///
/// h is scale * eps^(1/3) for the first derivative and scale * eps^(1/4)
/// for the second. When positive_only is set and the widest stencil point
/// x - 4h is not positive the call throws DomainEdge.
[[nodiscard]] double derivative(const ScalarFn& f, double x, DerivativeOrder order, double scale,
                                bool positive_only = false);

/// Initial step used by derivative() for the given order and scale.
[[nodiscard]] double initial_step(DerivativeOrder order, double scale) noexcept;

}  // namespace pdmosc::numerics
