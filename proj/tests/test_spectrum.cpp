#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pdmosc/spectrum.hpp"

using namespace pdmosc;

TEST_CASE("coefficients in natural units") {
    auto c0 = coefficients(OscillatorParams::natural(0.0));
    CHECK(c0.a == 1.0);
    CHECK(c0.b == 0.0);

    auto c1 = coefficients(OscillatorParams::natural(0.1));
    CHECK(c1.a == doctest::Approx(1.00124921972503925977).epsilon(1e-15));
    CHECK(c1.b == doctest::Approx(0.05).epsilon(1e-15));

    auto c9 = coefficients(OscillatorParams::natural(0.9));
    CHECK(c9.a == doctest::Approx(1.09658560997306539628).epsilon(1e-15));
    CHECK(c9.b == doctest::Approx(0.45).epsilon(1e-15));
}

TEST_CASE("b conventions differ by a factor omega") {
    OscillatorParams p;
    p.alpha = 0.4;
    p.omega = 2.5;
    p.m0 = 0.7;
    const auto spectrum = coefficients(p, BConvention::Spectrum);
    const auto compact = coefficients(p, BConvention::Compact);
    CHECK(spectrum.a == compact.a);
    CHECK(compact.b == doctest::Approx(spectrum.b / 2.5));
    CHECK(spectrum.b == doctest::Approx(0.4 / 1.4));

    p.omega = 1.0;
    CHECK(coefficients(p, BConvention::Compact).b == coefficients(p, BConvention::Spectrum).b);
}

TEST_CASE("energy levels") {
    CHECK(energy_level(OscillatorParams::natural(0.0), 0) == 0.5);
    CHECK(energy_level(OscillatorParams::natural(0.1), 0) ==
          doctest::Approx(0.525624609862519631274).epsilon(1e-14));
    CHECK(energy_level(OscillatorParams::natural(0.1), 2) ==
          doctest::Approx(2.92812304931259819384).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(OscillatorParams::natural(1.0), std::invalid_argument);
    CHECK_THROWS_AS(OscillatorParams::natural(-0.1), std::invalid_argument);
    OscillatorParams p;
    p.hbar = 0.0;
    CHECK_THROWS_AS((void)coefficients(p), std::invalid_argument);
    p.hbar = 1.0;
    p.m0 = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    SpectrumCoefficients bad{1.0, -1e-3};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("spectrum properties over random parameters") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 0.999);
    std::uniform_real_distribution<double> scale(0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        OscillatorParams p;
        p.alpha = unit(rng);
        p.m0 = scale(rng);
        p.omega = scale(rng);
        p.hbar = scale(rng);
        const auto c = coefficients(p);
        CHECK(c.a >= p.hbar * p.omega);
        CHECK(c.b >= 0.0);

        double prev = energy_level(p, 0);
        double prev_gap = -1.0;
        for (std::uint32_t n = 1; n <= 30; ++n) {
            const double e = energy_level(p, n);
            CHECK(e > prev);
            const double gap = e - prev;
            if (c.b > 0.0) CHECK(gap > prev_gap);
            CHECK(gap == doctest::Approx(c.a + c.b * (2.0 * n + 1.0)).epsilon(1e-12));
            // Both printed forms of the spectrum agree.
            CHECK(e == doctest::Approx(energy_level_direct(p, n)).epsilon(1e-14));
            prev_gap = gap;
            prev = e;
        }

        // Monotone in alpha at fixed n.
        OscillatorParams q = p;
        q.alpha = std::min(0.999, p.alpha + 0.01);
        if (q.alpha > p.alpha) {
            for (std::uint32_t n : {0u, 1u, 5u, 20u}) CHECK(energy_level(q, n) > energy_level(p, n));
        }
    }
}

TEST_CASE("alpha = 0 reduces to the standard oscillator") {
    OscillatorParams p;
    p.omega = 1.7;
    p.hbar = 0.3;
    for (std::uint32_t n = 0; n < 50; ++n) {
        CHECK(energy_level(p, n) == doctest::Approx(p.hbar * p.omega * (n + 0.5)).epsilon(1e-15));
    }
}
