#include "levysup/errors.hpp"
#include "levysup/integral_rep.hpp"
#include "levysup/supremum_law.hpp"

#include <doctest.h>

#include <cmath>

using namespace levysup;

TEST_CASE("config validation") {
    CHECK_NOTHROW(validate(OscIntegralConfig{}));
    CHECK_THROWS_AS(validate(OscIntegralConfig{2000, 0.0, 16}), DomainError);
    CHECK_THROWS_AS(validate(OscIntegralConfig{2000, 0.1, 16}), DomainError);
    CHECK_THROWS_AS(validate(OscIntegralConfig{8, 1e-10, 16}), DomainError);
    CHECK_THROWS_AS(validate(OscIntegralConfig{2000, 1e-10, 4}), DomainError);
    CHECK_THROWS_AS(density_integral(1.5, 0.0), DomainError);
    CHECK_THROWS_AS(density_integral(2.5, 1.0), DomainError);
}

TEST_CASE("transform on the imaginary axis") {
    const auto at0 = supremum_transform_on_axis(1.5, 0.0);
    CHECK(std::abs(at0 - std::complex<double>(1.0, 0.0)) < 1e-15);
    // L(it) = 1 - i t E S_1 + O(t^alpha).
    const double t = 1e-4;
    const auto small = supremum_transform_on_axis(1.5, t);
    const double mean = mean_supremum(ModelParams::normalized(1.5), 1.0);
    CHECK(std::abs(small - std::complex<double>(1.0, -t * mean)) < 5.0 * std::pow(t, 1.5));
    for (double s = 0.01; s < 200.0; s *= 1.37) {
        CHECK(std::abs(supremum_transform_on_axis(1.5, s)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("transform is continuous across its internal switch points") {
    for (double alpha : {1.3, 1.5, 1.8}) {
        // T = t^alpha crosses 1 at t = 1; the asymptotic branch starts at T >= 60.
        for (double big_t : {1.0, 2.0, 17.0, 60.0}) {
            const double t = std::pow(big_t, 1.0 / alpha);
            const auto lo = supremum_transform_on_axis(alpha, t * (1.0 - 1e-12));
            const auto hi = supremum_transform_on_axis(alpha, t * (1.0 + 1e-12));
            CHECK(std::abs(lo - hi) < 1e-10);
        }
    }
}

TEST_CASE("density and cdf inversion match the series") {
    const ModelParams p = ModelParams::normalized(1.5);
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        CHECK(std::abs(density_integral(1.5, x) / density_series(p, 1.0, x).value - 1.0) < 1e-9);
        CHECK(std::abs(cdf_integral(1.5, x) - cdf_series(p, 1.0, x).value) < 1e-10);
        CHECK(std::abs(cdf_integral(1.5, x) + survival_integral(1.5, x) - 1.0) < 1e-14);
    }
    CHECK(std::abs(density_integral(1.5, 5.0) / 0.0095651675960596 - 1.0) < 1e-9);
}

TEST_CASE("inner quadrature order does not move the result") {
    const OscIntegralConfig lo{2000, 1e-11, 12};
    const OscIntegralConfig hi{2000, 1e-11, 24};
    for (double x : {0.7, 4.0}) {
        CHECK(std::abs(density_integral(1.3, x, lo) / density_integral(1.3, x, hi) - 1.0) < 1e-9);
    }
}

TEST_CASE("segment budget exhaustion is reported") {
    const OscIntegralConfig tight{32, 1e-15, 16};
    CHECK_THROWS_AS(density_integral(1.5, 40.0, tight), ConvergenceError);
}
