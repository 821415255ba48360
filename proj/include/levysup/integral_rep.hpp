#pragma once

#include <complex>

namespace levysup {

/// Controls for the oscillatory Fourier-type inversion integrals.
struct OscIntegralConfig {
    int segment_count_max = 2000;
    double rel_tolerance = 1e-11;
    int inner_quadrature_order = 16;
};

/// Throws DomainError when a config violates its invariants.
void validate(const OscIntegralConfig& cfg);

/**
 * Density of S_1 (kappa = 1) from its Fourier inversion
 *
 *   f(x) = (1/pi) int_0^inf [ e^{t^a cos(a pi/2)} cos(t^a sin(a pi/2) + t x)
 *          + (1/Gamma(1/a)) int_0^{t^a} e^{y cos(a pi/2)} (t^a - y)^{1/a - 1}
 *                                        sin(y sin(a pi/2) + t x) dy ] dt.
 *
 * The outer integral converges only conditionally; past the point where the
 * inner integral is in its asymptotic regime it is cut into half periods of
 * the t x phase and the partial sums are accelerated by iterated averaging.
 * Throws ConvergenceError when cfg.segment_count_max segments do not suffice.
 */
double density_integral(double alpha, double x, const OscIntegralConfig& cfg = {});

/**
 * Distribution function of S_1 (kappa = 1) by the Gil-Pelaez inversion of the
 * same transform: F(x) = 1/2 + (1/pi) int_0^inf Im[L(it) e^{itx}] / t dt.
 */
double cdf_integral(double alpha, double x, const OscIntegralConfig& cfg = {});

/// P(S_1 > x) from the same inversion, without forming 1 - F.
double survival_integral(double alpha, double x, const OscIntegralConfig& cfg = {});

/**
 * L(i t) = E exp(-i t S_1) for kappa = 1, t >= 0, i.e. the analytic
 * continuation of the Laplace transform onto the imaginary axis. The
 * bracket of the density inversion above is Re[L(it) e^{itx}].
 */
std::complex<double> supremum_transform_on_axis(double alpha, double t, int inner_quadrature_order = 16);

}  // namespace levysup
