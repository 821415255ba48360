#pragma once

#include "levysup/model.hpp"

#include <cstddef>
#include <string_view>

namespace levysup {

enum class CoefficientMethod { closed_form, recurrence };

/**
 * n-th coefficient of the density series of S_1 (kappa = 1),
 * a_n = 1 / (Gamma(alpha n - 1) Gamma(-n + 1 + 1/alpha)), n >= 1.
 *
 * The recurrence route starts from a_1 = 1/(Gamma(1/alpha) Gamma(alpha-1)) and
 * multiplies by -A_{m-1}/B_m with A_m = 1/(alpha(m+1)) and
 * B_m = alpha Gamma(alpha(m+1)-1)/Gamma(alpha m + 1), m = n - 1.
 */
double series_coefficient(double alpha, int n, CoefficientMethod method = CoefficientMethod::closed_form);

/// f_t(x) = sum_n x^{an-2} / ((kappa t)^{n-1/a} Gamma(an-1) Gamma(-n+1+1/a)), compensated.
SeriesEval density_series(const ModelParams& params, double t, double x);

/// F_t(x) = sum_n x^{an-1} / ((kappa t)^{n-1/a} Gamma(an) Gamma(-n+1+1/a)); F_t(0) = 0.
SeriesEval cdf_series(const ModelParams& params, double t, double x);

/// Which representation produced a dispatched value.
enum class Method { series, integral, tail };

std::string_view to_string(Method m);

/// A dispatched evaluation: value, route, term count and error estimate.
struct Evaluation {
    double value = 0.0;
    Method method = Method::series;
    std::size_t terms_used = 0;
    double est_error = 0.0;
};

/**
 * Regime boundaries in the reduced variable u = x (kappa t)^{-1/alpha}.
 *
 * series_max: largest u (on a fine grid) where both density and cdf series
 * keep their largest term within 1e6 of the sum. tail_min: smallest u where the
 * asymptotic expansion's smallest term is below 1e-10 of its value.
 * Computed once per alpha and cached.
 */
struct RegimeThresholds {
    double series_max = 0.0;
    double tail_min = 0.0;
};

const RegimeThresholds& regime_thresholds(double alpha);

/// Density of S_t, dispatched over series / inversion integral / tail expansion.
Evaluation density_eval(const ModelParams& params, double t, double x);
double density(const ModelParams& params, double t, double x);

/// Distribution function of S_t, dispatched like density_eval.
Evaluation cdf_eval(const ModelParams& params, double t, double x);
double cdf(const ModelParams& params, double t, double x);

/// P(S_t > x) without forming 1 - F in the far tail.
Evaluation survival_eval(const ModelParams& params, double t, double x);

/// Leading power law c t x^{-alpha-1}.
double tail_asymptotic(const ModelParams& params, double t, double x);

/// lim_{x->0} x^{2-alpha} f_t(x) = (kappa t)^{1/alpha - 1} / (Gamma(alpha-1) Gamma(1/alpha)).
double zero_asymptotic_constant(const ModelParams& params, double t);

/// E exp(-lambda S_t) = (alpha/Gamma(1/alpha)) e^{kappa t lambda^alpha} int_{(kappa t)^{1/alpha} lambda}^inf e^{-z^alpha} dz.
double laplace_supremum(const ModelParams& params, double t, double lambda);

/// E S_t = (alpha / Gamma(1/alpha)) (kappa t)^{1/alpha}.
double mean_supremum(const ModelParams& params, double t);

/// Closed form of int int e^{-lambda x - p t} P(S_t > x) dx dt.
double joint_laplace_closed_form(const ModelParams& params, double lambda, double p);

struct JointLaplaceCheck {
    double numeric = 0.0;
    double closed_form = 0.0;
    double residual = 0.0;
};

/**
 * Two-dimensional quadrature of e^{-lambda x - p t} P(S_t > x) against the
 * closed form. Throws DomainError inside the 1e-6 relative exclusion zone
 * around p = kappa lambda^alpha and QuadratureError if the quadrature fails.
 */
JointLaplaceCheck joint_laplace_residual(const ModelParams& params, double lambda, double p);

}  // namespace levysup
