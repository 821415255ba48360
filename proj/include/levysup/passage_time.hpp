#pragma once

#include "levysup/model.hpp"
#include "levysup/supremum_law.hpp"

namespace levysup {

/// First entry time tau_x = inf{t >= 0 : X_t >= x} for a level x > 0.
class PassageQuery {
public:
    PassageQuery(const ModelParams& params, double x);

    [[nodiscard]] const ModelParams& params() const noexcept { return params_; }
    [[nodiscard]] double x() const noexcept { return x_; }

private:
    ModelParams params_;
    double x_;
};

/// P(tau_x <= t) = P(S_t >= x).
Evaluation passage_cdf_eval(const PassageQuery& q, double t);
double passage_cdf(const PassageQuery& q, double t);

/**
 * Density of tau_x in t. Term-wise t-derivative of the cdf series,
 *   g_x(t) = sum_n (n - 1/a) x^{an-1} kappa^{-(n-1/a)} t^{-(n-1/a)-1} / (Gamma(an) Gamma(-n+1+1/a)),
 * which equals u f_1(u) / (alpha t) with u = x (kappa t)^{-1/alpha}; the
 * latter form carries over to the integral and tail regimes.
 */
Evaluation passage_density_eval(const PassageQuery& q, double t);
double passage_density(const PassageQuery& q, double t);

/// Value of E exp(-p tau_x) with the diagnostics of both Mittag-Leffler-type sums.
struct PassageLaplaceEval {
    double value = 0.0;
    Method method = Method::series;
    std::size_t terms_used = 0;
    double est_error = 0.0;
    double max_term_magnitude = 0.0;
    bool cancellation_flag = false;
};

/**
 * E exp(-p tau_x) = sum_{n>=0} w^{an}/Gamma(1+an) - sum_{n>=1} w^{an-1}/Gamma(an),
 * w = p^{1/a} x kappa^{-1/a}. The two sums grow like e^w and cancel; when the
 * cancellation flag trips and the large-w expansion
 *   -sum_{k>=1} w^{-ak}/Gamma(1-ak) + sum_{k>=2} w^{a-1-ak}/Gamma(a-ak)
 * is accurate, that is returned instead (method = tail).
 */
PassageLaplaceEval passage_laplace_eval(const PassageQuery& q, double p);
double passage_laplace(const PassageQuery& q, double p);

}  // namespace levysup
