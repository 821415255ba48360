#include "levysup/passage_time.hpp"

#include "levysup/errors.hpp"
#include "levysup/quadrature.hpp"
#include "levysup/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace levysup {

PassageQuery::PassageQuery(const ModelParams& params, double x) : params_(params), x_(x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("passage level x must be positive and finite");
}

namespace {

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("passage time t must be positive and finite");
}

PassageLaplaceEval laplace_series(double alpha, double w) {
    PassageLaplaceEval out;
    const double lw = std::log(w);
    auto first = [&](int n) { return n == 0 ? 1.0 : std::exp(alpha * n * lw - log_gamma(1.0 + alpha * n)); };
    auto second = [&](int n) { return std::exp((alpha * n - 1.0) * lw - log_gamma(alpha * n)); };

    CompensatedSum s1;
    CompensatedSum s2;
    s1 += first(0);
    out.max_term_magnitude = 1.0;
    for (int n = 1; n <= 10000; ++n) {
        const double a = first(n);
        const double b = second(n);
        s1 += a;
        s2 += b;
        out.max_term_magnitude = std::max({out.max_term_magnitude, a, b});
        const double na = first(n + 1);
        const double nb = second(n + 1);
        const bool tails_small = a <= 1e-16 * s1.value() && b <= 1e-16 * s2.value();
        const bool decaying = na <= 0.5 * a && nb <= 0.5 * b;
        if (tails_small && decaying) {
            out.value = s1.value() - s2.value();
            out.terms_used = std::size_t(n) + 1;
            out.est_error = 2.0 * (na + nb) + 1e-16 * out.max_term_magnitude;
            out.cancellation_flag = out.max_term_magnitude > kCancellationRatio * std::abs(out.value);
            return out;
        }
    }
    throw ConvergenceError("passage_laplace: series did not converge at w = " + std::to_string(w));
}

PassageLaplaceEval laplace_asymptotic(double alpha, double w) {
    // Leading first: exponents a-1-ak then -ak for k = 1, 2, ...; zero coefficients skipped.
    std::vector<double> terms;
    const double lw = std::log(w);
    auto push = [&](SignedLogValue c, double exponent, int sign) {
        if (!c.is_zero()) terms.push_back(sign * c.sign * std::exp(c.log_magnitude + exponent * lw));
    };
    for (int k = 1; k <= 60; ++k) {
        push(signed_log_recip_gamma(alpha - alpha * k), alpha - 1.0 - alpha * k, 1);
        push(signed_log_recip_gamma(1.0 - alpha * k), -alpha * k, -1);
    }
    std::size_t best = 1;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (std::abs(terms[i]) < std::abs(terms[best])) best = i;
    }
    PassageLaplaceEval out;
    CompensatedSum s;
    for (std::size_t i = 0; i < best; ++i) s += terms[i];
    out.value = s.value();
    out.method = Method::tail;
    out.terms_used = best;
    out.est_error = std::abs(terms[best]);
    return out;
}

}  // namespace

Evaluation passage_cdf_eval(const PassageQuery& q, double t) {
    require_time(t);
    return survival_eval(q.params(), t, q.x());
}

double passage_cdf(const PassageQuery& q, double t) { return passage_cdf_eval(q, t).value; }

Evaluation passage_density_eval(const PassageQuery& q, double t) {
    require_time(t);
    const double alpha = q.params().alpha();
    const double u = q.x() * std::pow(q.params().kappa() * t, -1.0 / alpha);
    if (!(u < 1e100)) {
        // u f(u) / (alpha t) -> c kappa x^{-alpha} / alpha; next order is O(u^{-alpha}).
        const double c = ModelParams::normalized(alpha).c();
        return {c * q.params().kappa() * std::pow(q.x(), -alpha) / alpha, Method::tail, 1, 0.0};
    }
    Evaluation e = density_eval(ModelParams::normalized(alpha), 1.0, u);
    const double factor = u / (alpha * t);
    e.value *= factor;
    e.est_error *= factor;
    return e;
}

double passage_density(const PassageQuery& q, double t) { return passage_density_eval(q, t).value; }

PassageLaplaceEval passage_laplace_eval(const PassageQuery& q, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("passage_laplace: p must be positive and finite");
    const double alpha = q.params().alpha();
    const double w = std::pow(p / q.params().kappa(), 1.0 / alpha) * q.x();
    PassageLaplaceEval s = laplace_series(alpha, w);
    if (!s.cancellation_flag) return s;
    PassageLaplaceEval a = laplace_asymptotic(alpha, w);
    if (a.est_error <= 1e-10 * std::abs(a.value)) return a;
    return s;
}

double passage_laplace(const PassageQuery& q, double p) { return passage_laplace_eval(q, p).value; }

}  // namespace levysup
