#include "levysup/supremum_law.hpp"

#include "levysup/errors.hpp"
#include "levysup/integral_rep.hpp"
#include "levysup/quadrature.hpp"
#include "levysup/special_fn.hpp"
#include "levysup/tail_expansion.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

namespace levysup {

// ---------------------------------------------------------------------------
// ModelParams

void validate_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        std::ostringstream os;
        os << "alpha = " << alpha << " is outside the open interval (1,2)";
        throw DomainError(os.str());
    }
    if (alpha < kAlphaMin || alpha > kAlphaMax) {
        std::ostringstream os;
        os << "alpha = " << alpha << " is outside the supported range [" << kAlphaMin << ", " << kAlphaMax
           << "] of the open interval (1,2)";
        throw DomainError(os.str());
    }
}

ModelParams ModelParams::normalized(double alpha) {
    validate_alpha(alpha);
    return {alpha, recip_gamma(-alpha), 1.0};
}

ModelParams ModelParams::from_levy_constant(double alpha, double c) {
    validate_alpha(alpha);
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("Levy constant c must be positive");
    // Gamma(-alpha) > 0 on (1,2).
    return {alpha, c, c / recip_gamma(-alpha)};
}

ModelParams ModelParams::from_kappa(double alpha, double kappa) {
    validate_alpha(alpha);
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
    return {alpha, kappa * recip_gamma(-alpha), kappa};
}

bool ModelParams::is_normalized() const noexcept { return std::abs(kappa_ - 1.0) < 1e-14; }

std::string_view to_string(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::integral: return "integral";
        case Method::tail: return "tail";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Series

namespace {

constexpr std::size_t kMaxSeriesTerms = 10000;

void require_positive_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time t must be positive and finite");
}

// log|a| and sign of 1/(Gamma(g) Gamma(-n+1+1/alpha)).
SignedLogValue coefficient(double alpha, int n, double gamma_arg) {
    const SignedLogValue first{1, -log_gamma(gamma_arg), false};
    return first * signed_log_recip_gamma(-n + 1.0 + 1.0 / alpha);
}

/**
 * Sums sum_{n>=1} coef_n u^{alpha n + shift}, coef_n = 1/(Gamma(alpha n + g0) Gamma(-n+1+1/alpha)),
 * with the stopping rule: |term| < 1e-16 |sum| and |next/term| < 1/2.
 */
SeriesEval sum_power_series(double alpha, double u, double shift, double g0) {
    SeriesEval out;
    const double lu = std::log(u);
    CompensatedSum acc;
    // Direct gamma values and pow keep each term within a few ulps; the log
    // route (error ~ |log term| * eps) only takes over where that would overflow.
    auto term_at = [&](int n) {
        const double exponent = alpha * n + shift;
        if (alpha * n + g0 < 150.0) {
            const double c = recip_gamma(alpha * n + g0) * recip_gamma(-n + 1.0 + 1.0 / alpha);
            const double v = c * std::pow(u, exponent);
            if (std::isfinite(v) && (v != 0.0 || c == 0.0)) return v;
        }
        const SignedLogValue c = coefficient(alpha, n, alpha * n + g0);
        if (c.is_zero()) return 0.0;
        return c.sign * std::exp(c.log_magnitude + exponent * lu);
    };
    double term = term_at(1);
    for (int n = 1; n <= int(kMaxSeriesTerms); ++n) {
        acc += term;
        out.max_term_magnitude = std::max(out.max_term_magnitude, std::abs(term));
        out.terms_used = std::size_t(n);
        const double next = term_at(n + 1);
        const double partial = acc.value();
        if (std::abs(term) <= 1e-16 * std::abs(partial) && std::abs(next) <= 0.5 * std::abs(term)) {
            out.value = partial;
            out.truncation_estimate = 2.0 * std::abs(next);
            out.cancellation_flag = out.max_term_magnitude > kCancellationRatio * std::abs(out.value);
            return out;
        }
        term = next;
    }
    throw ConvergenceError("series did not converge within 10000 terms at reduced level u = " + std::to_string(u));
}

double reduced_level(const ModelParams& p, double t, double x) {
    return x * std::pow(p.kappa() * t, -1.0 / p.alpha());
}

}  // namespace

double series_coefficient(double alpha, int n, CoefficientMethod method) {
    validate_alpha(alpha);
    if (n < 1) throw DomainError("series_coefficient: n must be >= 1");
    if (method == CoefficientMethod::closed_form) return coefficient(alpha, n, alpha * n - 1.0).value();

    double a = recip_gamma(1.0 / alpha) * recip_gamma(alpha - 1.0);
    for (int m = 1; m < n; ++m) {
        const double a_prev = 1.0 / (alpha * m);  // A_{m-1}
        const double b_m = alpha * std::exp(log_gamma(alpha * (m + 1) - 1.0) - log_gamma(alpha * m + 1.0));
        a *= -a_prev / b_m;
    }
    return a;
}

SeriesEval density_series(const ModelParams& params, double t, double x) {
    require_positive_time(t);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("density_series: x must be positive");
    const double alpha = params.alpha();
    const double scale = std::pow(params.kappa() * t, -1.0 / alpha);
    SeriesEval s = sum_power_series(alpha, x * scale, -2.0, -1.0);
    s.value *= scale;
    s.max_term_magnitude *= scale;
    s.truncation_estimate *= scale;
    return s;
}

SeriesEval cdf_series(const ModelParams& params, double t, double x) {
    require_positive_time(t);
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("cdf_series: x must be non-negative");
    if (x == 0.0) {
        SeriesEval zero;
        zero.terms_used = 1;
        return zero;
    }
    return sum_power_series(params.alpha(), reduced_level(params, t, x), -1.0, 0.0);
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

// Stricter than the cancellation flag: rounding in the gamma arguments costs
// about 1e-14 per term, so the dispatcher keeps max|term| / |sum| below 1e6.
constexpr double kSeriesRegimeRatio = 1e6;

bool series_clean(double alpha, double u) {
    const ModelParams p = ModelParams::normalized(alpha);
    auto ok = [](const SeriesEval& e) { return e.max_term_magnitude <= kSeriesRegimeRatio * std::abs(e.value); };
    try {
        return ok(density_series(p, 1.0, u)) && ok(cdf_series(p, 1.0, u));
    } catch (const ConvergenceError&) {
        return false;
    }
}

RegimeThresholds compute_thresholds(double alpha) {
    RegimeThresholds th;
    constexpr double step = 0.05;
    double u = step;
    while (series_clean(alpha, u + step)) u += step;
    th.series_max = u;

    double v = u;
    for (;; v *= 1.02) {
        const AsymptoticEval d = tail_expansion_density(alpha, v);
        const AsymptoticEval s = tail_expansion_survival(alpha, v);
        if (d.value > 0.0 && s.value > 0.0 && d.error_estimate <= 1e-10 * d.value &&
            s.error_estimate <= 1e-10 * s.value) {
            break;
        }
    }
    th.tail_min = v;
    return th;
}

const OscIntegralConfig kDispatchConfig{};

Evaluation density_reduced(double alpha, double u) {
    const RegimeThresholds& th = regime_thresholds(alpha);
    if (u <= th.series_max) {
        const SeriesEval s = density_series(ModelParams::normalized(alpha), 1.0, u);
        return {s.value, Method::series, s.terms_used, s.truncation_estimate};
    }
    if (u >= th.tail_min) {
        const AsymptoticEval a = tail_expansion_density(alpha, u);
        return {a.value, Method::tail, a.terms_used, a.error_estimate};
    }
    const double v = density_integral(alpha, u, kDispatchConfig);
    return {v, Method::integral, 0, std::abs(v) * kDispatchConfig.rel_tolerance};
}

Evaluation survival_reduced(double alpha, double u) {
    const RegimeThresholds& th = regime_thresholds(alpha);
    if (u <= th.series_max) {
        const SeriesEval s = cdf_series(ModelParams::normalized(alpha), 1.0, u);
        return {1.0 - s.value, Method::series, s.terms_used, s.truncation_estimate};
    }
    if (u >= th.tail_min) {
        const AsymptoticEval a = tail_expansion_survival(alpha, u);
        return {a.value, Method::tail, a.terms_used, a.error_estimate};
    }
    const double v = survival_integral(alpha, u, kDispatchConfig);
    return {v, Method::integral, 0, 1e-12 + std::abs(v) * kDispatchConfig.rel_tolerance};
}

}  // namespace

const RegimeThresholds& regime_thresholds(double alpha) {
    validate_alpha(alpha);
    static std::mutex mu;
    static std::map<double, std::unique_ptr<RegimeThresholds>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(alpha);
        if (it != cache.end()) return *it->second;
    }
    auto fresh = std::make_unique<RegimeThresholds>(compute_thresholds(alpha));
    std::lock_guard lock(mu);
    auto& slot = cache[alpha];
    if (!slot) slot = std::move(fresh);
    return *slot;
}

Evaluation density_eval(const ModelParams& params, double t, double x) {
    require_positive_time(t);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("density: x must be positive");
    const double scale = std::pow(params.kappa() * t, -1.0 / params.alpha());
    if (!std::isfinite(x * scale)) return {0.0, Method::tail, 0, 0.0};
    Evaluation e = density_reduced(params.alpha(), x * scale);
    e.value *= scale;
    e.est_error *= scale;
    return e;
}

double density(const ModelParams& params, double t, double x) { return density_eval(params, t, x).value; }

Evaluation survival_eval(const ModelParams& params, double t, double x) {
    require_positive_time(t);
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("survival: x must be non-negative");
    if (x == 0.0) return {1.0, Method::series, 1, 0.0};
    const double u = reduced_level(params, t, x);
    if (!std::isfinite(u)) return {0.0, Method::tail, 0, 0.0};
    return survival_reduced(params.alpha(), u);
}

Evaluation cdf_eval(const ModelParams& params, double t, double x) {
    require_positive_time(t);
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("cdf: x must be non-negative");
    if (x == 0.0) return {0.0, Method::series, 1, 0.0};
    const double alpha = params.alpha();
    const double u = reduced_level(params, t, x);
    if (!std::isfinite(u)) return {1.0, Method::tail, 0, 0.0};
    if (u <= regime_thresholds(alpha).series_max) {
        const SeriesEval s = cdf_series(params, t, x);
        return {s.value, Method::series, s.terms_used, s.truncation_estimate};
    }
    Evaluation e = survival_reduced(alpha, u);
    e.value = 1.0 - e.value;
    return e;
}

double cdf(const ModelParams& params, double t, double x) { return cdf_eval(params, t, x).value; }

// ---------------------------------------------------------------------------
// Closed forms

double tail_asymptotic(const ModelParams& params, double t, double x) {
    require_positive_time(t);
    if (!(x > 0.0)) throw DomainError("tail_asymptotic: x must be positive");
    return params.c() * t * std::pow(x, -params.alpha() - 1.0);
}

double zero_asymptotic_constant(const ModelParams& params, double t) {
    require_positive_time(t);
    const double a = params.alpha();
    return std::pow(params.kappa() * t, 1.0 / a - 1.0) * recip_gamma(a - 1.0) * recip_gamma(1.0 / a);
}

double laplace_supremum(const ModelParams& params, double t, double lambda) {
    require_positive_time(t);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("laplace_supremum: lambda must be positive");
    const double a = params.alpha();
    const double w = params.kappa() * t * std::pow(lambda, a);
    // (alpha/Gamma(1/alpha)) e^w int_{w^{1/alpha}}^inf e^{-z^alpha} dz = e^w Gamma(1/alpha, w) / Gamma(1/alpha).
    return scaled_upper_incomplete_gamma(1.0 / a, w) * recip_gamma(1.0 / a);
}

double mean_supremum(const ModelParams& params, double t) {
    require_positive_time(t);
    const double a = params.alpha();
    return a * recip_gamma(1.0 / a) * std::pow(params.kappa() * t, 1.0 / a);
}

double joint_laplace_closed_form(const ModelParams& params, double lambda, double p) {
    if (!(lambda > 0.0) || !(p > 0.0)) throw DomainError("joint transform: lambda and p must be positive");
    const double a = params.alpha();
    const double k = params.kappa();
    // S_t under kappa equals S_{kappa t} under kappa = 1.
    const double q = p / k;
    const double la = std::pow(lambda, a);
    if (std::abs(q - la) <= 1e-6 * la) {
        throw DomainError("joint transform: p is inside the exclusion zone around kappa lambda^alpha");
    }
    return (std::pow(q, -1.0 / a) - std::pow(lambda, a - 1.0) / q) / (q - la) / k;
}

JointLaplaceCheck joint_laplace_residual(const ModelParams& params, double lambda, double p) {
    JointLaplaceCheck out;
    out.closed_form = joint_laplace_closed_form(params, lambda, p);
    const double a = params.alpha();
    const double k = params.kappa();

    // x = u (kappa t)^{1/alpha}: the double integral becomes
    //   int_0^inf P(S_1 > u) W(u) du,  W(u) = int_0^inf (kappa t)^{1/alpha} e^{-lambda u (kappa t)^{1/alpha} - p t} dt.
    boost::math::quadrature::exp_sinh<double> half_line;
    boost::math::quadrature::tanh_sinh<double> finite;
    auto weight = [&](double u) {
        auto g = [&](double t) {
            const double r = std::pow(k * t, 1.0 / a);
            return r * std::exp(-lambda * u * r - p * t);
        };
        double err = 0.0;
        const double w = half_line.integrate(g, 1e-13, &err);
        if (!std::isfinite(w)) throw QuadratureError("joint transform: inner time integral failed");
        return w;
    };
    auto outer = [&](double u) {
        if (u <= 0.0) return weight(0.0);
        return survival_reduced(a, u).value * weight(u);
    };
    double err_near = 0.0;
    double err_far = 0.0;
    const double near = finite.integrate(outer, 0.0, 1.0, 1e-11, &err_near);
    const double far = half_line.integrate([&](double v) { return outer(1.0 + v); }, 1e-11, &err_far);
    out.numeric = near + far;
    if (!std::isfinite(out.numeric) || err_near + err_far > 1e-7 * std::max(1.0, std::abs(out.numeric))) {
        throw QuadratureError("joint transform: outer quadrature did not reach tolerance");
    }
    out.residual = std::abs(out.numeric - out.closed_form);
    return out;
}

}  // namespace levysup
