#include "levysup/verify.hpp"

#include "levysup/errors.hpp"
#include "levysup/mc_oracle.hpp"
#include "levysup/passage_time.hpp"
#include "levysup/supremum_law.hpp"
#include "levysup/tail_expansion.hpp"
#include "levysup/integral_rep.hpp"
#include "levysup/volterra.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace levysup {

namespace {

double quad_finite_smooth(const std::function<double(double)>& g, double a, double b) {
    if (b <= a) return 0.0;
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 12, 1e-13, &err);
    if (!std::isfinite(v)) throw QuadratureError("Gauss-Kronrod quadrature produced a non-finite value");
    return v;
}

double quad_finite_singular(const std::function<double(double)>& g, double a, double b) {
    if (b <= a) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    const double v = ts.integrate(g, a, b, 1e-13);
    if (!std::isfinite(v)) throw QuadratureError("tanh-sinh quadrature produced a non-finite value");
    return v;
}

double quad_half_line(const std::function<double(double)>& g, double a) {
    thread_local boost::math::quadrature::exp_sinh<double> es;
    const double v = es.integrate([&](double s) { return g(a + s); }, 1e-13);
    if (!std::isfinite(v)) throw QuadratureError("exp-sinh quadrature produced a non-finite value");
    return v;
}

double survival1(double alpha, double u) {
    return survival_eval(ModelParams::normalized(alpha), 1.0, u).value;
}

}  // namespace

double integrate_level(double alpha, const std::function<double(double)>& g, double a, double b) {
    const RegimeThresholds& th = regime_thresholds(alpha);
    double total = 0.0;
    const double s1 = std::min(b, th.series_max);
    if (a < s1) total += quad_finite_singular(g, a, s1);
    const double lo2 = std::max(a, th.series_max);
    const double s2 = std::min(b, th.tail_min);
    if (lo2 < s2) total += quad_finite_smooth(g, lo2, s2);
    const double lo3 = std::max(a, th.tail_min);
    if (std::isinf(b)) {
        total += quad_half_line(g, lo3);
    } else if (lo3 < b) {
        total += quad_finite_smooth(g, lo3, b);
    }
    return total;
}

double normalization_defect(double alpha, double x_cut, TailCompletion completion) {
    const ModelParams p = ModelParams::normalized(alpha);
    const double body = integrate_level(alpha, [&](double u) { return u <= 0.0 ? 0.0 : density(p, 1.0, u); }, 0.0, x_cut);
    const double tail = completion == TailCompletion::leading_term ? p.c() * std::pow(x_cut, -alpha) / alpha
                                                                   : tail_expansion_survival(alpha, x_cut).value;
    return std::abs(body + tail - 1.0);
}

double mean_by_quadrature(const ModelParams& params, double t) {
    const double alpha = params.alpha();
    const double scale = std::pow(params.kappa() * t, 1.0 / alpha);
    const double m1 = integrate_level(alpha, [&](double u) { return u <= 0.0 ? 1.0 : survival1(alpha, u); }, 0.0,
                                      std::numeric_limits<double>::infinity());
    return scale * m1;
}

double laplace_by_quadrature(const ModelParams& params, double t, double lambda) {
    const double alpha = params.alpha();
    const double l1 = lambda * std::pow(params.kappa() * t, 1.0 / alpha);
    const double v = integrate_level(
        alpha, [&](double u) { return u <= 0.0 ? 1.0 : std::exp(-l1 * u) * survival1(alpha, u); }, 0.0,
        std::numeric_limits<double>::infinity());
    return 1.0 - l1 * v;
}

// ---------------------------------------------------------------------------

namespace {

std::string tag(const std::string& name, double alpha) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s[alpha=%g]", name.c_str(), alpha);
    return buf;
}

class Runner {
public:
    explicit Runner(bool omit_timing) : omit_timing_(omit_timing) {}

    // body returns the residual; a thrown error counts as an infinite residual.
    template <class Body>
    void run(const std::string& name, double tolerance, Body&& body) {
        const auto start = std::chrono::steady_clock::now();
        CheckRecord rec;
        rec.name = name;
        rec.tolerance = tolerance;
        try {
            rec.residual = std::abs(body());
        } catch (const std::exception&) {
            rec.residual = std::numeric_limits<double>::infinity();
        }
        rec.passed = std::isfinite(rec.residual) && rec.residual <= tolerance;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rec.runtime_seconds = omit_timing_ ? 0.0 : secs;
        report_.all_passed = report_.all_passed && rec.passed;
        report_.checks.push_back(rec);
    }

    VerificationReport take() { return std::move(report_); }

private:
    bool omit_timing_;
    VerificationReport report_;
};

void analytic_checks(Runner& r, double alpha) {
    const ModelParams p = ModelParams::normalized(alpha);
    auto f = [p](double x) { return density(p, 1.0, x); };

    r.run(tag("coefficient_identity", alpha), 1e-11, [&] {
        double worst = 0.0;
        for (int n = 1; n <= 50; ++n) {
            const double closed = series_coefficient(alpha, n, CoefficientMethod::closed_form);
            if (closed == 0.0) continue;
            const double rec = series_coefficient(alpha, n, CoefficientMethod::recurrence);
            worst = std::max(worst, std::abs(rec - closed) / std::abs(closed));
        }
        return worst;
    });

    r.run(tag("series_vs_integral", alpha), 1e-6, [&] {
        double worst = 0.0;
        for (int k = 1; k <= 30; ++k) {
            const double x = 0.1 * k;
            const SeriesEval s = density_series(p, 1.0, x);
            if (s.cancellation_flag) continue;
            worst = std::max(worst, std::abs(s.value / density_integral(alpha, x) - 1.0));
        }
        return worst;
    });

    r.run(tag("volterra_vs_series", alpha), 1e-3, [&] {
        const GridFunction g = solve_second_kind(p, 3.0, 512);
        double worst = 0.0;
        for (std::size_t i = 1; i < g.nodes.size(); ++i) {
            if (g.nodes[i] < 0.1) continue;
            worst = std::max(worst, std::abs(g.f_at(i) / f(g.nodes[i]) - 1.0));
        }
        return worst;
    });

    r.run(tag("residual_first_kind", alpha), 1e-6, [&] {
        double worst = 0.0;
        for (double x : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(residual_first_kind(f, p, x)));
        return worst;
    });

    r.run(tag("residual_fde", alpha), 1e-5, [&] {
        double worst = 0.0;
        for (double x : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(residual_fde(f, alpha, x)));
        return worst;
    });

    r.run(tag("boundary_check", alpha), 1e-3, [&] { return boundary_check(f, p); });

    r.run(tag("normalization", alpha), 1e-4,
          [&] { return normalization_defect(alpha, 20.0, TailCompletion::expansion); });

    r.run(tag("mean_quadrature", alpha), 1e-4, [&] { return mean_by_quadrature(p, 1.0) - mean_supremum(p, 1.0); });

    r.run(tag("laplace_quadrature", alpha), 1e-5, [&] {
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0}) {
            worst = std::max(worst, std::abs(laplace_by_quadrature(p, 1.0, lambda) - laplace_supremum(p, 1.0, lambda)));
        }
        return worst;
    });

    r.run(tag("joint_laplace", alpha), 1e-4, [&] {
        double worst = 0.0;
        for (auto [lambda, q] : {std::pair{1.0, 2.0}, {0.5, 1.0}, {2.0, 5.0}}) {
            worst = std::max(worst, joint_laplace_residual(p, lambda, q).residual);
        }
        return worst;
    });
}

void monte_carlo_checks(Runner& r, double alpha, const VerifyOptions& o) {
    const ModelParams p = ModelParams::normalized(alpha);
    const SupremumSamples s = simulate_supremum(p, 1.0, o.mc_steps, o.mc_paths, o.seed, o.threads);

    // Grid maxima sit below the true supremum, so only F - F_emp is free of grid bias.
    r.run(tag("mc_ks_lower", alpha), 0.015, [&] {
        return ks_lower(s.values, [&](double x) { return x <= 0.0 ? 0.0 : cdf(p, 1.0, x); });
    });

    const CrossingSamples c = first_crossing(p, 1.0, 1.0, o.mc_steps, o.mc_paths, o.seed, o.threads);
    const double analytic = passage_cdf(PassageQuery(p, 1.0), 1.0);
    const double se = std::sqrt(analytic * (1.0 - analytic) / o.mc_paths);
    r.run(tag("mc_crossing", alpha), 3.0 * se + kMcBiasAllowance, [&] { return c.empirical_cdf(1.0) - analytic; });

    // Laplace transform of single increments: E e^{-X_1} = e^{kappa}.
    double sum = 0.0;
    double sum2 = 0.0;
    for (int k = 0; k < o.mc_paths; ++k) {
        RngStream rng(o.seed ^ 0x5A5A5A5AULL, std::uint64_t(k));
        const double e = std::exp(-sample_increment(p, 1.0, rng));
        sum += e;
        sum2 += e * e;
    }
    const double mean = sum / o.mc_paths;
    const double sd = std::sqrt(std::max(0.0, sum2 / o.mc_paths - mean * mean));
    r.run(tag("mc_increment_laplace", alpha), 3.0 * sd / std::sqrt(double(o.mc_paths)),
          [&] { return mean - std::exp(p.kappa()); });
}

}  // namespace

VerificationReport run_checks(const VerifyOptions& opts) {
    for (double a : opts.alphas) validate_alpha(a);
    Runner r(opts.omit_timing);
    for (double a : opts.alphas) analytic_checks(r, a);
    if (opts.level == VerifyLevel::full) {
        for (double a : opts.alphas) monte_carlo_checks(r, a, opts);
    }
    return r.take();
}

std::string report_json(const VerificationReport& r) {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const CheckRecord& c : r.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"residual", std::isfinite(c.residual) ? nlohmann::json(c.residual) : nlohmann::json("inf")},
                               {"tolerance", c.tolerance},
                               {"passed", c.passed},
                               {"runtime_seconds", c.runtime_seconds}});
    }
    j["all_passed"] = r.all_passed;
    return j.dump(2) + "\n";
}

std::string report_text(const VerificationReport& r) {
    std::ostringstream os;
    for (const CheckRecord& c : r.checks) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s %-40s residual=%.6e tolerance=%.3e time=%.3fs\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.residual, c.tolerance, c.runtime_seconds);
        os << buf;
    }
    os << "all_passed: " << (r.all_passed ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace levysup
