// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "levysup/integral_rep.hpp"
#include "levysup/mc_oracle.hpp"
#include "levysup/passage_time.hpp"
#include "levysup/special_fn.hpp"
#include "levysup/supremum_law.hpp"
#include "levysup/verify.hpp"
#include "levysup/volterra.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace levysup;

namespace {

int failures = 0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "!") + what;
    }
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) out.require(false, fmt("runtime %.1f s over budget %.0f s", secs, budget_s));
    if (!out.pass) ++failures;
    std::printf("%s %2d %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", id, title, secs, out.detail.c_str());
    std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome coefficients() {
    Outcome o;
    for (double alpha : {1.2, 1.5, 1.8}) {
        double worst = 0.0;
        for (int n = 1; n <= 50; ++n) {
            const double c = series_coefficient(alpha, n, CoefficientMethod::closed_form);
            const double r = series_coefficient(alpha, n, CoefficientMethod::recurrence);
            if (c == 0.0) {
                worst = std::max(worst, std::abs(r));
                continue;
            }
            worst = std::max(worst, rel(r, c));
        }
        o.require(worst <= 1e-11, fmt("a=%.1f max rel %.2e", alpha, worst));
    }
    return o;
}

Outcome three_way() {
    Outcome o;
    for (double alpha : {1.3, 1.5, 1.8}) {
        const ModelParams p = ModelParams::normalized(alpha);
        double worst_si = 0.0;
        for (int i = 1; i <= 30; ++i) {
            const double x = 0.1 * i;
            const SeriesEval s = density_series(p, 1.0, x);
            if (s.cancellation_flag) continue;
            worst_si = std::max(worst_si, rel(s.value, density_integral(alpha, x)));
        }
        const GridFunction g = solve_second_kind(p, 3.0, 512, {});
        double worst_vs = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double x = g.nodes[i];
            if (x < 0.1) continue;
            worst_vs = std::max(worst_vs, rel(g.f_at(i), density_series(p, 1.0, x).value));
        }
        o.require(worst_si <= 1e-6, fmt("a=%.1f series/integral %.2e", alpha, worst_si));
        o.require(worst_vs <= 1e-3, fmt("a=%.1f solver/series %.2e", alpha, worst_vs));
    }
    return o;
}

Outcome residuals() {
    Outcome o;
    for (double alpha : {1.3, 1.5, 1.8}) {
        const ModelParams p = ModelParams::normalized(alpha);
        const LevelFunction f = [p](double x) { return density(p, 1.0, x); };
        double r1 = 0.0;
        double r2 = 0.0;
        for (double x : {0.5, 1.0, 2.0}) {
            r1 = std::max(r1, std::abs(residual_first_kind(f, p, x)));
            r2 = std::max(r2, std::abs(residual_fde(f, alpha, x)));
        }
        const double b = std::abs(boundary_check(f, p));
        o.require(r1 <= 1e-6, fmt("a=%.1f first kind %.2e", alpha, r1));
        o.require(r2 <= 1e-5, fmt("a=%.1f fde %.2e", alpha, r2));
        o.require(b <= 1e-3, fmt("a=%.1f boundary %.2e", alpha, b));
    }
    return o;
}

Outcome moments() {
    Outcome o;
    for (double alpha : {1.3, 1.5, 1.8}) {
        const double d = normalization_defect(alpha, 20.0, TailCompletion::leading_term);
        o.require(d <= 1e-4, fmt("a=%.1f cdf defect at x=20 %.2e", alpha, d));
    }
    const ModelParams p = ModelParams::normalized(1.5);
    const double m = std::abs(mean_by_quadrature(p, 1.0) - mean_supremum(p, 1.0));
    o.require(m <= 1e-4, fmt("mean %.2e", m));
    for (double lambda : {0.5, 1.0, 2.0}) {
        const double l = std::abs(laplace_by_quadrature(p, 1.0, lambda) - laplace_supremum(p, 1.0, lambda));
        o.require(l <= 1e-5, fmt("laplace lambda=%.1f %.2e", lambda, l));
    }
    return o;
}

Outcome joint() {
    Outcome o;
    const ModelParams p = ModelParams::normalized(1.5);
    for (auto [lambda, q] : {std::pair{1.0, 2.0}, {0.5, 1.0}, {2.0, 5.0}}) {
        const double r = joint_laplace_residual(p, lambda, q).residual;
        o.require(r <= 1e-4, fmt("(%.1f,%.1f) ", lambda, q) + fmt("%.2e", r));
    }
    return o;
}

Outcome asymptotics() {
    Outcome o;
    const ModelParams p = ModelParams::normalized(1.5);
    const double b = std::abs(boundary_check([p](double x) { return density(p, 1.0, x); }, p));
    o.require(b <= 1e-3, fmt("x^{2-a} f at 1e-4 off by %.2e", b));
    const double r10 = density(p, 1.0, 10.0) / tail_asymptotic(p, 1.0, 10.0);
    const double r20 = density(p, 1.0, 20.0) / tail_asymptotic(p, 1.0, 20.0);
    o.require(r10 >= 0.9 && r10 <= 1.1, fmt("tail ratio x=10 %.4f", r10));
    o.require(r20 >= 0.95 && r20 <= 1.05, fmt("tail ratio x=20 %.4f", r20));
    return o;
}

Outcome brownian() {
    Outcome o;
    const ModelParams p = ModelParams::normalized(1.99);
    double worst = 0.0;
    double at = 0.0;
    for (double x = 0.2; x <= 3.0 + 1e-12; x += 0.05) {
        const double g = std::exp(-x * x / 4.0) / std::sqrt(std::numbers::pi);
        const double r = rel(density(p, 1.0, x), g);
        if (r > worst) {
            worst = r;
            at = x;
        }
    }
    o.require(worst <= 0.05, fmt("max rel %.4f at x=%.2f", worst, at));
    return o;
}

Outcome passage() {
    Outcome o;
    const ModelParams p = ModelParams::normalized(1.5);
    const PassageQuery q(p, 1.0);
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    auto dens = [&](double t) { return t <= 0.0 ? 0.0 : passage_density(q, t); };

    double worst_cdf = 0.0;
    const std::vector<double> cuts{0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double lhs = ts.integrate(dens, a, b, 1e-11);
        const double rhs = passage_cdf(q, b) - (a > 0.0 ? passage_cdf(q, a) : 0.0);
        worst_cdf = std::max(worst_cdf, std::abs(lhs - rhs));
    }
    o.require(worst_cdf <= 1e-6, fmt("density vs cdf differences %.2e", worst_cdf));

    double worst_lap = 0.0;
    for (double s : {0.5, 1.0, 2.0}) {
        auto g = [&](double t) { return std::exp(-s * t) * dens(t); };
        const double num = ts.integrate(g, 0.0, 1.0, 1e-11) + es.integrate([&](double v) { return g(1.0 + v); }, 1e-11);
        worst_lap = std::max(worst_lap, std::abs(num - passage_laplace(q, s)));
    }
    o.require(worst_lap <= 1e-5, fmt("laplace vs quadrature %.2e", worst_lap));
    return o;
}

Outcome monte_carlo() {
    Outcome o;
    constexpr int kPaths = 100000;
    constexpr int kSteps = 10000;
    constexpr std::uint64_t kSeed = 42;
    const ModelParams p = ModelParams::normalized(1.5);
    const SupremumSamples s = simulate_supremum(p, 1.0, kSteps, kPaths, kSeed);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (double x : s.terminal) {
        const double e = std::exp(-x);
        sum += e;
        sum_sq += e * e;
    }
    const double n = kPaths;
    const double mean_e = sum / n;
    const double se = std::sqrt(std::max(sum_sq / n - mean_e * mean_e, 0.0) / n);
    const double target = std::exp(p.kappa());
    o.require(std::abs(mean_e - target) <= 3.0 * se,
              fmt("E e^{-X_1} %.5f", mean_e) + fmt(" vs %.5f", target) + fmt(" (%.2f SE)", std::abs(mean_e - target) / se));

    double total = 0.0;
    for (double v : s.values) total += v;
    const double analytic = mean_supremum(p, 1.0);
    const double deficit = (analytic - total / n) / analytic;
    o.require(deficit >= 0.0 && deficit <= 0.02, fmt("mean deficit %.4f", deficit));

    const double ks = ks_lower(s.values, [&](double x) { return x <= 0.0 ? 0.0 : cdf(p, 1.0, x); });
    o.require(ks <= 0.015, fmt("one-sided KS %.4f", ks));

    const CrossingSamples c = first_crossing(p, 1.0, 1.0, kSteps, kPaths, kSeed);
    const double emp = c.empirical_cdf(1.0);
    const double exact = passage_cdf(PassageQuery(p, 1.0), 1.0);
    const double bse = std::sqrt(exact * (1.0 - exact) / n);
    o.require(std::abs(emp - exact) <= 3.0 * bse + kMcBiasAllowance,
              fmt("P(tau_1<=1) %.5f vs %.5f", emp, exact));
    return o;
}

Outcome determinism() {
    Outcome o;
    VerifyOptions opts;
    opts.level = VerifyLevel::full;
    opts.seed = 42;
    opts.omit_timing = true;
    opts.threads = 1;
    const std::string a = report_json(run_checks(opts));
    const std::string b = report_json(run_checks(opts));
    opts.threads = 4;
    const std::string c = report_json(run_checks(opts));
    o.require(a == b, "repeat run identical");
    o.require(a == c, "1 vs 4 threads identical");
    return o;
}

}  // namespace

int main() {
    criterion(1, "coefficient identity", 1.0, coefficients);
    criterion(2, "three-way density agreement", 120.0, three_way);
    criterion(3, "integral equation residuals", 60.0, residuals);
    criterion(4, "normalization and moments", 60.0, moments);
    criterion(5, "joint transform", 60.0, joint);
    criterion(6, "asymptotics", 30.0, asymptotics);
    criterion(7, "Brownian limit", 30.0, brownian);
    criterion(8, "passage-time consistency", 60.0, passage);

    const auto t0 = std::chrono::steady_clock::now();
    criterion(9, "Monte Carlo", 600.0, monte_carlo);
    const double mc_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    criterion(10, "determinism", 600.0 - mc_secs, determinism);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
