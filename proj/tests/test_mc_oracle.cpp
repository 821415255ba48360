#include "levysup/errors.hpp"
#include "levysup/mc_oracle.hpp"
#include "levysup/passage_time.hpp"
#include "levysup/supremum_law.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace levysup;

namespace {

struct Moments {
    double mean;
    double se;
};

template <class F>
Moments sample_moments(int n, F&& draw) {
    double s = 0.0;
    double s2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = draw(k);
        s += v;
        s2 += v * v;
    }
    const double m = s / n;
    return {m, std::sqrt((s2 / n - m * m) / n)};
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(42, 0);
    RngStream b(42, 0);
    RngStream c(42, 1);
    RngStream d(43, 0);
    for (int k = 0; k < 10; ++k) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
        CHECK(va != d.next_u64());
    }
    RngStream u(1, 2);
    for (int k = 0; k < 100000; ++k) {
        const double v = u.uniform();
        CHECK_UNARY(v > 0.0 && v < 1.0);
    }
}

TEST_CASE("sample_increment: zero mean and Laplace calibration") {
    const ModelParams p = ModelParams::normalized(1.5);
    RngStream rng(42, 0);
    std::vector<double> draws(1000000);
    for (double& v : draws) v = sample_increment(p, 1.0, rng);

    // Infinite variance: the standard error is taken from the Laplace moments instead.
    const Moments lap = sample_moments(int(draws.size()), [&](int k) { return std::exp(-draws[k]); });
    CHECK(std::abs(lap.mean - std::exp(1.0)) <= 3.0 * lap.se);

    // The mean has a heavy right tail; a truncated-tail estimate around 0 is a fair check.
    const Moments m = sample_moments(int(draws.size()), [&](int k) { return std::min(draws[k], 1e3); });
    CHECK(std::abs(m.mean) <= 3.0 * m.se + 0.02);

    // kappa scales the Laplace exponent.
    const ModelParams k2 = ModelParams::from_kappa(1.5, 2.0);
    RngStream r2(7, 0);
    const Moments lap2 = sample_moments(200000, [&](int) { return std::exp(-0.5 * sample_increment(k2, 1.0, r2)); });
    CHECK(std::abs(lap2.mean - std::exp(2.0 * std::pow(0.5, 1.5))) <= 3.0 * lap2.se);
    CHECK_THROWS_AS(sample_increment(p, 0.0, rng), DomainError);
}

TEST_CASE("sample_increment near alpha = 2 looks Gaussian with variance 2") {
    // The variance itself is infinite for alpha < 2, so the sample variance does
    // not settle; the interquartile range of N(0, 2) is 2 * 0.67449 * sqrt(2).
    const ModelParams p = ModelParams::normalized(1.99);
    RngStream rng(42, 0);
    std::vector<double> v(200000);
    for (double& x : v) x = sample_increment(p, 1.0, rng);
    std::sort(v.begin(), v.end());
    const double iqr = v[3 * v.size() / 4] - v[v.size() / 4];
    CHECK(std::abs(iqr / (2.0 * 0.6744897501960817 * std::numbers::sqrt2) - 1.0) < 0.05);
}

TEST_CASE("simulate_supremum invariants") {
    const ModelParams p = ModelParams::normalized(1.5);
    const SupremumSamples s = simulate_supremum(p, 1.0, 1000, 4000, 42, 1);
    CHECK(s.values.size() == 4000);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    CHECK(s.values.front() >= 0.0);

    const SupremumSamples again = simulate_supremum(p, 1.0, 1000, 4000, 42, 3);
    CHECK(again.values == s.values);
    CHECK(again.terminal == s.terminal);

    // Martingale: terminal values centred (truncated to tame the heavy tail).
    double sum = 0.0;
    double sum2 = 0.0;
    for (double x : s.terminal) {
        const double v = std::min(x, 100.0);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / 4000.0;
    const double se = std::sqrt((sum2 / 4000.0 - mean * mean) / 4000.0);
    CHECK(std::abs(mean) <= 3.0 * se + 0.02);

    CHECK_THROWS_AS(simulate_supremum(p, 0.0, 10, 10, 1), DomainError);
    CHECK_THROWS_AS(simulate_supremum(p, 1.0, 0, 10, 1), DomainError);
}

TEST_CASE("supremum samples against the analytic law") {
    const ModelParams p = ModelParams::normalized(1.5);
    const int n = 20000;
    const SupremumSamples s = simulate_supremum(p, 1.0, 1000, n, 42);
    auto F = [&](double x) { return x <= 0.0 ? 0.0 : cdf(p, 1.0, x); };
    // Grid maxima are biased low, so the empirical CDF may only sit above the analytic one.
    CHECK(ks_lower(s.values, F) <= 1.63 / std::sqrt(double(n)));
    for (double x : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double emp = double(std::upper_bound(s.values.begin(), s.values.end(), x) - s.values.begin()) / n;
        const double ana = F(x);
        CHECK(emp >= ana - 3.0 * std::sqrt(ana * (1.0 - ana) / n));
    }
}

TEST_CASE("self-similarity: S_2 and 2^{1/alpha} S_1") {
    const ModelParams p = ModelParams::normalized(1.5);
    const SupremumSamples s1 = simulate_supremum(p, 1.0, 1000, 10000, 1);
    const SupremumSamples s2 = simulate_supremum(p, 2.0, 1000, 10000, 2);
    std::vector<double> scaled = s1.values;
    for (double& v : scaled) v *= std::pow(2.0, 1.0 / 1.5);
    CHECK(ks_two_sample(scaled, s2.values) <= ks_two_sample_critical_1pct(scaled.size(), s2.values.size()));
}

TEST_CASE("refinement diagnostic shrinks the deficit") {
    const ModelParams p = ModelParams::normalized(1.5);
    const RefinementDiagnostic d = refinement_diagnostic(p, 1.0, 500, 5000, 42);
    CHECK(d.mean_fine > d.mean_coarse);
    CHECK(d.richardson > d.mean_fine);
}

TEST_CASE("first_crossing") {
    const ModelParams p = ModelParams::normalized(1.5);
    const int n = 20000;
    const CrossingSamples c = first_crossing(p, 1.0, 1.0, 1000, n, 42);
    for (double t : c.times) CHECK_UNARY(t == kCensored || (t > 0.0 && t <= 1.0));
    const double analytic = passage_cdf(PassageQuery(p, 1.0), 1.0);
    const double emp = c.empirical_cdf(1.0);
    CHECK(std::abs(emp - analytic) <= 3.0 * std::sqrt(analytic * (1.0 - analytic) / n) + 0.01);
    CHECK(c.censored_fraction == doctest::Approx(1.0 - emp));

    const CrossingSamples far = first_crossing(p, 50.0, 1.0, 1000, n, 42);
    const double bound = p.c() / (1.5 * std::pow(50.0, 1.5));
    CHECK(far.empirical_cdf(1.0) <= bound + 3.0 * std::sqrt(bound / n));
}

TEST_CASE("ks_statistic") {
    const std::vector<double> one{0.0};
    CHECK(ks_statistic(one, [](double) { return 0.5; }) == 0.5);
    const std::vector<double> below{-5.0, -4.0, -3.0};
    CHECK(ks_statistic(below, [](double x) { return x < 0.0 ? 0.0 : std::min(x, 1.0); }) == 1.0);
    CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, [](double) { return 0.0; }), DomainError);

    // Inverse-transform draws from the uniform law.
    const int n = 10000;
    RngStream rng(9, 0);
    std::vector<double> u(n);
    for (double& v : u) v = rng.uniform();
    std::sort(u.begin(), u.end());
    CHECK(ks_statistic(u, [](double x) { return std::clamp(x, 0.0, 1.0); }) <= 1.63 / std::sqrt(double(n)));
}

TEST_CASE("sample dump") {
    const ModelParams p = ModelParams::normalized(1.5);
    const SupremumSamples s = simulate_supremum(p, 1.0, 100, 5, 42);
    std::ostringstream os;
    write_samples(os, s);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header.rfind("# alpha=1.5", 0) == 0);
    CHECK(header.find("seed=42") != std::string::npos);
    CHECK(header.find("n_paths=5") != std::string::npos);
    double v = 0.0;
    int count = 0;
    while (is >> v) CHECK(v == s.values[count++]);
    CHECK(count == 5);
}
