#include "levysup/mc_oracle.hpp"

#include "levysup/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <thread>

namespace levysup {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Constants of the CMS map for beta = 1, scale chosen so that kappa = 1.
struct CmsConstants {
    double alpha;
    double shift;      // B = arctan(tan(pi alpha / 2)) / alpha
    double inv_alpha;
    double exponent;   // (1 - alpha) / alpha

    explicit CmsConstants(double a)
        : alpha(a),
          shift(std::atan(std::tan(0.5 * std::numbers::pi * a)) / a),
          inv_alpha(1.0 / a),
          exponent((1.0 - a) / a) {}

    // sin(a(V+B)) / cos(V)^{1/a} [cos(V - a(V+B)) / W]^{(1-a)/a}. Without the
    // usual (1 + tan^2)^{1/(2a)} factor the scale is sigma^a = |cos(pi a/2)|,
    // which is kappa = 1 in the Laplace exponent.
    double draw(RngStream& rng) const {
        const double v = std::numbers::pi * (rng.uniform() - 0.5);
        const double w = -std::log(rng.uniform());
        const double avb = alpha * (v + shift);
        const double log_mag = -inv_alpha * std::log(std::cos(v)) + exponent * (std::log(std::cos(v - avb)) - std::log(w));
        return std::sin(avb) * std::exp(log_mag);
    }
};

void check_grid(double t, int n_steps, int n_paths) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("simulation horizon must be positive");
    if (n_steps < 1) throw DomainError("n_steps must be >= 1");
    if (n_paths < 1) throw DomainError("n_paths must be >= 1");
}

// Calls body(path) for every path on `threads` workers; each path writes only its own slot.
template <class Body>
void for_each_path(int n_paths, unsigned threads, Body&& body) {
    if (threads == 0) threads = default_thread_count();
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(n_paths)));
    if (threads == 1) {
        for (int p = 0; p < n_paths; ++p) body(p);
        return;
    }
    std::atomic<int> next{0};
    constexpr int chunk = 64;
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) {
        pool.emplace_back([&] {
            for (;;) {
                const int start = next.fetch_add(chunk);
                if (start >= n_paths) return;
                const int stop = std::min(n_paths, start + chunk);
                for (int p = start; p < stop; ++p) body(p);
            }
        });
    }
    for (auto& th : pool) th.join();
}

template <class Cmp>
double ks_sweep(std::span<const double> sorted, const std::function<double(double)>& cdf, Cmp&& pick) {
    if (sorted.empty()) throw DomainError("KS statistic of an empty sample");
    const double n = double(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        worst = std::max(worst, pick((i + 1) / n - f, f - i / n));
    }
    return worst;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : state_(mix(seed + kGolden) ^ mix((stream + 1) * kGolden)) {}

std::uint64_t RngStream::next_u64() noexcept {
    state_ += kGolden;
    return mix(state_);
}

double RngStream::uniform() noexcept { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double sample_increment(const ModelParams& params, double dt, RngStream& rng) {
    if (!(dt > 0.0)) throw DomainError("sample_increment: dt must be positive");
    const CmsConstants cms(params.alpha());
    return std::pow(params.kappa() * dt, 1.0 / params.alpha()) * cms.draw(rng);
}

unsigned default_thread_count() { return std::max(1u, std::thread::hardware_concurrency()); }

SupremumSamples simulate_supremum(const ModelParams& params, double t, int n_steps, int n_paths,
                                  std::uint64_t seed, unsigned threads) {
    check_grid(t, n_steps, n_paths);
    const CmsConstants cms(params.alpha());
    const double scale = std::pow(params.kappa() * t / n_steps, 1.0 / params.alpha());
    SupremumSamples out{params, t, n_steps, n_paths, seed, std::vector<double>(n_paths), std::vector<double>(n_paths)};
    for_each_path(n_paths, threads, [&](int p) {
        RngStream rng(seed, std::uint64_t(p));
        double x = 0.0;
        double m = 0.0;
        for (int k = 0; k < n_steps; ++k) {
            x += scale * cms.draw(rng);
            m = std::max(m, x);
        }
        out.values[p] = m;
        out.terminal[p] = x;
    });
    std::sort(out.values.begin(), out.values.end());
    return out;
}

CrossingSamples first_crossing(const ModelParams& params, double x, double t_max, int n_steps, int n_paths,
                               std::uint64_t seed, unsigned threads) {
    check_grid(t_max, n_steps, n_paths);
    if (!(x > 0.0)) throw DomainError("first_crossing: level must be positive");
    const CmsConstants cms(params.alpha());
    const double dt = t_max / n_steps;
    const double scale = std::pow(params.kappa() * dt, 1.0 / params.alpha());
    CrossingSamples out{params, x, t_max, n_steps, n_paths, seed, std::vector<double>(n_paths, kCensored), 0.0};
    for_each_path(n_paths, threads, [&](int p) {
        RngStream rng(seed, std::uint64_t(p));
        double level = 0.0;
        for (int k = 1; k <= n_steps; ++k) {
            level += scale * cms.draw(rng);
            if (level >= x) {
                out.times[p] = k == n_steps ? t_max : k * dt;
                return;
            }
        }
    });
    const auto censored = std::count(out.times.begin(), out.times.end(), kCensored);
    out.censored_fraction = double(censored) / n_paths;
    return out;
}

double CrossingSamples::empirical_cdf(double t) const {
    const auto hits = std::count_if(times.begin(), times.end(), [&](double s) { return s <= t; });
    return double(hits) / double(times.size());
}

double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    return ks_sweep(sorted, cdf, [](double up, double down) { return std::max(std::abs(up), std::abs(down)); });
}

double ks_upper(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    return ks_sweep(sorted, cdf, [](double up, double) { return up; });
}

double ks_lower(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    return ks_sweep(sorted, cdf, [](double, double down) { return down; });
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DomainError("KS statistic of an empty sample");
    std::size_t i = 0;
    std::size_t j = 0;
    double worst = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        worst = std::max(worst, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return worst;
}

double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
    return 1.628 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

RefinementDiagnostic refinement_diagnostic(const ModelParams& params, double t, int n_steps, int n_paths,
                                           std::uint64_t seed, unsigned threads) {
    check_grid(t, n_steps, n_paths);
    const CmsConstants cms(params.alpha());
    const int fine_steps = 2 * n_steps;
    const double scale = std::pow(params.kappa() * t / fine_steps, 1.0 / params.alpha());
    std::vector<double> coarse(n_paths);
    std::vector<double> fine(n_paths);
    for_each_path(n_paths, threads, [&](int p) {
        RngStream rng(seed, std::uint64_t(p));
        double x = 0.0;
        double mc = 0.0;
        double mf = 0.0;
        for (int k = 1; k <= fine_steps; ++k) {
            x += scale * cms.draw(rng);
            mf = std::max(mf, x);
            if (k % 2 == 0) mc = std::max(mc, x);
        }
        coarse[p] = mc;
        fine[p] = mf;
    });
    RefinementDiagnostic d;
    for (int p = 0; p < n_paths; ++p) {
        d.mean_coarse += coarse[p];
        d.mean_fine += fine[p];
    }
    d.mean_coarse /= n_paths;
    d.mean_fine /= n_paths;
    const double r = std::pow(2.0, 1.0 / params.alpha());
    d.richardson = (r * d.mean_fine - d.mean_coarse) / (r - 1.0);
    return d;
}

void write_samples(std::ostream& os, const SupremumSamples& s) {
    os << "# alpha=" << s.params.alpha() << " kappa=" << s.params.kappa() << " t=" << s.t << " seed=" << s.seed
       << " n_steps=" << s.n_steps << " n_paths=" << s.n_paths << '\n';
    os << std::setprecision(17);
    for (double v : s.values) os << v << '\n';
}

}  // namespace levysup
