#pragma once

#include "levysup/model.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace levysup {

/// splitmix64 stream keyed by (seed, stream index); one per path, never shared.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;

private:
    std::uint64_t state_;
};

/**
 * One increment of X over dt: a totally right-skewed alpha-stable variate
 * with zero mean and E exp(-lambda X) = exp(kappa dt lambda^alpha), drawn by
 * the Chambers-Mallows-Stuck method.
 */
double sample_increment(const ModelParams& params, double dt, RngStream& rng);

/// Worker threads used when a caller passes threads = 0.
unsigned default_thread_count();

struct SupremumSamples {
    ModelParams params;
    double t = 0.0;
    int n_steps = 0;
    int n_paths = 0;
    std::uint64_t seed = 0;
    /// Grid maxima of the partial sums including X_0 = 0, sorted ascending.
    std::vector<double> values;
    /// X_t per path, in path order.
    std::vector<double> terminal;
};

/// Running maxima of n_paths random walks with n_steps steps over [0, t]. Deterministic in (seed, path).
SupremumSamples simulate_supremum(const ModelParams& params, double t, int n_steps, int n_paths,
                                  std::uint64_t seed, unsigned threads = 0);

/// Marker stored for paths that never reach the level before t_max.
inline constexpr double kCensored = std::numeric_limits<double>::infinity();

struct CrossingSamples {
    ModelParams params;
    double x = 0.0;
    double t_max = 0.0;
    int n_steps = 0;
    int n_paths = 0;
    std::uint64_t seed = 0;
    /// First grid time with partial sum >= x, in path order; kCensored if none.
    std::vector<double> times;
    double censored_fraction = 0.0;

    /// Fraction of paths with tau <= t.
    [[nodiscard]] double empirical_cdf(double t) const;
};

CrossingSamples first_crossing(const ModelParams& params, double x, double t_max, int n_steps, int n_paths,
                               std::uint64_t seed, unsigned threads = 0);

/// sup_i max(|i/n - F(s_i)|, |(i-1)/n - F(s_i)|) over sorted samples.
double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// sup (F_emp - F): how far the empirical law sits above the reference.
double ks_upper(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// sup (F - F_emp): how far the empirical law sits below the reference.
double ks_lower(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Two-sample KS distance between sorted samples.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Critical value of the two-sample KS distance at level 1%.
double ks_two_sample_critical_1pct(std::size_t n, std::size_t m);

/**
 * Grid-bias diagnostic on shared paths: mean maxima observed every other
 * step (coarse) and every step (fine). Fine >= coarse path by path. The
 * Richardson value assumes a deficit proportional to n_steps^{-1/alpha}.
 */
struct RefinementDiagnostic {
    double mean_coarse = 0.0;
    double mean_fine = 0.0;
    double richardson = 0.0;
};

RefinementDiagnostic refinement_diagnostic(const ModelParams& params, double t, int n_steps, int n_paths,
                                           std::uint64_t seed, unsigned threads = 0);

/// One value per line after a '#' header with parameters, seed, steps and paths.
void write_samples(std::ostream& os, const SupremumSamples& s);

}  // namespace levysup
