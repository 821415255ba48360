#pragma once

#include "levysup/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace levysup {

/// int_a^b g(u) du for g built on the law of S_1 at this alpha; panels split at the regime thresholds.
double integrate_level(double alpha, const std::function<double(double)>& g, double a, double b);

enum class TailCompletion { leading_term, expansion };

/// |int_0^x_cut f_1 + P(S_1 > x_cut) - 1| with the tail mass from the chosen approximation (kappa t = 1).
double normalization_defect(double alpha, double x_cut, TailCompletion completion);

/// E S_t = int_0^inf P(S_t > x) dx by quadrature.
double mean_by_quadrature(const ModelParams& params, double t);

/// E exp(-lambda S_t) = 1 - lambda int_0^inf e^{-lambda x} P(S_t > x) dx by quadrature.
double laplace_by_quadrature(const ModelParams& params, double t, double lambda);

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double runtime_seconds = 0.0;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    bool all_passed = true;
};

enum class VerifyLevel { fast, full };

struct VerifyOptions {
    std::vector<double> alphas{1.3, 1.5, 1.8};
    VerifyLevel level = VerifyLevel::fast;
    std::uint64_t seed = 42;
    /// Monte Carlo worker threads; 0 means hardware concurrency.
    unsigned threads = 0;
    /// Report every runtime as 0 so reports compare byte for byte.
    bool omit_timing = false;
    int mc_paths = 20000;
    int mc_steps = 2000;
};

/// Grid-bias allowance added to binomial errors in Monte Carlo crossing checks.
inline constexpr double kMcBiasAllowance = 0.01;

VerificationReport run_checks(const VerifyOptions& opts);

std::string report_json(const VerificationReport& r);
std::string report_text(const VerificationReport& r);

}  // namespace levysup
