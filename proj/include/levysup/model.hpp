#pragma once

#include <cstddef>

namespace levysup {

/// Lower/upper end of the supported stability index range.
inline constexpr double kAlphaMin = 1.02;
inline constexpr double kAlphaMax = 1.99;

/// Throws DomainError unless alpha is inside the supported part of (1,2).
void validate_alpha(double alpha);

/**
 * Law of a spectrally positive alpha-stable Levy process with Levy measure
 * c x^{-1-alpha} dx on (0, inf), zero mean.
 *
 * kappa = c Gamma(-alpha) is the scale in E exp(-lambda X_t) = exp(kappa t lambda^alpha).
 * Immutable after construction.
 */
class ModelParams {
public:
    /// The reference process, c = 1/Gamma(-alpha) so that kappa = 1.
    static ModelParams normalized(double alpha);
    /// General Levy-measure constant c > 0.
    static ModelParams from_levy_constant(double alpha, double c);
    /// Convenience: specify kappa > 0 directly.
    static ModelParams from_kappa(double alpha, double kappa);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double kappa() const noexcept { return kappa_; }
    [[nodiscard]] bool is_normalized() const noexcept;

private:
    ModelParams(double alpha, double c, double kappa) : alpha_(alpha), c_(c), kappa_(kappa) {}

    double alpha_;
    double c_;
    double kappa_;
};

/// Result of summing one of the power series with diagnostics.
struct SeriesEval {
    double value = 0.0;
    std::size_t terms_used = 0;
    double max_term_magnitude = 0.0;
    double truncation_estimate = 0.0;
    bool cancellation_flag = false;
};

/// Ratio max|term| / |sum| above which a series result is considered cancelled.
inline constexpr double kCancellationRatio = 1e8;

}  // namespace levysup
