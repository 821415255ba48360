#pragma once

#include <cmath>

namespace levysup {

/**
 * A real number stored as sign and natural log of its magnitude.
 *
 * Used for gamma ratios whose magnitude over- or underflows a double long
 * before the quantity they feed into does. sign == 0 encodes an exact zero,
 * in which case log_magnitude is meaningless.
 */
struct SignedLogValue {
    int sign = 0;
    double log_magnitude = 0.0;
    /// Set when the argument was snapped onto a pole of Gamma (value forced to 0).
    bool snapped_to_pole = false;

    [[nodiscard]] double value() const noexcept {
        return sign == 0 ? 0.0 : sign * std::exp(log_magnitude);
    }
    [[nodiscard]] bool is_zero() const noexcept { return sign == 0; }

    friend SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) noexcept {
        if (a.sign == 0 || b.sign == 0) return {0, 0.0, a.snapped_to_pole || b.snapped_to_pole};
        return {a.sign * b.sign, a.log_magnitude + b.log_magnitude, false};
    }
};

/// Half-width of the neighbourhood around non-positive integers where 1/Gamma is snapped to 0.
inline constexpr double kPoleSnapWidth = 1e-8;

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// 1/Gamma(x) for any real x (entire function), 0 at non-positive integers.
double recip_gamma(double x);

/// 1/Gamma(x) in signed log form; never overflows.
SignedLogValue signed_log_recip_gamma(double x);

/// Gamma(a, x) = int_x^inf y^{a-1} e^{-y} dy for a > 0, x >= 0.
double upper_incomplete_gamma(double a, double x);

/// e^x * Gamma(a, x), finite for all x >= 0 (continued fraction for large x).
double scaled_upper_incomplete_gamma(double a, double x);

/// int_a^inf exp(-z^alpha) dz = Gamma(1/alpha, a^alpha) / alpha, alpha in (1,2), a >= 0.
double stretched_exp_tail(double alpha, double a);

}  // namespace levysup
