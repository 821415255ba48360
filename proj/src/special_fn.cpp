#include "levysup/special_fn.hpp"

#include "levysup/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace levysup {

namespace {

// Largest |x| for which tgamma stays finite in double precision.
constexpr double kDirectGammaLimit = 170.0;

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    }
    return boost::math::lgamma(x);
}

SignedLogValue signed_log_recip_gamma(double x) {
    if (x > 0.0) {
        return {1, -boost::math::lgamma(x), false};
    }
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < kPoleSnapWidth) {
        return {0, 0.0, true};
    }
    // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi.
    const double s = boost::math::sin_pi(x);
    return {s > 0.0 ? 1 : -1,
            boost::math::lgamma(1.0 - x) + std::log(std::abs(s)) - std::log(std::numbers::pi), false};
}

double recip_gamma(double x) {
    if (x > 0.0) {
        if (x < kDirectGammaLimit) return 1.0 / boost::math::tgamma(x);
        return std::exp(-boost::math::lgamma(x));
    }
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < kPoleSnapWidth) return 0.0;
    if (x > -kDirectGammaLimit) {
        return boost::math::sin_pi(x) * boost::math::tgamma(1.0 - x) / std::numbers::pi;
    }
    return signed_log_recip_gamma(x).value();
}

double upper_incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("upper_incomplete_gamma: a must be positive");
    if (!(x >= 0.0)) throw DomainError("upper_incomplete_gamma: x must be non-negative");
    if (x == 0.0) return boost::math::tgamma(a);
    return boost::math::tgamma(a, x);
}

double scaled_upper_incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("scaled_upper_incomplete_gamma: a must be positive");
    if (!(x >= 0.0)) throw DomainError("scaled_upper_incomplete_gamma: x must be non-negative");
    if (x < 30.0) return std::exp(x) * upper_incomplete_gamma(a, x);

    // Modified Lentz evaluation of the Legendre continued fraction
    // Gamma(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - 2(2-a)/(x+5-a - ...))).
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return std::exp(a * std::log(x)) * h;
    }
    throw ConvergenceError("scaled_upper_incomplete_gamma: continued fraction did not converge");
}

double stretched_exp_tail(double alpha, double a) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw DomainError("stretched_exp_tail: alpha must lie in the open interval (1,2)");
    }
    if (!(a >= 0.0)) throw DomainError("stretched_exp_tail: a must be non-negative");
    return upper_incomplete_gamma(1.0 / alpha, std::pow(a, alpha)) / alpha;
}

}  // namespace levysup
