#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace levysup {

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double v) noexcept {
        add(v);
        return *this;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule (n >= 1). Thread-safe.
const GaussRule& gauss_legendre(int order);

/// Applies `rule` to f on [a, b].
template <class F>
auto integrate_panel(F&& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    using R = decltype(f(mid));
    R acc{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    }
    return acc * half;
}

/**
 * Iterated pairwise averaging of a sequence of partial sums.
 *
 * Repeatedly replaces s_k by (s_k + s_{k+1})/2 until one value is left. For
 * alternating series with smoothly varying magnitudes this is the Euler
 * transform and converges geometrically.
 */
double iterated_average(std::span<const double> partial_sums);

}  // namespace levysup
