#include "levysup/quadrature.hpp"

#include "levysup/errors.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace levysup {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 2) throw DomainError("gauss_legendre: order must be at least 2");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(order));
    return *slot;
}

double iterated_average(std::span<const double> partial_sums) {
    if (partial_sums.empty()) return 0.0;
    std::vector<double> work(partial_sums.begin(), partial_sums.end());
    for (std::size_t len = work.size(); len > 1; --len) {
        for (std::size_t k = 0; k + 1 < len; ++k) work[k] = 0.5 * (work[k] + work[k + 1]);
    }
    return work.front();
}

}  // namespace levysup
