#pragma once

#include "levysup/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace levysup {

using LevelFunction = std::function<double(double)>;

/// f(x) = x^{alpha-2} h(x) sampled on nodes starting at 0.
struct GridFunction {
    double alpha = 0.0;
    std::vector<double> nodes;
    std::vector<double> h_values;

    /// f at node i > 0.
    [[nodiscard]] double f_at(std::size_t i) const;
    /// Piecewise-linear h, times x^{alpha-2}; x in (0, nodes.back()].
    [[nodiscard]] double operator()(double x) const;
};

/**
 * Riemann-Liouville derivative of order alpha - 1,
 *   (1/Gamma(2-alpha)) d/dx int_0^x f(y) (x-y)^{1-alpha} dy,
 * by tanh-sinh quadrature of the inner integral at x(1 +- 1e-4) and a
 * central difference. Throws QuadratureError if the inner integral fails.
 */
double rl_derivative(const LevelFunction& f, double alpha, double x);

/// int_0^x (y + (alpha/Gamma(2-alpha)) (x-y)^{1-alpha}) f(y) dy - alpha/Gamma(1/alpha). Needs kappa = 1.
double residual_first_kind(const LevelFunction& f, const ModelParams& params, double x);

/// x f(x) + alpha D^{alpha-1} f(x).
double residual_fde(const LevelFunction& f, double alpha, double x);

/// x^{2-alpha} f(x) at x = 1e-4 minus 1/(Gamma(alpha-1) Gamma(1/alpha)). Needs kappa = 1.
double boundary_check(const LevelFunction& f, const ModelParams& params);

/// Level at which boundary_check samples f.
inline constexpr double kBoundaryProbe = 1e-4;

struct SolveOptions {
    /// Replaces the constant right-hand side b of the h-equation by r(x).
    LevelFunction rhs;
    /// Forces h(0) to this value instead of r(0).
    std::optional<double> initial_value;
    /// Re-solve on the 2x refined mesh and throw MeshTooCoarse on a > 0.1% change.
    bool check_refinement = true;
};

/**
 * Product-integration solve of
 *   h(x) = b - a x^{2-alpha} int_0^x y^{alpha-1} (x-y)^{alpha-2} h(y) dy,
 * a = 1/(alpha Gamma(alpha-1)), b = 1/(Gamma(1/alpha) Gamma(alpha-1)), on a
 * uniform mesh of n_nodes points over [0, x_max]. h is piecewise linear and
 * the kernel moments are incomplete Beta functions. Needs kappa = 1.
 */
GridFunction solve_second_kind(const ModelParams& params, double x_max, int n_nodes, const SolveOptions& opts = {});

/// The constants (a, b) above.
double volterra_a(double alpha);
double volterra_b(double alpha);

}  // namespace levysup
