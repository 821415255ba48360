#include "levysup/volterra.hpp"

#include "levysup/errors.hpp"
#include "levysup/special_fn.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace levysup {

namespace {

constexpr double kRelStep = 1e-4;

void require_level(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("level x must be positive and finite");
}

void require_unit_kappa(const ModelParams& p) {
    if (!p.is_normalized()) throw DomainError("this check needs kappa = 1; rescale first");
}

template <class F>
double tanh_sinh_checked(F&& g, double a, double b) {
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0;
    double l1 = 0.0;
    const double v = ts.integrate(g, a, b, 1e-14, &err, &l1);
    if (!std::isfinite(v) || err > 1e-9 * std::max(1.0, l1)) {
        std::ostringstream os;
        os << "singular quadrature on [" << a << ", " << b << "] failed (error estimate " << err << ")";
        throw QuadratureError(os.str());
    }
    return v;
}

// int_0^x f(y) (x-y)^{1-alpha} dy, split at x/2 so both singular endpoints sit at 0.
double abel_integral(const LevelFunction& f, double alpha, double x) {
    const double half = 0.5 * x;
    const double left = tanh_sinh_checked([&](double y) { return f(y) * std::pow(x - y, 1.0 - alpha); }, 0.0, half);
    const double right = tanh_sinh_checked(
        [&](double v) { return v <= 0.0 ? 0.0 : f(x - v) * std::pow(v, 1.0 - alpha); }, 0.0, half);
    return left + right;
}

/**
 * Regularized incomplete Beta I_s(mu, alpha-1) at s_j = j/i, j = 0..i, stored
 * as I for s < 1/2 and as I - 1 = -ibetac above, so differences stay accurate
 * next to the (1-s)^{alpha-2} singularity.
 */
void beta_profile(double mu, double nu, int i, std::vector<double>& out) {
    out.resize(i + 1);
    for (int j = 0; j <= i; ++j) {
        const double s = double(j) / i;
        out[j] = s < 0.5 ? boost::math::ibeta(mu, nu, s) : -boost::math::ibetac(mu, nu, s);
    }
}

double profile_diff(const std::vector<double>& v, int j, int i) {
    const bool lo_upper = 2 * j >= i;
    const bool hi_upper = 2 * (j + 1) >= i;
    return v[j + 1] - v[j] + (hi_upper && !lo_upper ? 1.0 : 0.0);
}

std::vector<double> forward_solve(double alpha, double x_max, int n, const SolveOptions& opts) {
    const double a = volterra_a(alpha);
    const double b = volterra_b(alpha);
    const double nu = alpha - 1.0;
    const double beta0 = boost::math::beta(alpha, nu);
    const double beta1 = boost::math::beta(alpha + 1.0, nu);
    const double step = x_max / (n - 1);
    auto rhs = [&](double x) { return opts.rhs ? opts.rhs(x) : b; };

    std::vector<double> h(n);
    std::vector<double> prof0;
    std::vector<double> prof1;
    h[0] = opts.initial_value.value_or(rhs(0.0));
    for (int i = 1; i < n; ++i) {
        const double x = i * step;
        // int_p^q y^{mu-1} (x-y)^{alpha-2} dy = x^{mu+alpha-2} B(mu, alpha-1) [I_{q/x} - I_{p/x}]
        beta_profile(alpha, nu, i, prof0);
        beta_profile(alpha + 1.0, nu, i, prof1);
        const double scale0 = std::pow(x, 2.0 * alpha - 2.0) * beta0;
        const double scale1 = std::pow(x, 2.0 * alpha - 1.0) * beta1;
        double known = 0.0;
        double self_weight = 0.0;
        for (int j = 0; j < i; ++j) {
            const double p = j * step;
            const double q = (j + 1) * step;
            const double m0 = scale0 * profile_diff(prof0, j, i);
            const double m1 = scale1 * profile_diff(prof1, j, i);
            // h on [p, q] is h_j (q-y)/step + h_{j+1} (y-p)/step.
            const double w_left = (q * m0 - m1) / step;
            const double w_right = (m1 - p * m0) / step;
            known += h[j] * w_left;
            if (j + 1 < i) known += h[j + 1] * w_right;
            else self_weight = w_right;
        }
        const double g = a * std::pow(x, 2.0 - alpha);
        h[i] = (rhs(x) - g * known) / (1.0 + g * self_weight);
    }
    return h;
}

}  // namespace

double GridFunction::f_at(std::size_t i) const {
    if (i == 0 || i >= nodes.size()) throw DomainError("GridFunction::f_at: index out of range");
    return std::pow(nodes[i], alpha - 2.0) * h_values[i];
}

double GridFunction::operator()(double x) const {
    if (!(x > 0.0) || x > nodes.back()) throw DomainError("GridFunction: x outside (0, x_max]");
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    const std::size_t j = std::min<std::size_t>(std::size_t(it - nodes.begin()), nodes.size() - 1);
    const double p = nodes[j - 1];
    const double q = nodes[j];
    const double h = h_values[j - 1] + (h_values[j] - h_values[j - 1]) * (x - p) / (q - p);
    return std::pow(x, alpha - 2.0) * h;
}

double volterra_a(double alpha) { return recip_gamma(alpha - 1.0) / alpha; }

double volterra_b(double alpha) { return recip_gamma(1.0 / alpha) * recip_gamma(alpha - 1.0); }

double rl_derivative(const LevelFunction& f, double alpha, double x) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha must lie in the open interval (1,2)");
    require_level(x);
    const double hi = abel_integral(f, alpha, x * (1.0 + kRelStep));
    const double lo = abel_integral(f, alpha, x * (1.0 - kRelStep));
    return (hi - lo) / (2.0 * kRelStep * x) * recip_gamma(2.0 - alpha);
}

double residual_first_kind(const LevelFunction& f, const ModelParams& params, double x) {
    require_unit_kappa(params);
    require_level(x);
    const double alpha = params.alpha();
    const double linear = tanh_sinh_checked([&](double y) { return y * f(y); }, 0.0, x);
    const double abel = abel_integral(f, alpha, x);
    return linear + alpha * recip_gamma(2.0 - alpha) * abel - alpha * recip_gamma(1.0 / alpha);
}

double residual_fde(const LevelFunction& f, double alpha, double x) {
    return x * f(x) + alpha * rl_derivative(f, alpha, x);
}

double boundary_check(const LevelFunction& f, const ModelParams& params) {
    require_unit_kappa(params);
    const double alpha = params.alpha();
    return std::pow(kBoundaryProbe, 2.0 - alpha) * f(kBoundaryProbe) - volterra_b(alpha);
}

GridFunction solve_second_kind(const ModelParams& params, double x_max, int n_nodes, const SolveOptions& opts) {
    require_unit_kappa(params);
    require_level(x_max);
    if (n_nodes < 16) throw DomainError("solve_second_kind: n_nodes must be >= 16");
    const double alpha = params.alpha();

    GridFunction out;
    out.alpha = alpha;
    out.nodes.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) out.nodes[i] = x_max * i / (n_nodes - 1);
    out.nodes.back() = x_max;
    out.h_values = forward_solve(alpha, x_max, n_nodes, opts);

    if (opts.check_refinement) {
        const std::vector<double> fine = forward_solve(alpha, x_max, 2 * n_nodes - 1, opts);
        double scale = 0.0;
        double change = 0.0;
        for (int i = 0; i < n_nodes; ++i) {
            scale = std::max(scale, std::abs(out.h_values[i]));
            change = std::max(change, std::abs(fine[2 * i] - out.h_values[i]));
        }
        if (change > 1e-3 * scale) {
            std::ostringstream os;
            os << "mesh too coarse: refining " << n_nodes << " nodes by 2x changes h by " << change / scale
               << " relative";
            throw MeshTooCoarse(os.str());
        }
    }
    return out;
}

}  // namespace levysup
