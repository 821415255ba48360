#include "levysup/integral_rep.hpp"

#include "levysup/errors.hpp"
#include "levysup/model.hpp"
#include "levysup/quadrature.hpp"
#include "levysup/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace levysup {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// e^{y cos(a pi/2)} below this is treated as zero.
constexpr double kLogNegligible = 41.5;  // e^-41.5 ~ 1e-18
constexpr int kChebDegree = 24;
constexpr int kOuterOrder = 20;

/**
 * Per-alpha machinery for K(T) = int_0^T e^{(T-w) z} w^{1/a - 1} dw with
 * z = e^{i a pi/2}. The inner integral of the inversion formula equals
 * Im[e^{itx} K(t^a)].
 *
 *   T <= 1          power series (exact, no cancellation at |Tz| <= 1)
 *   1 < T <= T_big  Chebyshev tables built from composite Gauss-Legendre
 *   T > T_big       asymptotic expansion in 1/T
 */
class TransformTable {
public:
    TransformTable(double alpha, int inner_order) : alpha_(alpha), s_(1.0 / alpha) {
        const double theta = 0.5 * kPi * alpha;
        z_ = cplx(std::cos(theta), std::sin(theta));
        inv_gamma_s_ = recip_gamma(s_);
        y_cut_ = kLogNegligible / std::abs(z_.real());
        t_upper_ = std::ceil(std::max(y_cut_, 60.0));
        p1_ = unit_series(1.0);
        build_tables(inner_order);
    }

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double theta() const { return 0.5 * kPi * alpha_; }
    [[nodiscard]] double t_big() const { return std::pow(t_upper_, 1.0 / alpha_); }

    [[nodiscard]] cplx kernel(double big_t) const {
        if (big_t <= 1.0) return std::exp(big_t * z_) * unit_series(big_t);
        if (big_t <= t_upper_) return chebyshev(big_t);
        return asymptotic(big_t);
    }

    // L(it) = e^{t^a z} - i K(t^a) / Gamma(1/a).
    [[nodiscard]] cplx transform(double t) const {
        const double big_t = std::pow(t, alpha_);
        const cplx k = kernel(big_t);
        const cplx e = big_t <= t_upper_ ? std::exp(big_t * z_) : cplx(0.0, 0.0);
        return e - cplx(0.0, 1.0) * k * inv_gamma_s_;
    }

private:
    // T^s sum_k (-T z)^k / (k! (k + s)), i.e. int_0^T e^{-wz} w^{s-1} dw.
    [[nodiscard]] cplx unit_series(double big_t) const {
        if (big_t == 0.0) return {0.0, 0.0};
        const cplx q = -big_t * z_;
        cplx power(1.0, 0.0);
        cplx sum(0.0, 0.0);
        for (int k = 0; k < 200; ++k) {
            const cplx term = power / (k + s_);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            power *= q / double(k + 1);
        }
        return std::pow(big_t, s_) * sum;
    }

    [[nodiscard]] cplx direct(double big_t, const GaussRule& rule) const {
        cplx acc = std::exp(big_t * z_) * p1_;
        const double lo = std::max(1.0, big_t - y_cut_ - 5.0);
        const double width = std::abs(z_.real()) < 0.2 ? 2.0 : 1.0;
        const int panels = std::max(1, int(std::ceil((big_t - lo) / width)));
        const double h = (big_t - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double a = lo + p * h;
            acc += integrate_panel(
                [&](double w) { return std::exp((big_t - w) * z_) * std::pow(w, s_ - 1.0); }, a, a + h,
                rule);
        }
        return acc;
    }

    void build_tables(int inner_order) {
        const GaussRule& rule = gauss_legendre(inner_order);
        const int intervals = int(t_upper_) - 1;
        cheb_.resize(intervals);
        std::array<cplx, kChebDegree> values{};
        for (int k = 0; k < intervals; ++k) {
            const double mid = 1.5 + k;
            for (int j = 0; j < kChebDegree; ++j) {
                values[j] = direct(mid + 0.5 * std::cos(kPi * (j + 0.5) / kChebDegree), rule);
            }
            for (int m = 0; m < kChebDegree; ++m) {
                cplx c(0.0, 0.0);
                for (int j = 0; j < kChebDegree; ++j) {
                    c += values[j] * std::cos(kPi * m * (j + 0.5) / kChebDegree);
                }
                cheb_[k][m] = c * (2.0 / kChebDegree);
            }
        }
    }

    [[nodiscard]] cplx chebyshev(double big_t) const {
        int k = std::min(int(big_t) - 1, int(cheb_.size()) - 1);
        k = std::max(k, 0);
        const double u = 2.0 * (big_t - (1.5 + k));
        const auto& c = cheb_[k];
        cplx b1(0.0, 0.0);
        cplx b2(0.0, 0.0);
        for (int m = kChebDegree - 1; m >= 1; --m) {
            const cplx b0 = 2.0 * u * b1 - b2 + c[m];
            b2 = b1;
            b1 = b0;
        }
        return u * b1 - b2 + 0.5 * c[0];
    }

    // T^{s-1} sum_j (1-s)_j / ((-z)^{j+1} T^j).
    [[nodiscard]] cplx asymptotic(double big_t) const {
        const cplx inv_mz = -1.0 / z_;
        cplx term = inv_mz;
        cplx sum = term;
        for (int j = 1; j < 400; ++j) {
            const cplx next = term * ((j - s_) / big_t) * inv_mz;
            if (std::abs(next) > std::abs(term)) break;
            term = next;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return std::pow(big_t, s_ - 1.0) * sum;
    }

    double alpha_;
    double s_;
    cplx z_;
    double inv_gamma_s_ = 0.0;
    double y_cut_ = 0.0;
    double t_upper_ = 0.0;
    cplx p1_;
    std::vector<std::array<cplx, kChebDegree>> cheb_;
};

const TransformTable& table_for(double alpha, int inner_order) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, std::unique_ptr<TransformTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{alpha, inner_order}];
    if (!slot) slot = std::make_unique<TransformTable>(alpha, inner_order);
    return *slot;
}

enum class Inversion { density, cdf };

// Integrates g over [a, b] with panels no longer than the local t (geometric
// grading towards 0), than 3/x in phase, and than unit steps in t^alpha while
// the kernel is below its asymptotic regime.
template <class G>
double integrate_graded(G&& g, double a, double b, double x, double alpha, double t_big) {
    const GaussRule& rule = gauss_legendre(kOuterOrder);
    CompensatedSum acc;
    double left = a;
    while (left < b) {
        double step = std::min(b - left, 3.0 / x);
        if (left > 0.0) step = std::min(step, left);
        if (left < t_big) step = std::min(step, 1.0 / (alpha * std::pow(std::max(left, 1.0), alpha - 1.0)));
        const double right = (b - left - step < 1e-12 * b) ? b : left + step;
        acc += integrate_panel(g, left, right, rule);
        left = right;
    }
    return acc.value();
}

double invert(double alpha, double x, const OscIntegralConfig& cfg, Inversion kind) {
    validate_alpha(alpha);
    validate(cfg);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("inversion integral: x must be positive and finite");
    const TransformTable& tab = table_for(alpha, cfg.inner_quadrature_order);

    auto g = [&](double t) {
        const cplx v = tab.transform(t) * std::polar(1.0, t * x);
        return kind == Inversion::density ? v.real() : v.imag() / t;
    };

    // Near t = 0 the integrand has t^alpha terms; grade geometrically from 1e-20.
    CompensatedSum pre;
    const double t_big = tab.t_big();
    double first = std::min(1e-20, t_big);
    if (kind == Inversion::density) pre += first;  // integrand ~ 1 on [0, first]
    else pre += first * x;                        // Im[L e^{itx}]/t -> x - E S_1, bounded
    pre += integrate_graded(g, first, t_big, x, alpha, t_big);

    // Half-period boundaries aligned with zeros of the asymptotic integrand.
    const double phase0 = tab.theta() + (kind == Inversion::cdf ? 0.5 * kPi : 0.0);
    double k0 = std::ceil((t_big * x - phase0) / kPi);
    double boundary = (phase0 + k0 * kPi) / x;
    if (boundary <= t_big) {
        k0 += 1.0;
        boundary = (phase0 + k0 * kPi) / x;
    }
    pre += integrate_graded(g, t_big, boundary, x, alpha, t_big);

    std::vector<double> partial{pre.value()};
    CompensatedSum running = pre;
    constexpr std::size_t window = 30;
    double last_estimate = partial.back();
    int settled = 0;
    for (int seg = 0; seg < cfg.segment_count_max; ++seg) {
        const double next = (phase0 + (k0 + seg + 1) * kPi) / x;
        running += integrate_graded(g, boundary, next, x, alpha, t_big);
        boundary = next;
        partial.push_back(running.value());
        if (partial.size() < 8) continue;
        const std::size_t n = std::min(window, partial.size());
        const double estimate = iterated_average(std::span<const double>(partial).last(n));
        const double scale = std::max(std::abs(estimate), 1e-300);
        if (std::abs(estimate - last_estimate) <= cfg.rel_tolerance * scale) {
            if (++settled >= 2) return estimate / kPi;
        } else {
            settled = 0;
        }
        last_estimate = estimate;
    }
    throw ConvergenceError("inversion integral: accelerated partial sums did not settle within " +
                           std::to_string(cfg.segment_count_max) + " segments at x = " + std::to_string(x));
}

}  // namespace

void validate(const OscIntegralConfig& cfg) {
    if (!(cfg.rel_tolerance > 0.0 && cfg.rel_tolerance <= 1e-2)) {
        throw DomainError("OscIntegralConfig: rel_tolerance must lie in (0, 1e-2]");
    }
    if (cfg.segment_count_max < 32) throw DomainError("OscIntegralConfig: segment_count_max must be >= 32");
    if (cfg.inner_quadrature_order < 8) throw DomainError("OscIntegralConfig: inner_quadrature_order must be >= 8");
}

double density_integral(double alpha, double x, const OscIntegralConfig& cfg) {
    return invert(alpha, x, cfg, Inversion::density);
}

double survival_integral(double alpha, double x, const OscIntegralConfig& cfg) {
    return 0.5 - invert(alpha, x, cfg, Inversion::cdf);
}

double cdf_integral(double alpha, double x, const OscIntegralConfig& cfg) {
    return 0.5 + invert(alpha, x, cfg, Inversion::cdf);
}

std::complex<double> supremum_transform_on_axis(double alpha, double t, int inner_quadrature_order) {
    validate_alpha(alpha);
    if (!(t >= 0.0)) throw DomainError("supremum_transform_on_axis: t must be non-negative");
    if (inner_quadrature_order < 8) throw DomainError("inner_quadrature_order must be >= 8");
    return table_for(alpha, inner_quadrature_order).transform(t);
}

}  // namespace levysup
