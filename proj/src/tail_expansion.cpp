#include "levysup/tail_expansion.hpp"

#include "levysup/errors.hpp"
#include "levysup/model.hpp"
#include "levysup/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace levysup {

namespace {

struct PowerTerm {
    double exponent;  // b in lambda^b; density term is coef * x^{-b-1} / Gamma(-b)
    SignedLogValue coef;
};

AsymptoticEval sum_expansion(double alpha, double x, bool survival) {
    validate_alpha(alpha);
    if (!(x > 0.0)) throw DomainError("tail expansion: x must be positive");
    constexpr int kMaxOrder = 60;

    std::vector<PowerTerm> terms;
    terms.reserve(2 * kMaxOrder);
    for (int k = 1; k <= kMaxOrder; ++k) {
        const double b = alpha * k;
        SignedLogValue c{1, -log_gamma(k + 1.0), false};
        terms.push_back({b, c * signed_log_recip_gamma(-b)});
    }
    for (int n = 1; n <= kMaxOrder; ++n) {
        const double b = alpha * n + 1.0;
        SignedLogValue c{-1, -log_gamma(n + 1.0 + 1.0 / alpha), false};
        terms.push_back({b, c * signed_log_recip_gamma(-b)});
    }
    std::sort(terms.begin(), terms.end(), [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });

    const double lx = std::log(x);
    std::vector<double> signed_terms;
    std::vector<double> mags;
    for (const PowerTerm& t : terms) {
        if (t.coef.is_zero()) continue;
        double log_mag = t.coef.log_magnitude - (t.exponent + 1.0) * lx;
        if (survival) log_mag += lx - std::log(t.exponent);
        mags.push_back(std::exp(log_mag));
        signed_terms.push_back(t.coef.sign * mags.back());
    }
    // Optimal truncation: stop just before the smallest term.
    const auto smallest = std::min_element(mags.begin() + 1, mags.end());
    const auto stop = std::size_t(smallest - mags.begin());
    AsymptoticEval out;
    double sum = 0.0;
    for (std::size_t i = stop; i-- > 0;) sum += signed_terms[i];
    out.value = sum;
    out.terms_used = stop;
    out.error_estimate = *smallest;
    return out;
}

}  // namespace

AsymptoticEval tail_expansion_density(double alpha, double x) { return sum_expansion(alpha, x, false); }

AsymptoticEval tail_expansion_survival(double alpha, double x) { return sum_expansion(alpha, x, true); }

}  // namespace levysup
