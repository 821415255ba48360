#pragma once

#include <cstddef>

namespace levysup {

/// Value of a truncated asymptotic expansion and the size of the first omitted term.
struct AsymptoticEval {
    double value = 0.0;
    std::size_t terms_used = 0;
    double error_estimate = 0.0;
};

/**
 * Large-x expansion of the density of S_1 (kappa = 1).
 *
 * Follows from the small-lambda expansion of E exp(-lambda S_1),
 *   sum_{k>=0} lambda^{ak}/k! - sum_{N>=0} lambda^{aN+1}/Gamma(N+1+1/a),
 * by matching each non-integer power lambda^b with x^{-b-1}/Gamma(-b):
 *
 *   f(x) ~ sum_{k>=1} x^{-ak-1} / (k! Gamma(-ak))
 *        - sum_{N>=1} x^{-aN-2} / (Gamma(N+1+1/a) Gamma(-aN-1)).
 *
 * The k = 1 term is c x^{-a-1} with c = 1/Gamma(-a). The series diverges; it
 * is summed up to its smallest term.
 */
AsymptoticEval tail_expansion_density(double alpha, double x);

/// Term-wise integral of tail_expansion_density over (x, inf): P(S_1 > x).
AsymptoticEval tail_expansion_survival(double alpha, double x);

}  // namespace levysup
