#pragma once

#include "levycramer/model.hpp"

namespace levycramer {

// Exact laws of the exponential functional for the two solvable families,
// used as oracles by the tail and constant estimators:
//   Brownian with drift:   A_inf = scale / gamma_m   (InverseGamma)
//   compound Poisson:      A_inf = 1 / beta_{p,q}    (InverseBeta)
// In both cases the power-law tail index of A_inf equals the Cramer root
// of the generating model (m resp. p).
struct ExactLaw {
    enum class Kind { InverseGamma, InverseBeta };
    Kind kind = Kind::InverseGamma;

    // InverseGamma
    double m = 0.0;
    double scale = 0.0;

    // InverseBeta
    double p = 0.0;
    double q = 0.0;

    static ExactLaw inverse_gamma(double m, double scale);
    static ExactLaw inverse_beta(double p, double q);

    // Tail index chi of the law.
    double tail_index() const;
};

// Law of A_inf for the model: InverseGamma(-2 nu/sigma^2, 2/sigma^2) for
// Brownian drift, InverseBeta(1-a, a+b-1) for the (a,b) compound-Poisson
// model.  NoClosedFormError for the stable family and for explicit
// compound-Poisson models outside the (a,b) parameterization.
ExactLaw exact_law_of(const LevyModel& model);

// P(A > t) for t > 0.
double tail(const ExactLaw& law, double t);

// CDF P(A <= t); convenience complement of tail.
double cdf(const ExactLaw& law, double t);

// The constant C in P(A > t) ~ C t^{-chi}:
//   InverseGamma: scale^m / (m Gamma(m));  InverseBeta: 1/(p B(p,q)).
double tail_constant(const ExactLaw& law);

// E[A^alpha]; +inf for alpha >= tail index (a legal return, not an error).
double exact_moment(const ExactLaw& law, double alpha);

}  // namespace levycramer
