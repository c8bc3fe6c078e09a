#pragma once

#include <cstdint>

#include "levycramer/model.hpp"

namespace levycramer {

// Renewal-representation estimate of the tail constant
//   C = E[ A_inf^chi - (A_inf - A_{T1})^chi ] / (chi m),
// with T1 ~ Exp(1) independent of the path and m = -Phi'(chi) the mean of
// the exponentially tilted walk.
struct ConstantEstimate {
    double c_hat = 0.0;
    double c_se = 0.0;
    double m = 0.0;        // -Phi'(chi)
    double chi = 0.0;
    std::size_t n = 0;
    double mean_a_chi = 0.0;        // E[A_inf^chi]
    double mean_shifted_chi = 0.0;  // E[(A_inf - A_{T1})^chi]
};

// Per replicate: draw T1 ~ Exp(1), simulate (A_{T1}, xi_{T1}), extend with
// an independent perpetuity draw A~ so that A_inf = A_{T1} + e^{xi_T1} A~,
// and accumulate A_inf^chi - (e^{xi_T1} A~)^chi with cancellation-safe
// powers and compensated summation.  SE by batch means.
ConstantEstimate estimate_constant(const LevyModel& model,
                                   const CramerSolution& cramer,
                                   std::size_t n, double h,
                                   double truncation_tol, std::uint64_t seed);

// m = -Phi'(chi), the positive drift of the Esscher-tilted process.
double tilted_drift(const LevyModel& model, const CramerSolution& cramer);

// Monte-Carlo diagnostic for tilted_drift: mean tilted skeleton increment
// over h against h*m (must agree within a few SE).
struct TiltedDriftCheck {
    double m = 0.0;
    double mc_mean_per_h = 0.0;
    double mc_se_per_h = 0.0;
};
TiltedDriftCheck tilted_drift_mc_check(const LevyModel& model,
                                       const CramerSolution& cramer, double h,
                                       std::size_t n, std::uint64_t seed);

// Discrete-skeleton analogue of the ladder Wald identity
// E[H] = E[step] E[tau] on the tilted walk X_j = xi*_{jh}: tau is the
// first strict ascending ladder epoch {X_j > 0}, H = X_tau, and
// E[step] = h m exactly.  PASS iff the ratio E[H]/(h m E[tau]) is 1
// within 3 delta-method standard errors.
struct WaldReport {
    double mean_h = 0.0;
    double se_h = 0.0;
    double mean_tau = 0.0;
    double se_tau = 0.0;
    double ratio = 0.0;
    double ratio_se = 0.0;
    double step_mean = 0.0;  // h * m
    std::size_t n = 0;
    std::size_t timeouts = 0;
    bool pass = false;
};

// LadderTimeoutError if more than 0.1% of replicates exceed max_steps
// (the signature of a non-positive tilted drift, i.e. a wrong chi).
WaldReport wald_ladder_check(const LevyModel& model,
                             const CramerSolution& cramer, double h,
                             std::size_t n, std::size_t max_steps,
                             std::uint64_t seed);

}  // namespace levycramer
