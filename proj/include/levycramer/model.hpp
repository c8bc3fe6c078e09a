#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace levycramer {

// Model families for the Levy process xi.  Everything downstream works off
// the exponent convention
//
//     Phi(lambda) = -(1/t) log E exp(lambda xi_t),
//
// which makes Phi concave with Phi(0) = 0, Phi > 0 on (0, chi) and
// Phi(chi) = 0 at the Cramer root chi > 0.
enum class ModelKind {
    BrownianDrift,            // xi_t = sigma B_t + nu t, nu < 0
    CompoundPoissonDrift,     // drift + upward exponential jumps
    StableSubordinatorDrift,  // xi_t = -S_t + a t, S one-sided stable
};

struct LevyModel {
    ModelKind kind{ModelKind::BrownianDrift};

    // BrownianDrift
    double sigma = 0.0;
    double nu = 0.0;

    // CompoundPoissonDrift.  Internal form is (jump_rate, jump_scale, drift):
    // upward Exp(jump_scale) jumps at rate jump_rate on top of linear drift.
    // When built from the (a, b) parameterization (0 < a < 1 < a+b, drift -1,
    // rate a+b-1, scale b) the original pair is kept for display; a tilted
    // model has no (a, b) form.
    double jump_rate = 0.0;
    double jump_scale = 0.0;
    double drift = 0.0;
    bool has_ab = false;
    double a = 0.0;
    double b = 0.0;

    // StableSubordinatorDrift
    double alpha = 0.0;
    double a_drift = 0.0;

    static LevyModel brownian(double sigma, double nu);
    static LevyModel compound_poisson(double a, double b);
    static LevyModel compound_poisson_explicit(double rate, double scale,
                                               double drift);
    static LevyModel stable_subordinator(double alpha, double a_drift);

    // Upper end of the finiteness domain of Phi (open); +inf if unbounded.
    double domain_limit() const;

    std::string spec_string() const;
};

// Grammar shared with the CLI:
//   bm:sigma=<f>,nu=<f> | cpp:a=<f>,b=<f> | stable:alpha=<f>,a=<f>
// plus cppx:rate=<f>,scale=<f>,drift=<f> for the explicit internal form.
LevyModel parse_model(const std::string& spec);

struct CramerSolution {
    double chi = 0.0;               // positive root of Phi
    double phi_prime_at_chi = 0.0;  // negative
    double tilt_mean_m = 0.0;       // -Phi'(chi) > 0
    std::pair<double, double> bracket{0.0, 0.0};
    int iterations = 0;
};

// Levy exponent Phi(lambda).  DomainError outside the finiteness domain
// (lambda >= jump_scale for a compound-Poisson model, where Phi = -inf,
// and lambda < 0 for the stable family).
double phi(const LevyModel& model, double lambda);

// Analytic d/dlambda Phi(lambda) (closed form for every family).
double phi_prime(const LevyModel& model, double lambda);

// Unique positive root of Phi: closed-form seed, bracketed bisection to a
// width-1e-12 bracket, Newton polish, |Phi(chi)| <= 1e-10 guaranteed.
// NoRootError when Phi never changes sign on the domain.
CramerSolution solve_cramer(const LevyModel& model);

// Exponential change of measure dQ = e^{chi xi_t} dP.  The returned model
// has exponent Phi(. + chi): BrownianDrift(sigma, nu + sigma^2 chi) or a
// compound-Poisson model with rate*scale/(scale-chi), scale-chi and the
// same drift.  Requires |Phi(chi)| <= 1e-8; UnsupportedTiltError for the
// stable family (the tilted process leaves it).
LevyModel esscher_tilt(const LevyModel& model, double chi);

// Checks of the random-difference-equation route: M = e^{xi_1},
// Q = integral_0^1 e^{xi_s} ds.
struct KestenReport {
    double analytic_m_chi = 0.0;  // e^{-Phi(chi)}, equals 1 at the root
    double analytic_bound = 0.0;  // (1/eps) e^{-Phi(chi+eps)}
    double mc_m_chi = 0.0;        // MC E[M^chi]
    double mc_m_chi_se = 0.0;
    double mc_m_log_m = 0.0;      // MC E[M^chi log+ M]
    double mc_m_log_m_se = 0.0;
    double mc_q_chi = 0.0;        // MC E[Q^chi]
    double mc_q_chi_se = 0.0;
    std::size_t n = 0;
    double chi = 0.0;
    double epsilon = 0.0;
};

// Monte-Carlo estimates use n_mc unit-interval path blocks at grid step h
// (ignored by the exact compound-Poisson sampler).  DomainError when
// Phi(chi+eps) is not finite.
KestenReport kesten_report(const LevyModel& model, double chi, double epsilon,
                           std::size_t n_mc, std::uint64_t seed,
                           double h = 1.0 / 256.0);

}  // namespace levycramer
