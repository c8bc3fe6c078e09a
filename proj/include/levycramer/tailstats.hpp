#pragma once

#include <functional>
#include <span>
#include <vector>

namespace levycramer {

// Empirical verification of the power-law tail P(A > t) ~ C t^{-chi}:
// Hill estimator for chi, exponentially smoothed Cramer curve and its
// plateau for C, and Kolmogorov-Smirnov distances.

struct TailFit {
    double chi_hat = 0.0;
    double chi_se = 0.0;
    double c_hat = 0.0;
    double c_se = 0.0;
    std::size_t k_order_stats = 0;
    std::size_t n = 0;
};

struct HillEstimate {
    double chi_hat = 0.0;
    double chi_se = 0.0;  // chi_hat / sqrt(k)
};

// Hill estimator on the top k order statistics:
//   chi_hat = [ (1/k) sum_{i<=k} log(X_(i)/X_(k+1)) ]^{-1}.
// Input order is irrelevant (sorted internally).  DomainError unless all
// values are positive and 1 <= k < n; DegenerateInputError when the top
// k+1 values are all equal.
HillEstimate hill_estimate(std::span<const double> values, std::size_t k);

// Default order-statistic count ceil(n^{2/3}).
std::size_t default_hill_k(std::size_t n);

struct CurvePoint {
    double v = 0.0;        // log-threshold
    double r = 0.0;        // e^{chi v} P_hat(A > e^v)
    double r_smooth = 0.0; // (r * K)(v), K(t) = e^{-t} 1_{t>0}
};

// Cramer curve r from the ECDF and its exact exponential smoothing; the
// convolution integrates the step function in closed form segment by
// segment (no quadrature error).  Requires chi > 0 and an increasing grid.
std::vector<CurvePoint> smoothed_cramer_curve(std::span<const double> values,
                                              double chi,
                                              std::span<const double> grid);

struct PlateauOptions {
    double window_lo_quantile = 0.95;  // lower window edge, quantile of v
    double upper_exceedances = 50.0;   // upper edge leaves this many points
    std::size_t grid_points = 256;     // averaging grid across the window
    std::size_t nbatches = 10;         // batch-means SE
    std::size_t min_tail_points = 500; // InsufficientTailError below this
    // Optional absolute window overrides, in v = log t coordinates.
    bool has_window_override = false;
    double window_lo_v = 0.0;
    double window_hi_v = 0.0;
};

struct PlateauEstimate {
    double c_hat = 0.0;
    double c_se = 0.0;
    double window_lo_v = 0.0;
    double window_hi_v = 0.0;
};

// The smoothed curve averaged over the plateau window
// [q(0.95 of log-values), q(1 - 50/n)]; SE by batch means over 10
// index-contiguous sub-batches evaluated on the same window.
PlateauEstimate estimate_c_plateau(std::span<const double> values, double chi,
                                   const PlateauOptions& opts = {});

// Hill fit plus plateau constant in one record.  chi used for the plateau
// is chi_override when given (e.g. the solved exponent), else chi_hat.
TailFit fit_tail(std::span<const double> values, std::size_t k,
                 double chi_override = 0.0);

struct KsResult {
    double statistic = 0.0;
    double critical_1pct = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;  // 0 for the one-sample statistic
};

// Two-sample KS: sup |F1 - F2| with critical value 1.628 sqrt((n+m)/(nm))
// at the 1% level.
KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

// One-sample KS against an exact CDF; critical value 1.628/sqrt(n).
KsResult ks_one_sample(std::span<const double> xs,
                       const std::function<double(double)>& cdf);

}  // namespace levycramer
