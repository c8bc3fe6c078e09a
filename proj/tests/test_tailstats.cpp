#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "levycramer/errors.hpp"
#include "levycramer/rng.hpp"
#include "levycramer/tailstats.hpp"

using namespace levycramer;

namespace {

constexpr double kTwoOverPi = 0.63661977236758134;

// Independent inverse-beta(1/2,1/2) sampler: beta(1/2,1/2) is the arcsine
// law, so 1/sin^2(pi U / 2) has the target law.  Deliberately avoids the
// path-simulation machinery so tail estimators are tested against a
// separate oracle.
std::vector<double> inverse_beta_half(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) {
        const double s = std::sin(std::numbers::pi * rng.uniform() / 2.0);
        v = 1.0 / (s * s);
    }
    return out;
}

// Perfect deterministic sample of InverseGamma(1,1): quantiles at midpoint
// probabilities.  tail(t) = 1 - e^{-1/t} inverts to t = -1/log(1-u).
std::vector<double> perfect_inverse_gamma11(std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u =
            (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        out[i] = -1.0 / std::log1p(-u);  // tail level u
    }
    return out;
}

// Direct per-grid-point evaluation of the smoothed curve from the exact
// segment integrals, independent of the library's incremental sweep.
double r_smooth_direct(const std::vector<double>& values, double chi,
                       double t) {
    std::vector<double> logs;
    logs.reserve(values.size());
    for (double v : values) logs.push_back(std::log(v));
    std::sort(logs.begin(), logs.end());
    const double n = static_cast<double>(logs.size());
    const double np1 = 1.0 + chi;
    auto seg = [&](double lo, double hi, double tail_prob) {
        return tail_prob * (std::exp(np1 * hi - t) - std::exp(np1 * lo - t)) /
               np1;
    };
    double total = 0.0;
    double lo = -800.0;  // e^{(1+chi)lo - t} underflows to 0
    for (std::size_t i = 0; i < logs.size() && logs[i] < t; ++i) {
        const double tail_prob = (n - static_cast<double>(i)) / n;
        total += seg(lo, logs[i], tail_prob);
        lo = logs[i];
    }
    const auto below =
        std::lower_bound(logs.begin(), logs.end(), t) - logs.begin();
    total += seg(lo, t, (n - static_cast<double>(below)) / n);
    return total;
}

}  // namespace

TEST_CASE("hill estimator: hand-computed example") {
    const std::vector<double> xs = {std::exp(4.0), std::exp(3.0),
                                    std::exp(2.0), std::exp(1.0)};
    const auto est = hill_estimate(xs, 3);
    CHECK(est.chi_hat == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(est.chi_se == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-12));
    // Input order must not matter.
    const std::vector<double> shuffled = {std::exp(2.0), std::exp(4.0),
                                          std::exp(1.0), std::exp(3.0)};
    CHECK(hill_estimate(shuffled, 3).chi_hat == est.chi_hat);
}

TEST_CASE("hill estimator: scale invariance") {
    std::vector<double> xs = inverse_beta_half(2000, 11);
    const double base = hill_estimate(xs, 200).chi_hat;
    // Power-of-two scaling is exact in floating point.
    std::vector<double> scaled = xs;
    for (auto& v : scaled) v *= 1024.0;
    CHECK(hill_estimate(scaled, 200).chi_hat == base);
    // Arbitrary positive scaling agrees to rounding.
    for (auto& v : xs) v *= 3.7e-3;
    CHECK(std::fabs(hill_estimate(xs, 200).chi_hat - base) < 1e-12);
}

TEST_CASE("hill estimator: recovers the inverse-beta tail index") {
    const auto xs = inverse_beta_half(100000, 99);
    const std::size_t k = default_hill_k(xs.size());
    CHECK(k == static_cast<std::size_t>(
                   std::ceil(std::pow(100000.0, 2.0 / 3.0))));
    const auto est = hill_estimate(xs, k);
    CHECK(std::fabs(est.chi_hat - 0.5) < 0.05);
    CHECK(est.chi_se == doctest::Approx(est.chi_hat / std::sqrt(double(k))));
}

TEST_CASE("hill estimator: error paths") {
    const std::vector<double> flat = {3.0, 3.0, 3.0, 3.0};
    CHECK_THROWS_AS(hill_estimate(flat, 2), DegenerateInputError);
    const std::vector<double> ok = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(hill_estimate(ok, 0), DomainError);
    CHECK_THROWS_AS(hill_estimate(ok, 3), DomainError);
    const std::vector<double> bad = {1.0, -2.0, 3.0};
    CHECK_THROWS_AS(hill_estimate(bad, 1), DomainError);
}

TEST_CASE("smoothed curve: single-point closed form") {
    const std::vector<double> one = {std::exp(2.0)};  // v1 = 2
    const double chi = 0.7;
    const std::vector<double> grid = {0.0, 2.0, 5.0};
    const auto curve = smoothed_cramer_curve(one, chi, grid);
    // Below the data point: r~(t) = e^{chi t}/(1+chi).
    CHECK(curve[0].r_smooth ==
          doctest::Approx(1.0 / 1.7).epsilon(1e-12));
    CHECK(curve[0].r == doctest::Approx(1.0).epsilon(1e-12));  // e^0 * 1
    // Above: r~(t) = e^{(1+chi) v1 - t}/(1+chi).
    CHECK(curve[2].r_smooth ==
          doctest::Approx(std::exp(1.7 * 2.0 - 5.0) / 1.7).epsilon(1e-12));
    CHECK(curve[2].r == 0.0);
}

TEST_CASE("smoothed curve: agrees with the direct segment oracle") {
    Rng rng(505);
    std::vector<double> values(200);
    for (auto& v : values) v = std::exp(3.0 * rng.normal());
    for (double chi : {0.4, 1.0, 2.3}) {
        std::vector<double> grid;
        for (double t = -2.0; t <= 8.0; t += 0.5) grid.push_back(t);
        const auto curve = smoothed_cramer_curve(values, chi, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double want = r_smooth_direct(values, chi, grid[i]);
            const double scale = std::max(1e-12, std::fabs(want));
            CHECK(std::fabs(curve[i].r_smooth - want) / scale < 1e-10);
        }
    }
}

TEST_CASE("smoothed curve: bounds and kernel continuity") {
    const auto values = inverse_beta_half(5000, 42);
    const double chi = 0.5;
    std::vector<double> grid;
    for (double t = 0.0; t < 12.0; t += 0.01) grid.push_back(t);
    const auto curve = smoothed_cramer_curve(values, chi, grid);
    const double vmax =
        std::log(*std::max_element(values.begin(), values.end()));
    for (const auto& p : curve) {
        CHECK(p.r_smooth >= 0.0);
        CHECK(p.r_smooth <= std::exp(chi * vmax) + 1e-9);
    }
    // One kernel step: e^{-d} r~(t) <= r~(t+d) <= r~(t) + d e^{chi d} r(t),
    // since the tail only falls across the step so r(v) <= e^{chi d} r(t)
    // on (t, t+d].
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double d = grid[i] - grid[i - 1];
        const double lower = curve[i - 1].r_smooth * std::exp(-d);
        CHECK(curve[i].r_smooth >= lower - 1e-12);
        CHECK(curve[i].r_smooth <= curve[i - 1].r_smooth +
                                       d * std::exp(chi * d) * curve[i - 1].r +
                                       1e-12);
    }
}

TEST_CASE("smoothed curve: guards") {
    const std::vector<double> values = {1.0, 2.0};
    const std::vector<double> grid = {0.0, 1.0};
    CHECK_THROWS_AS(smoothed_cramer_curve(values, 0.0, grid), DomainError);
    CHECK_THROWS_AS(smoothed_cramer_curve(values, -1.0, grid), DomainError);
    const std::vector<double> bad_grid = {1.0, 0.5};
    CHECK_THROWS_AS(smoothed_cramer_curve(values, 1.0, bad_grid), DomainError);
}

TEST_CASE("smoothed curve: exact-law plug-in approaches the constant") {
    // For InverseGamma(1,1), r(v) = e^v (1 - e^{-e^{-v}}) -> 1, and the
    // plug-in convolution r~(log 1e4) must sit within 1e-3 of 1.  The
    // oracle integrates int_0^inf e^{-w} r(t-w) dw by composite midpoint
    // quadrature of the exact law, no sampling involved.
    const double t = std::log(1e4);
    auto r_exact = [](double v) {
        return std::exp(v) * (-std::expm1(-std::exp(-v)));
    };
    double integral = 0.0;
    const double dw = 1e-4;
    for (double w = 0.5 * dw; w < 80.0; w += dw)
        integral += dw * std::exp(-w) * r_exact(t - w);
    CHECK(std::fabs(integral - 1.0) < 1e-3);
    // The empirical curve on a perfect quantile grid reproduces it.
    const auto values = perfect_inverse_gamma11(400000);
    const std::vector<double> grid = {t};
    const auto curve = smoothed_cramer_curve(values, 1.0, grid);
    CHECK(std::fabs(curve[0].r_smooth - integral) < 2e-3);
}

TEST_CASE("smoothed curve: inverse-gamma draws stay near C on a window") {
    // 1e5 draws of 1/gamma_1 (chi = 1, C = 1): r~ over [log 10, log 100]
    // stays within [0.8, 1.2].
    Rng rng(8899);
    std::vector<double> values(100000);
    for (auto& v : values) v = 1.0 / rng.exponential();
    std::vector<double> grid;
    for (double t = std::log(10.0); t <= std::log(100.0); t += 0.05)
        grid.push_back(t);
    const auto curve = smoothed_cramer_curve(values, 1.0, grid);
    for (const auto& p : curve) {
        CHECK(p.r_smooth > 0.8);
        CHECK(p.r_smooth < 1.2);
    }
}

TEST_CASE("plateau estimate: inverse-gamma draws") {
    Rng rng(9911);
    std::vector<double> values(200000);
    for (auto& v : values) v = 1.0 / rng.exponential();
    const auto est = estimate_c_plateau(values, 1.0);
    CHECK(std::fabs(est.c_hat - 1.0) < 0.1);
}

TEST_CASE("plateau estimate: perfect inverse-gamma sample") {
    const auto values = perfect_inverse_gamma11(200000);
    const auto est = estimate_c_plateau(values, 1.0);
    // Exact tail constant is 1; the natural window sits where the O(1/t)
    // correction still bites a few percent.
    CHECK(std::fabs(est.c_hat - 1.0) < 0.1);
    CHECK(est.window_lo_v < est.window_hi_v);
}

TEST_CASE("plateau estimate: 1% accuracy with a deep window override") {
    const auto values = perfect_inverse_gamma11(2000000);
    PlateauOptions opts;
    opts.has_window_override = true;
    opts.window_lo_v = std::log(1e3);
    opts.window_hi_v = std::log(2e4);
    const auto est = estimate_c_plateau(values, 1.0, opts);
    CHECK(std::fabs(est.c_hat - 1.0) < 0.01);
}

TEST_CASE("plateau estimate: Monte-Carlo inverse-beta sample") {
    const auto values = inverse_beta_half(200000, 314);
    const auto est = estimate_c_plateau(values, 0.5);
    CHECK(std::fabs(est.c_hat - kTwoOverPi) < 0.07);
    CHECK(est.c_se > 0.0);
    CHECK(est.c_se < 0.1);
}

TEST_CASE("plateau estimate: insufficient-tail guards") {
    const std::vector<double> flat(2000, 5.0);
    CHECK_THROWS_AS(estimate_c_plateau(flat, 1.0), InsufficientTailError);
    const auto small = inverse_beta_half(1000, 5);  // only 50 beyond q95
    CHECK_THROWS_AS(estimate_c_plateau(small, 0.5), InsufficientTailError);
}

TEST_CASE("fit_tail combines hill and plateau") {
    const auto values = inverse_beta_half(100000, 2718);
    const auto fit = fit_tail(values, default_hill_k(values.size()));
    CHECK(std::fabs(fit.chi_hat - 0.5) < 0.05);
    CHECK(std::fabs(fit.c_hat - kTwoOverPi) < 0.1);
    CHECK(fit.n == values.size());
}

TEST_CASE("two-sample KS: hand-enumerated example") {
    const std::vector<double> xs = {1.0, 2.0, 3.0};
    const std::vector<double> ys = {1.0, 2.0, 3.0, 3.0, 3.0};
    const auto res = ks_two_sample(xs, ys);
    CHECK(res.statistic == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
    CHECK(res.critical_1pct ==
          doctest::Approx(1.628 * std::sqrt(8.0 / 15.0)).epsilon(1e-12));

    const auto zero = ks_two_sample(xs, xs);
    CHECK(zero.statistic == 0.0);
}

TEST_CASE("two-sample KS: null pass rate over seeded trials") {
    int below = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto xs = inverse_beta_half(2000, 9000 + 2 * trial);
        const auto ys = inverse_beta_half(2000, 9001 + 2 * trial);
        const auto res = ks_two_sample(xs, ys);
        if (res.statistic < res.critical_1pct) ++below;
    }
    CHECK(below >= 95);
}

TEST_CASE("one-sample KS: uniform draws against the identity CDF") {
    Rng rng(123);
    std::vector<double> xs(20000);
    for (auto& v : xs) v = rng.uniform();
    const auto res = ks_one_sample(xs, [](double x) {
        return std::clamp(x, 0.0, 1.0);
    });
    CHECK(res.statistic < res.critical_1pct);
    CHECK(res.critical_1pct == doctest::Approx(1.628 / std::sqrt(20000.0)));
}
