#include "levycramer/tailstats.hpp"

#include <algorithm>
#include <cmath>

#include "levycramer/errors.hpp"
#include "levycramer/stats.hpp"

namespace levycramer {

namespace {

constexpr double kKs1pct = 1.628;  // two-sided KS quantile at the 1% level

std::vector<double> sorted_logs(std::span<const double> values) {
    std::vector<double> logs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0))
            throw DomainError("tail statistics require positive values");
        logs[i] = std::log(values[i]);
    }
    std::sort(logs.begin(), logs.end());
    return logs;
}

// Nearest-rank quantile on a sorted vector (ceil(q n) in 1-based ranks).
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    const double rank = std::ceil(q * static_cast<double>(n));
    std::size_t idx = rank <= 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
    if (idx >= n) idx = n - 1;
    return sorted[idx];
}

// Exact convolution of the ECDF tail against K(t) = e^{-t} 1_{t>0},
// evaluated at every grid point.  `logs` ascending, `grid` increasing.
std::vector<double> smooth_on_grid(const std::vector<double>& logs, double chi,
                                   std::span<const double> grid) {
    const std::size_t n = logs.size();
    const double np1 = 1.0 + chi;
    std::vector<double> out(grid.size());

    // Sweep data points and grid points together, keeping the running
    // integral I(u) = int_{-inf}^u e^{-(u-v)} e^{chi v} T(v) dv, where T is
    // the empirical tail probability (piecewise constant between logs).
    std::size_t gi = 0;
    // Grid points before every data point: T = 1 there.
    while (gi < grid.size() && grid[gi] < logs[0]) {
        out[gi] = std::exp(chi * grid[gi]) / np1;
        ++gi;
    }
    double u = logs[0];
    double integral = std::exp(chi * u) / np1;  // I(logs[0]), T = 1 below
    std::size_t di = 0;                         // # data points <= u

    auto advance_to = [&](double u2, double tail_prob) {
        // I(u2) = I(u) e^{-(u2-u)} + T (e^{chi u2} - e^{(1+chi)u - u2})/(1+chi)
        integral = integral * std::exp(-(u2 - u)) +
                   tail_prob *
                       (std::exp(chi * u2) - std::exp(np1 * u - u2)) / np1;
        u = u2;
    };

    while (di < n) {
        ++di;
        while (di < n && logs[di] == logs[di - 1]) ++di;
        const double tail_prob =
            static_cast<double>(n - di) / static_cast<double>(n);
        const double next = di < n ? logs[di] : 0.0;
        while (gi < grid.size() && (di >= n || grid[gi] < next)) {
            advance_to(grid[gi], tail_prob);
            out[gi] = integral;
            ++gi;
        }
        if (di < n) advance_to(next, tail_prob);
    }
    return out;
}

double empirical_tail(const std::vector<double>& logs, double v) {
    const auto it = std::upper_bound(logs.begin(), logs.end(), v);
    return static_cast<double>(logs.end() - it) /
           static_cast<double>(logs.size());
}

}  // namespace

std::size_t default_hill_k(std::size_t n) {
    const auto k = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(n), 2.0 / 3.0)));
    return std::min(k, n > 1 ? n - 1 : 1);
}

HillEstimate hill_estimate(std::span<const double> values, std::size_t k) {
    const std::size_t n = values.size();
    if (k < 1 || k >= n)
        throw DomainError("hill_estimate: requires 1 <= k < n");
    std::vector<double> top(values.begin(), values.end());
    for (double v : top)
        if (!(v > 0.0))
            throw DomainError("hill_estimate: requires positive values");
    // Top k+1 order statistics, descending.
    std::nth_element(top.begin(), top.begin() + k, top.end(),
                     std::greater<>());
    std::sort(top.begin(), top.begin() + k + 1, std::greater<>());
    const double x_k1 = top[k];
    if (top[0] == x_k1)
        throw DegenerateInputError(
            "hill_estimate: top order statistics have zero spread");
    KahanSum s;
    for (std::size_t i = 0; i < k; ++i) s.add(std::log(top[i] / x_k1));
    const double mean_log = s.value() / static_cast<double>(k);
    HillEstimate est;
    est.chi_hat = 1.0 / mean_log;
    est.chi_se = est.chi_hat / std::sqrt(static_cast<double>(k));
    return est;
}

std::vector<CurvePoint> smoothed_cramer_curve(std::span<const double> values,
                                              double chi,
                                              std::span<const double> grid) {
    if (!(chi > 0.0)) throw DomainError("smoothed_cramer_curve: chi > 0");
    if (values.empty())
        throw DomainError("smoothed_cramer_curve: empty sample");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("smoothed_cramer_curve: grid must increase");
    const auto logs = sorted_logs(values);
    const auto smooth = smooth_on_grid(logs, chi, grid);
    std::vector<CurvePoint> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i].v = grid[i];
        out[i].r = std::exp(chi * grid[i]) * empirical_tail(logs, grid[i]);
        out[i].r_smooth = smooth[i];
    }
    return out;
}

PlateauEstimate estimate_c_plateau(std::span<const double> values, double chi,
                                   const PlateauOptions& opts) {
    if (!(chi > 0.0)) throw DomainError("estimate_c_plateau: chi > 0");
    const std::size_t n = values.size();
    if (n < 2) throw InsufficientTailError("estimate_c_plateau: sample too small");
    const auto logs = sorted_logs(values);

    double lo, hi;
    if (opts.has_window_override) {
        lo = opts.window_lo_v;
        hi = opts.window_hi_v;
    } else {
        lo = quantile_sorted(logs, opts.window_lo_quantile);
        hi = quantile_sorted(
            logs, 1.0 - opts.upper_exceedances / static_cast<double>(n));
    }
    const auto beyond = static_cast<std::size_t>(
        logs.end() - std::upper_bound(logs.begin(), logs.end(), lo));
    if (beyond < opts.min_tail_points)
        throw InsufficientTailError(
            "estimate_c_plateau: fewer than " +
            std::to_string(opts.min_tail_points) +
            " values beyond the window start");
    if (!(hi > lo))
        throw InsufficientTailError(
            "estimate_c_plateau: degenerate plateau window");
    if (opts.grid_points < 2)
        throw DomainError("estimate_c_plateau: grid_points >= 2");

    std::vector<double> grid(opts.grid_points);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(grid.size() - 1);

    auto window_mean = [&](std::span<const double> vals) {
        const auto lg = sorted_logs(vals);
        const auto sm = smooth_on_grid(lg, chi, grid);
        KahanSum s;
        for (double v : sm) s.add(v);
        return s.value() / static_cast<double>(sm.size());
    };

    PlateauEstimate est;
    est.window_lo_v = lo;
    est.window_hi_v = hi;
    est.c_hat = window_mean(values);

    const std::size_t nb = opts.nbatches;
    if (nb >= 2 && n >= 2 * nb) {
        std::vector<double> batch_c(nb);
        const std::size_t base = n / nb, extra = n % nb;
        std::size_t pos = 0;
        for (std::size_t b = 0; b < nb; ++b) {
            const std::size_t len = base + (b < extra ? 1 : 0);
            batch_c[b] = window_mean(values.subspan(pos, len));
            pos += len;
        }
        KahanSum dev;
        for (double c : batch_c)
            dev.add((c - est.c_hat) * (c - est.c_hat));
        est.c_se = std::sqrt(dev.value() /
                             static_cast<double>(nb - 1) /
                             static_cast<double>(nb));
    }
    return est;
}

TailFit fit_tail(std::span<const double> values, std::size_t k,
                 double chi_override) {
    TailFit fit;
    fit.n = values.size();
    fit.k_order_stats = k;
    const auto hill = hill_estimate(values, k);
    fit.chi_hat = hill.chi_hat;
    fit.chi_se = hill.chi_se;
    const double chi = chi_override > 0.0 ? chi_override : hill.chi_hat;
    const auto plateau = estimate_c_plateau(values, chi);
    fit.c_hat = plateau.c_hat;
    fit.c_se = plateau.c_se;
    return fit;
}

KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
    if (xs.empty() || ys.empty())
        throw DomainError("ks_two_sample: empty sample");
    std::vector<double> a(xs.begin(), xs.end());
    std::vector<double> b(ys.begin(), ys.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const double x = (j >= b.size() || (i < a.size() && a[i] <= b[j]))
                             ? a[i]
                             : b[j];
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    KsResult res;
    res.statistic = d;
    res.n = a.size();
    res.m = b.size();
    res.critical_1pct = kKs1pct * std::sqrt((na + nb) / (na * nb));
    return res;
}

KsResult ks_one_sample(std::span<const double> xs,
                       const std::function<double(double)>& cdf) {
    if (xs.empty()) throw DomainError("ks_one_sample: empty sample");
    std::vector<double> a(xs.begin(), xs.end());
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double f = cdf(a[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    KsResult res;
    res.statistic = d;
    res.n = a.size();
    res.m = 0;
    res.critical_1pct = kKs1pct / std::sqrt(n);
    return res;
}

}  // namespace levycramer
