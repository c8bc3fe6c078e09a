#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace levycramer {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

// Compensated (Kahan) sum, used where cancellation-sensitive terms pile up.
class KahanSum {
  public:
    void add(double v) {
        const double y = v - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// Sample mean and standard error (sd/sqrt(n)), compensated accumulation.
inline MeanSe mean_se(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return {};
    KahanSum s;
    for (double x : xs) s.add(x);
    const double mean = s.value() / static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    KahanSum s2;
    for (double x : xs) s2.add((x - mean) * (x - mean));
    const double var = s2.value() / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

// Batch-means standard error: replicates are split by index into
// `nbatches` contiguous batches; the SE is sd(batch means)/sqrt(nbatches).
// The point estimate stays the full-sample mean.
inline MeanSe batch_means(std::span<const double> xs,
                          std::size_t nbatches = 10) {
    const std::size_t n = xs.size();
    if (n == 0) return {};
    if (nbatches < 2 || n < 2 * nbatches) return mean_se(xs);
    std::vector<double> bm(nbatches);
    const std::size_t base = n / nbatches;
    const std::size_t extra = n % nbatches;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < nbatches; ++b) {
        const std::size_t len = base + (b < extra ? 1 : 0);
        KahanSum s;
        for (std::size_t i = 0; i < len; ++i) s.add(xs[pos + i]);
        bm[b] = s.value() / static_cast<double>(len);
        pos += len;
    }
    KahanSum all;
    for (double x : xs) all.add(x);
    const double mean = all.value() / static_cast<double>(n);
    KahanSum dev;
    for (double m : bm) dev.add((m - mean) * (m - mean));
    const double var = dev.value() / static_cast<double>(nbatches - 1);
    return {mean, std::sqrt(var / static_cast<double>(nbatches))};
}

}  // namespace levycramer
