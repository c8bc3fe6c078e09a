#include "levycramer/pathsim.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "levycramer/errors.hpp"

namespace levycramer {

namespace {

constexpr std::size_t kMaxBlocksPerReplicate = 1'000'000;

// Integral of e^{xi} over one grid cell of width w with endpoint values
// x0, x1, treating xi as linear on the cell (exact in that case):
//   w * (e^{x1} - e^{x0}) / (x1 - x0),
// with the symmetric midpoint limit when the endpoints collide.
// e0 = e^{x0} and e1 = e^{x1} are passed in so each grid point is
// exponentiated once per path.
inline double geometric_trapezoid(double x0, double x1, double e0, double e1,
                                  double w) {
    const double dx = x1 - x0;
    if (std::fabs(dx) < 1e-12) return w * std::exp(0.5 * (x0 + x1));
    return w * (e1 - e0) / dx;
}

// Integral of e^{x0 + drift*s} ds over s in [0, delta].
inline double drift_segment_integral(double x0, double drift, double delta) {
    if (drift == 0.0) return std::exp(x0) * delta;
    return std::exp(x0) * std::expm1(drift * delta) / drift;
}

class BrownianBlockSampler final : public BlockSampler {
  public:
    BrownianBlockSampler(const LevyModel& m, double h)
        : sigma_(m.sigma), nu_(m.nu) {
        if (!(h > 0.0) || h > 1.0)
            throw DomainError("brownian sampler: requires 0 < h <= 1");
        steps_ = static_cast<std::size_t>(std::lround(1.0 / h));
        if (steps_ == 0) steps_ = 1;
        h_ = 1.0 / static_cast<double>(steps_);
        sqrt_h_ = std::sqrt(h_);
    }

    PathBlock draw(Rng& rng) const override {
        double x = 0.0, e0 = 1.0, q = 0.0;
        for (std::size_t i = 0; i < steps_; ++i) {
            const double x1 = x + nu_ * h_ + sigma_ * sqrt_h_ * rng.normal();
            const double e1 = std::exp(x1);
            q += geometric_trapezoid(x, x1, e0, e1, h_);
            x = x1;
            e0 = e1;
        }
        return {e0, q, h_, ModelKind::BrownianDrift};
    }

    std::pair<double, double> draw_horizon(double t, Rng& rng) const override {
        double x = 0.0, e0 = 1.0, q = 0.0;
        double remaining = t;
        while (remaining > 0.0) {
            const bool full = remaining >= h_;
            const double w = full ? h_ : remaining;
            const double sw = full ? sqrt_h_ : std::sqrt(w);
            const double x1 = x + nu_ * w + sigma_ * sw * rng.normal();
            const double e1 = std::exp(x1);
            q += geometric_trapezoid(x, x1, e0, e1, w);
            x = x1;
            e0 = e1;
            remaining -= w;
        }
        return {q, x};
    }

    std::optional<double> step() const override { return h_; }

  private:
    double sigma_, nu_, h_, sqrt_h_;
    std::size_t steps_;
};

class CompoundPoissonBlockSampler final : public BlockSampler {
  public:
    CompoundPoissonBlockSampler(const LevyModel& m)
        : rate_(m.jump_rate), scale_(m.jump_scale), drift_(m.drift) {}

    PathBlock draw(Rng& rng) const override {
        const auto [q, x] = draw_horizon(1.0, rng);
        return {std::exp(x), q, std::nullopt, ModelKind::CompoundPoissonDrift};
    }

    // Event-driven and exact: exponential inter-arrival times, closed-form
    // drift-segment integrals, Exp(scale) jump sizes.
    std::pair<double, double> draw_horizon(double t, Rng& rng) const override {
        double x = 0.0, q = 0.0, now = 0.0;
        while (true) {
            const double dt =
                rate_ > 0.0 ? rng.exponential() / rate_
                            : std::numeric_limits<double>::infinity();
            if (now + dt >= t) {
                q += drift_segment_integral(x, drift_, t - now);
                x += drift_ * (t - now);
                return {q, x};
            }
            q += drift_segment_integral(x, drift_, dt);
            x += drift_ * dt + rng.exponential() / scale_;
            now += dt;
        }
    }

    std::optional<double> step() const override { return std::nullopt; }

  private:
    double rate_, scale_, drift_;
};

class StableBlockSampler final : public BlockSampler {
  public:
    StableBlockSampler(const LevyModel& m, double h)
        : alpha_(m.alpha), a_(m.a_drift) {
        if (!(h > 0.0) || h > 1.0)
            throw DomainError("stable sampler: requires 0 < h <= 1");
        steps_ = static_cast<std::size_t>(std::lround(1.0 / h));
        if (steps_ == 0) steps_ = 1;
        h_ = 1.0 / static_cast<double>(steps_);
        h_scale_ = std::pow(h_, 1.0 / alpha_);
    }

    PathBlock draw(Rng& rng) const override {
        double x = 0.0, e0 = 1.0, q = 0.0;
        for (std::size_t i = 0; i < steps_; ++i) {
            const double x1 =
                x + a_ * h_ - h_scale_ * sample_stable_one_sided(alpha_, rng);
            const double e1 = std::exp(x1);
            q += geometric_trapezoid(x, x1, e0, e1, h_);
            x = x1;
            e0 = e1;
        }
        return {e0, q, h_, ModelKind::StableSubordinatorDrift};
    }

    std::pair<double, double> draw_horizon(double t, Rng& rng) const override {
        double x = 0.0, e0 = 1.0, q = 0.0;
        double remaining = t;
        while (remaining > 0.0) {
            const bool full = remaining >= h_;
            const double w = full ? h_ : remaining;
            const double ws = full ? h_scale_ : std::pow(w, 1.0 / alpha_);
            const double x1 =
                x + a_ * w - ws * sample_stable_one_sided(alpha_, rng);
            const double e1 = std::exp(x1);
            q += geometric_trapezoid(x, x1, e0, e1, w);
            x = x1;
            e0 = e1;
            remaining -= w;
        }
        return {q, x};
    }

    std::optional<double> step() const override { return h_; }

  private:
    double alpha_, a_, h_, h_scale_;
    std::size_t steps_;
};

}  // namespace

std::string Horizon::to_string() const {
    switch (kind) {
        case Kind::Infinity: return "infinity";
        case Kind::Exponential: return "exp1";
        case Kind::Fixed: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", t);
            return buf;
        }
    }
    throw Error("Horizon::to_string: unreachable");
}

Horizon Horizon::from_string(const std::string& s) {
    if (s == "infinity") return infinity();
    if (s == "exp1") return exponential();
    try {
        std::size_t used = 0;
        const double t = std::stod(s, &used);
        if (used != s.size() || !(t > 0.0)) throw std::invalid_argument(s);
        return fixed(t);
    } catch (const std::exception&) {
        throw ParseError("bad horizon '" + s + "'");
    }
}

std::unique_ptr<BlockSampler> make_block_sampler(const LevyModel& model,
                                                 double h) {
    switch (model.kind) {
        case ModelKind::BrownianDrift:
            return std::make_unique<BrownianBlockSampler>(model, h);
        case ModelKind::CompoundPoissonDrift:
            return std::make_unique<CompoundPoissonBlockSampler>(model);
        case ModelKind::StableSubordinatorDrift:
            return std::make_unique<StableBlockSampler>(model, h);
    }
    throw Error("make_block_sampler: unreachable");
}

PathBlock sample_block(const LevyModel& model, double h, Rng& rng) {
    return make_block_sampler(model, h)->draw(rng);
}

double sample_stable_one_sided(double alpha, Rng& rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("sample_stable_one_sided: requires 0 < alpha < 1");
    // Kanter's representation: S = (A(U)/W)^{(1-alpha)/alpha} with
    //   A(u) = [sin(a pi u)^a sin((1-a) pi u)^{1-a} / sin(pi u)]^{1/(1-a)},
    // U uniform (0,1), W standard exponential.  Evaluated in logs; the
    // Laplace-transform invariant E e^{-l S} = e^{-l^alpha} is what the
    // test suite enforces.
    const double pi = std::numbers::pi;
    const double u = rng.uniform();
    const double w = rng.exponential();
    const double log_a =
        (alpha * std::log(std::sin(alpha * pi * u)) +
         (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * pi * u)) -
         std::log(std::sin(pi * u))) /
        (1.0 - alpha);
    return std::exp((1.0 - alpha) / alpha * (log_a - std::log(w)));
}

SampleBatch sample_a_infinity(const LevyModel& model, std::size_t n, double h,
                              double truncation_tol, std::uint64_t seed) {
    if (n == 0) throw DomainError("sample_a_infinity: requires n >= 1");
    if (!(truncation_tol > 0.0 && truncation_tol < 1.0))
        throw DomainError("sample_a_infinity: requires tol in (0,1)");

    SampleBatch batch;
    batch.values.resize(n);
    batch.model_spec = model.spec_string();
    batch.seed = seed;
    batch.truncation_tol = truncation_tol;
    batch.horizon = Horizon::infinity();

    const auto sampler = make_block_sampler(model, h);
    batch.step = sampler->step();
    sample_replicates(n, [&](std::size_t i, Rng& rng) {
        double a = 0.0, prod = 1.0;
        std::size_t blocks = 0;
        while (prod >= truncation_tol) {
            const PathBlock blk = sampler->draw(rng);
            a += prod * blk.q_integral;
            prod *= blk.m_factor;
            if (++blocks > kMaxBlocksPerReplicate)
                throw NonTerminationError(
                    "sample_a_infinity: replicate exceeded 1e6 blocks; "
                    "drift is not negative in practice");
        }
        batch.values[i] = a;
    }, seed);
    return batch;
}

FiniteHorizonSample sample_a_finite(const LevyModel& model, Horizon horizon,
                                    std::size_t n, double h,
                                    std::uint64_t seed) {
    if (n == 0) throw DomainError("sample_a_finite: requires n >= 1");
    if (horizon.kind == Horizon::Kind::Infinity)
        throw DomainError("sample_a_finite: horizon must be finite");
    if (horizon.kind == Horizon::Kind::Fixed && !(horizon.t > 0.0))
        throw DomainError("sample_a_finite: requires T > 0");

    FiniteHorizonSample out;
    out.batch.values.resize(n);
    out.endpoints.resize(n);
    out.batch.model_spec = model.spec_string();
    out.batch.seed = seed;
    out.batch.truncation_tol = 0.0;
    out.batch.horizon = horizon;

    const auto sampler = make_block_sampler(model, h);
    out.batch.step = sampler->step();
    sample_replicates(n, [&](std::size_t i, Rng& rng) {
        const double t = horizon.kind == Horizon::Kind::Exponential
                             ? rng.exponential()
                             : horizon.t;
        const auto [a, xi] = sampler->draw_horizon(t, rng);
        out.batch.values[i] = a;
        out.endpoints[i] = xi;
    }, seed);
    return out;
}

std::vector<double> grid_path(const LevyModel& model, double h,
                              std::size_t steps, Rng& rng) {
    if (!(h > 0.0)) throw DomainError("grid_path: requires h > 0");
    std::vector<double> xs(steps + 1);
    xs[0] = 0.0;
    switch (model.kind) {
        case ModelKind::BrownianDrift: {
            const double sh = std::sqrt(h);
            for (std::size_t i = 0; i < steps; ++i)
                xs[i + 1] =
                    xs[i] + model.nu * h + model.sigma * sh * rng.normal();
            return xs;
        }
        case ModelKind::StableSubordinatorDrift: {
            const double hs = std::pow(h, 1.0 / model.alpha);
            for (std::size_t i = 0; i < steps; ++i)
                xs[i + 1] = xs[i] + model.a_drift * h -
                            hs * sample_stable_one_sided(model.alpha, rng);
            return xs;
        }
        case ModelKind::CompoundPoissonDrift: {
            // Skeleton of the event-driven path at times h, 2h, ...
            double x = 0.0;
            double next_jump = model.jump_rate > 0.0
                                   ? rng.exponential() / model.jump_rate
                                   : std::numeric_limits<double>::infinity();
            double now = 0.0;
            for (std::size_t i = 0; i < steps; ++i) {
                const double target = now + h;
                while (next_jump <= target) {
                    x += rng.exponential() / model.jump_scale;
                    next_jump += model.jump_rate > 0.0
                                     ? rng.exponential() / model.jump_rate
                                     : std::numeric_limits<double>::infinity();
                }
                x += model.drift * h;
                now = target;
                xs[i + 1] = x;
            }
            return xs;
        }
    }
    throw Error("grid_path: unreachable");
}

}  // namespace levycramer
