#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levycramer/model.hpp"
#include "levycramer/parallel.hpp"
#include "levycramer/rng.hpp"

namespace levycramer {

// One unit-time simulation block of the random difference equation
// A = M A' + Q:  M = e^{xi_1}, Q = integral_0^1 e^{xi_s} ds.
struct PathBlock {
    double m_factor = 0.0;
    double q_integral = 0.0;
    std::optional<double> step;  // nullopt: exact (event-driven) block
    ModelKind model{ModelKind::BrownianDrift};
};

// Horizon of a batch: infinite (A_inf), fixed T, or Exp(1) drawn per
// replicate.
struct Horizon {
    enum class Kind { Infinity, Fixed, Exponential };
    Kind kind = Kind::Infinity;
    double t = 0.0;

    static Horizon infinity() { return {Kind::Infinity, 0.0}; }
    static Horizon fixed(double t) { return {Kind::Fixed, t}; }
    static Horizon exponential() { return {Kind::Exponential, 0.0}; }

    std::string to_string() const;
    static Horizon from_string(const std::string& s);
};

// A tagged batch of i.i.d. draws.  The metadata is everything needed to
// regenerate the values bit-for-bit.
struct SampleBatch {
    std::vector<double> values;
    std::string model_spec;
    std::uint64_t seed = 0;
    std::optional<double> step;  // nullopt: exact blocks
    double truncation_tol = 0.0; // 0 for finite-horizon batches
    Horizon horizon = Horizon::infinity();
};

// Finite-horizon draws keep the endpoint xi_T next to each A_T value.
struct FiniteHorizonSample {
    SampleBatch batch;            // values = A_T per replicate
    std::vector<double> endpoints;  // xi_T per replicate
};

// Per-family block machinery behind the samplers.  draw() produces one
// unit-interval block; draw_horizon(T) integrates the same construction on
// [0, T] and returns (A_T, xi_T).  Samplers hold no draw state, so one
// instance may serve replicates on any number of threads.
class BlockSampler {
  public:
    virtual ~BlockSampler() = default;
    virtual PathBlock draw(Rng& rng) const = 0;
    virtual std::pair<double, double> draw_horizon(double t, Rng& rng) const = 0;
    virtual std::optional<double> step() const = 0;
};

// Grid step h applies to the Brownian and stable families; the
// compound-Poisson sampler is event-driven and exact regardless of h.
std::unique_ptr<BlockSampler> make_block_sampler(const LevyModel& model,
                                                 double h);

// Single unit-interval block (convenience wrapper over BlockSampler).
PathBlock sample_block(const LevyModel& model, double h, Rng& rng);

// One-sided stable variate with Laplace transform E e^{-l S} = e^{-l^alpha}
// (Kanter / Chambers-Mallows-Stuck representation).
double sample_stable_one_sided(double alpha, Rng& rng);

// Perpetuity sampler for A_inf = sum_k M_1...M_{k-1} Q_k: accumulates
// blocks until the product of M factors drops below `truncation_tol`.
// The truncated remainder has expectation (product)*E[A_inf]; the batch
// records the tolerance so downstream checks can account for it.
// NonTerminationError if a replicate exceeds 10^6 blocks.
SampleBatch sample_a_infinity(const LevyModel& model, std::size_t n, double h,
                              double truncation_tol, std::uint64_t seed);

// Finite-horizon functional: per replicate returns A_T and xi_T, with
// T fixed or drawn Exp(1) per replicate (horizon.kind == Exponential).
FiniteHorizonSample sample_a_finite(const LevyModel& model, Horizon horizon,
                                    std::size_t n, double h,
                                    std::uint64_t seed);

// Grid skeleton xi_0, xi_h, ..., xi_{steps*h} of one path (Brownian or
// stable family), used by the refinement and maximal-inequality checks.
std::vector<double> grid_path(const LevyModel& model, double h,
                              std::size_t steps, Rng& rng);

}  // namespace levycramer
