#include "levycramer/renewal.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "levycramer/errors.hpp"
#include "levycramer/parallel.hpp"
#include "levycramer/pathsim.hpp"
#include "levycramer/stats.hpp"

namespace levycramer {

namespace {

constexpr std::size_t kMaxBlocksPerReplicate = 1'000'000;

double perpetuity_draw(const BlockSampler& sampler, double truncation_tol,
                       Rng& rng) {
    double a = 0.0, prod = 1.0;
    std::size_t blocks = 0;
    while (prod >= truncation_tol) {
        const PathBlock blk = sampler.draw(rng);
        a += prod * blk.q_integral;
        prod *= blk.m_factor;
        if (++blocks > kMaxBlocksPerReplicate)
            throw NonTerminationError(
                "perpetuity draw exceeded 1e6 blocks; drift is not negative "
                "in practice");
    }
    return a;
}

}  // namespace

ConstantEstimate estimate_constant(const LevyModel& model,
                                   const CramerSolution& cramer,
                                   std::size_t n, double h,
                                   double truncation_tol, std::uint64_t seed) {
    if (n == 0) throw DomainError("estimate_constant: requires n >= 1");
    const double chi = cramer.chi;
    const double m = cramer.tilt_mean_m;
    if (!(m > 0.0)) throw DomainError("estimate_constant: requires m > 0");
    if (std::fabs(phi(model, chi)) > 1e-8)
        throw DomainError("estimate_constant: cramer does not match model");

    const auto sampler = make_block_sampler(model, h);
    std::vector<double> term(n), a_chi(n), shifted_chi(n);
    sample_replicates(n, [&](std::size_t i, Rng& rng) {
        const double t1 = rng.exponential();
        const auto [a_t, xi_t] = sampler->draw_horizon(t1, rng);
        const double a_tail =
            std::exp(xi_t) * perpetuity_draw(*sampler, truncation_tol, rng);
        const double a_inf = a_t + a_tail;
        // a_inf^chi - a_tail^chi without cancellation when a_t << a_inf:
        //   a_inf^chi * (-expm1(chi * log1p(-a_t/a_inf))).
        const double pow_a = std::exp(chi * std::log(a_inf));
        const double diff = -std::expm1(chi * std::log1p(-a_t / a_inf));
        term[i] = pow_a * diff;
        a_chi[i] = pow_a;
        shifted_chi[i] = std::exp(chi * std::log(a_tail));
    }, seed);

    const auto stats = batch_means(term);
    ConstantEstimate est;
    est.chi = chi;
    est.m = m;
    est.n = n;
    est.c_hat = stats.mean / (chi * m);
    est.c_se = stats.se / (chi * m);
    est.mean_a_chi = mean_se(a_chi).mean;
    est.mean_shifted_chi = mean_se(shifted_chi).mean;
    return est;
}

double tilted_drift(const LevyModel& model, const CramerSolution& cramer) {
    const double m = -phi_prime(model, cramer.chi);
    if (!(m > 0.0))
        throw DomainError("tilted_drift: -Phi'(chi) is not positive");
    return m;
}

TiltedDriftCheck tilted_drift_mc_check(const LevyModel& model,
                                       const CramerSolution& cramer, double h,
                                       std::size_t n, std::uint64_t seed) {
    TiltedDriftCheck check;
    check.m = tilted_drift(model, cramer);
    const LevyModel tilted = esscher_tilt(model, cramer.chi);
    std::vector<double> incr(n);
    sample_replicates(n, [&](std::size_t i, Rng& rng) {
        const auto path = grid_path(tilted, h, 1, rng);
        incr[i] = path[1] / h;
    }, seed);
    const auto s = mean_se(incr);
    check.mc_mean_per_h = s.mean;
    check.mc_se_per_h = s.se;
    return check;
}

WaldReport wald_ladder_check(const LevyModel& model,
                             const CramerSolution& cramer, double h,
                             std::size_t n, std::size_t max_steps,
                             std::uint64_t seed) {
    if (n == 0) throw DomainError("wald_ladder_check: requires n >= 1");
    if (!(h > 0.0)) throw DomainError("wald_ladder_check: requires h > 0");
    const LevyModel tilted = esscher_tilt(model, cramer.chi);
    const double m = tilted_drift(model, cramer);

    // ladder[i] = {H, tau}; tau = 0 flags a timed-out replicate.
    std::vector<std::pair<double, double>> ladder(n);
    sample_replicates(n, [&](std::size_t i, Rng& rng) {
        double x = 0.0;
        if (tilted.kind == ModelKind::BrownianDrift) {
            const double sh = std::sqrt(h);
            for (std::size_t j = 1; j <= max_steps; ++j) {
                x += tilted.nu * h + tilted.sigma * sh * rng.normal();
                if (x > 0.0) {
                    ladder[i] = {x, static_cast<double>(j)};
                    return;
                }
            }
        } else {
            double next_jump = tilted.jump_rate > 0.0
                                   ? rng.exponential() / tilted.jump_rate
                                   : std::numeric_limits<double>::infinity();
            double now = 0.0;
            for (std::size_t j = 1; j <= max_steps; ++j) {
                const double target = now + h;
                while (next_jump <= target) {
                    x += rng.exponential() / tilted.jump_scale;
                    next_jump += rng.exponential() / tilted.jump_rate;
                }
                x += tilted.drift * h;
                now = target;
                if (x > 0.0) {
                    ladder[i] = {x, static_cast<double>(j)};
                    return;
                }
            }
        }
        ladder[i] = {0.0, 0.0};
    }, seed);

    WaldReport rep;
    rep.step_mean = h * m;
    std::vector<double> hs, taus;
    hs.reserve(n);
    taus.reserve(n);
    for (const auto& [lh, lt] : ladder) {
        if (lt == 0.0) {
            ++rep.timeouts;
        } else {
            hs.push_back(lh);
            taus.push_back(lt);
        }
    }
    if (static_cast<double>(rep.timeouts) > 0.001 * static_cast<double>(n))
        throw LadderTimeoutError(
            "wald_ladder_check: ladder epoch exceeded max_steps in more "
            "than 0.1% of replicates; tilted drift not positive?");
    rep.n = hs.size();

    const auto sh = mean_se(hs);
    const auto st = mean_se(taus);
    rep.mean_h = sh.mean;
    rep.se_h = sh.se;
    rep.mean_tau = st.mean;
    rep.se_tau = st.se;
    rep.ratio = rep.mean_h / (rep.step_mean * rep.mean_tau);

    // Delta method for the ratio of correlated means.
    KahanSum cov;
    for (std::size_t i = 0; i < hs.size(); ++i)
        cov.add((hs[i] - sh.mean) * (taus[i] - st.mean));
    const double nn = static_cast<double>(hs.size());
    const double cov_means = cov.value() / (nn - 1.0) / nn;
    const double rel_var = sh.se * sh.se / (sh.mean * sh.mean) +
                           st.se * st.se / (st.mean * st.mean) -
                           2.0 * cov_means / (sh.mean * st.mean);
    rep.ratio_se = rep.ratio * std::sqrt(std::max(rel_var, 0.0));
    rep.pass = std::fabs(rep.ratio - 1.0) <= 3.0 * rep.ratio_se;
    return rep;
}

}  // namespace levycramer
