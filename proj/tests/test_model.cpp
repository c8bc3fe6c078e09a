#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "levycramer/errors.hpp"
#include "levycramer/model.hpp"
#include "levycramer/pathsim.hpp"
#include "levycramer/stats.hpp"

using namespace levycramer;

namespace {

const LevyModel kBm = LevyModel::brownian(std::sqrt(2.0), -1.0);
const LevyModel kCpp = LevyModel::compound_poisson(0.5, 1.0);
const LevyModel kStable = LevyModel::stable_subordinator(0.5, 2.0);

}  // namespace

TEST_CASE("model invariants rejected at construction") {
    CHECK_THROWS_AS(LevyModel::brownian(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(LevyModel::brownian(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(LevyModel::compound_poisson(1.5, 1.0), DomainError);
    CHECK_THROWS_AS(LevyModel::compound_poisson(0.5, 0.4), DomainError);
    CHECK_THROWS_AS(LevyModel::stable_subordinator(1.2, 1.0), DomainError);
    CHECK_THROWS_AS(LevyModel::stable_subordinator(0.5, -1.0), DomainError);
}

TEST_CASE("model spec grammar round-trips") {
    for (const auto* spec :
         {"bm:sigma=1.5,nu=-0.25", "cpp:a=0.5,b=1", "stable:alpha=0.5,a=2",
          "cppx:rate=0,scale=1,drift=-1"}) {
        const LevyModel m = parse_model(spec);
        const LevyModel again = parse_model(m.spec_string());
        CHECK(again.spec_string() == m.spec_string());
    }
    CHECK_THROWS_AS(parse_model("bm:sigma=1.5"), ParseError);
    CHECK_THROWS_AS(parse_model("gauss:sigma=1,nu=-1"), ParseError);
    CHECK_THROWS_AS(parse_model("bm:sigma=abc,nu=-1"), ParseError);
    CHECK_THROWS_AS(parse_model("cpp:a=0.5,b=1,extra=2"), ParseError);
    CHECK_THROWS_AS(parse_model("cpp:a=1.5,b=1"), DomainError);
}

TEST_CASE("phi closed forms") {
    // Brownian sigma=sqrt(2), nu=-1: Phi(l) = l - l^2.
    CHECK(phi(kBm, 0.0) == 0.0);
    CHECK(std::fabs(phi(kBm, 1.0)) < 1e-15);
    CHECK(std::fabs(phi(kBm, 0.5) - 0.25) < 1e-15);
    // Compound Poisson a=0.5, b=1: Phi(l) = l(0.5-l)/(1-l).
    CHECK(phi(kCpp, 0.0) == 0.0);
    CHECK(std::fabs(phi(kCpp, 0.25) - 1.0 / 12.0) < 1e-15);
    CHECK(std::fabs(phi(kCpp, 0.5)) < 1e-15);
    CHECK(std::fabs(phi(kCpp, 0.75) + 0.75) < 1e-15);
    // Stable alpha=0.5, a=2: Phi(l) = sqrt(l) - 2l.
    CHECK(phi(kStable, 0.0) == 0.0);
    CHECK(std::fabs(phi(kStable, 0.25)) < 1e-15);
    CHECK(std::fabs(phi(kStable, 1.0) + 1.0) < 1e-15);
}

TEST_CASE("phi domain errors") {
    CHECK_THROWS_AS(phi(kCpp, 1.0), DomainError);
    CHECK_THROWS_AS(phi(kCpp, 2.0), DomainError);
    CHECK_THROWS_AS(phi(kStable, -0.1), DomainError);
    CHECK_NOTHROW(phi(kBm, -3.0));  // Brownian exponent is entire
}

TEST_CASE("phi_prime closed forms and finite-difference agreement") {
    CHECK(std::fabs(phi_prime(kBm, 1.0) + 1.0) < 1e-15);
    CHECK(std::fabs(phi_prime(kBm, 0.0) - 1.0) < 1e-15);  // -nu
    CHECK(std::fabs(phi_prime(kCpp, 0.5) + 1.0) < 1e-14);
    CHECK(std::fabs(phi_prime(kStable, 0.25) + 1.0) < 1e-14);

    const struct {
        const LevyModel* m;
        std::vector<double> grid;
    } cases[] = {{&kBm, {0.1, 0.5, 1.0, 1.7}},
                 {&kCpp, {0.1, 0.3, 0.5, 0.8}},
                 {&kStable, {0.05, 0.25, 0.7, 1.5}}};
    for (const auto& c : cases) {
        for (double l : c.grid) {
            const double eps = 1e-6 * std::max(1.0, l);
            const double fd =
                (phi(*c.m, l + eps) - phi(*c.m, l - eps)) / (2.0 * eps);
            const double an = phi_prime(*c.m, l);
            CHECK(std::fabs(fd - an) / std::max(1.0, std::fabs(an)) < 1e-6);
        }
    }
}

TEST_CASE("solve_cramer reproduces the closed-form exponents") {
    const auto bm = solve_cramer(kBm);
    CHECK(std::fabs(bm.chi - 1.0) < 1e-10);
    CHECK(std::fabs(phi(kBm, bm.chi)) <= 1e-10);
    CHECK(std::fabs(bm.tilt_mean_m - 1.0) < 1e-9);
    CHECK(bm.phi_prime_at_chi < 0.0);

    const auto cp = solve_cramer(kCpp);
    CHECK(std::fabs(cp.chi - 0.5) < 1e-10);
    CHECK(std::fabs(cp.tilt_mean_m - 1.0) < 1e-9);

    const auto st = solve_cramer(kStable);
    CHECK(std::fabs(st.chi - 0.25) < 1e-10);
    CHECK(std::fabs(st.tilt_mean_m - 1.0) < 1e-9);

    CHECK(bm.bracket.second - bm.bracket.first <= 1.1e-12);
    CHECK(bm.iterations > 0);
}

TEST_CASE("solve_cramer rejects models violating Cramer's condition") {
    // Pure negative drift (zero jump rate): Phi(l) = l > 0 for all l > 0.
    const auto det = LevyModel::compound_poisson_explicit(0.0, 1.0, -1.0);
    CHECK_THROWS_AS(solve_cramer(det), NoRootError);
    // Tilted (positive drift) model has no positive root either.
    const auto tilted = esscher_tilt(kCpp, 0.5);
    CHECK_THROWS_AS(solve_cramer(tilted), NoRootError);
}

TEST_CASE("root sandwich and concavity") {
    for (const LevyModel* m : {&kBm, &kCpp, &kStable}) {
        const double chi = solve_cramer(*m).chi;
        CHECK(phi(*m, chi / 2.0) > 0.0);
        if (chi * 1.1 < m->domain_limit()) CHECK(phi(*m, chi * 1.1) < 0.0);
    }
    // Concavity on random triples within the domain.
    Rng rng(20240817);
    for (const LevyModel* m : {&kBm, &kCpp, &kStable}) {
        const double limit = std::min(m->domain_limit(), 4.0);
        for (int trial = 0; trial < 500; ++trial) {
            double l1 = limit * rng.uniform();
            double l2 = limit * rng.uniform();
            double l3 = limit * rng.uniform();
            if (l1 > l2) std::swap(l1, l2);
            if (l2 > l3) std::swap(l2, l3);
            if (l1 > l2) std::swap(l1, l2);
            if (!(l1 < l2 && l2 < l3)) continue;
            const double w = (l2 - l1) / (l3 - l1);
            const double chord = (1.0 - w) * phi(*m, l1) + w * phi(*m, l3);
            CHECK(phi(*m, l2) >= chord - 1e-12);
        }
    }
}

TEST_CASE("esscher tilt closed forms") {
    const auto bt = esscher_tilt(kBm, 1.0);
    CHECK(bt.kind == ModelKind::BrownianDrift);
    CHECK(bt.sigma == doctest::Approx(std::sqrt(2.0)));
    CHECK(bt.nu == doctest::Approx(1.0));  // nu + sigma^2 chi = -1 + 2

    const auto same = esscher_tilt(kBm, 0.0);
    CHECK(same.nu == kBm.nu);
    CHECK(same.sigma == kBm.sigma);

    const auto ct = esscher_tilt(kCpp, 0.5);
    CHECK(ct.kind == ModelKind::CompoundPoissonDrift);
    CHECK(!ct.has_ab);
    CHECK(ct.jump_rate == doctest::Approx(1.0));   // 0.5*1/(1-0.5)
    CHECK(ct.jump_scale == doctest::Approx(0.5));  // 1 - 0.5
    CHECK(ct.drift == doctest::Approx(-1.0));
    // Tilted mean = drift + rate/scale = -1 + 2 = 1 = m.
    CHECK(ct.drift + ct.jump_rate / ct.jump_scale == doctest::Approx(1.0));

    CHECK_THROWS_AS(esscher_tilt(kStable, 0.25), UnsupportedTiltError);
    CHECK_THROWS_AS(esscher_tilt(kBm, 0.7), DomainError);  // not a root
}

TEST_CASE("esscher tilt exponent identity on a 20-point grid") {
    for (const LevyModel* m : {&kBm, &kCpp}) {
        const double chi = solve_cramer(*m).chi;
        const LevyModel tilted = esscher_tilt(*m, chi);
        const double limit = m->domain_limit();
        const double top = std::isinf(limit) ? 2.0 : limit - chi;
        for (int i = 0; i < 20; ++i) {
            const double l = top * (i + 0.5) / 20.5;
            CHECK(std::fabs(phi(tilted, l) - phi(*m, l + chi)) < 1e-10);
        }
    }
}

TEST_CASE("Monte-Carlo Laplace check: E e^{l xi_1} = e^{-Phi(l)}") {
    // M = e^{xi_1} is exact in law for every family at any grid step, so a
    // coarse grid keeps this cheap.
    const std::size_t n = 100000;
    int idx = 0;
    for (const LevyModel* m : {&kBm, &kCpp, &kStable}) {
        const double chi = solve_cramer(*m).chi;
        for (double l : {chi / 2.0, chi}) {
            std::vector<double> vals(n);
            const auto sampler = make_block_sampler(*m, 1.0 / 64.0);
            sample_replicates(n, [&](std::size_t i, Rng& rng) {
                vals[i] = std::exp(l * std::log(sampler->draw(rng).m_factor));
            }, 90210 + 7 * idx);
            ++idx;
            const auto s = mean_se(vals);
            const double want = std::exp(-phi(*m, l));
            INFO("model ", m->spec_string(), " lambda ", l);
            CHECK(std::fabs(s.mean - want) <= 4.0 * s.se);
        }
    }
}

TEST_CASE("kesten_report analytics and Monte Carlo") {
    // Brownian: bound (1/eps) e^{-Phi(1.5)} = 2 e^{0.75}.
    const auto kb = kesten_report(kBm, 1.0, 0.5, 20000, 4242, 1.0 / 64.0);
    CHECK(std::fabs(kb.analytic_m_chi - 1.0) < 1e-12);
    CHECK(std::fabs(kb.analytic_bound - 4.2340000332253493) < 1e-12);
    CHECK(std::fabs(kb.mc_m_chi - 1.0) <= 4.0 * kb.mc_m_chi_se);
    CHECK(kb.mc_q_chi > 0.0);
    CHECK(kb.mc_m_log_m >= 0.0);

    // Compound Poisson at n = 1e5: E[M^chi] = 1 within 3 SE.
    const auto kc = kesten_report(kCpp, 0.5, 0.25, 100000, 4243);
    CHECK(std::fabs(kc.analytic_m_chi - 1.0) < 1e-12);
    CHECK(std::fabs(kc.analytic_bound - 8.4680000664506987) < 1e-12);
    CHECK(std::fabs(kc.mc_m_chi - 1.0) <= 3.0 * kc.mc_m_chi_se);

    // Phi(chi+eps) must stay finite.
    CHECK_THROWS_AS(kesten_report(kCpp, 0.5, 0.6, 100, 1), DomainError);
}
