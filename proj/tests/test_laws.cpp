#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levycramer/errors.hpp"
#include "levycramer/laws.hpp"

using namespace levycramer;

namespace {

constexpr double kSqrtPi = 1.7724538509055160;
constexpr double kTwoOverPi = 0.63661977236758134;
constexpr double kOneMinusExpM1 = 0.63212055882855768;  // 1 - e^{-1}

// 32-point Gauss-Legendre on [0,1] (positive 32-point nodes mirrored).
void gauss_legendre01(double* x, double* w) {
    static const double xs[16] = {
        0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
        0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
        0.5877157572407623290, 0.6630442669302152009, 0.7321821187402896804,
        0.7944837959679424070, 0.8493676137325699701, 0.8963211557660521240,
        0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
        0.9972638618494815635};
    static const double ws[16] = {
        0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
        0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
        0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
        0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
        0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
        0.0070186100094700966};
    for (int i = 0; i < 16; ++i) {
        x[2 * i] = 0.5 * (1.0 - xs[i]);
        x[2 * i + 1] = 0.5 * (1.0 + xs[i]);
        w[2 * i] = 0.5 * ws[i];
        w[2 * i + 1] = 0.5 * ws[i];
    }
}

// Quadrature derivation of the tail constant, independent of the library:
// the mass of the gamma (resp. beta) density on [0, x] behaves like
// x^k/(k Gamma(k)) (resp. x^p/(p B(p,q))) as x -> 0, so integrating the
// density at x = 1e-8 after the substitution u = x v^{1/k} pins the
// constant to O(x) = 1e-8 relative.
double c_quad_inverse_gamma(double m, double scale) {
    double nodes[32], weights[32];
    gauss_legendre01(nodes, weights);
    const double x = 1e-8;
    double s = 0.0;
    for (int i = 0; i < 32; ++i)
        s += weights[i] * std::exp(-x * std::pow(nodes[i], 1.0 / m));
    // integral_0^x u^{m-1} e^{-u} du = (x^m / m) * s; tail constant is
    // scale^m/Gamma(m) * (that integral)/x^m.
    return std::exp(m * std::log(scale) - std::lgamma(m)) / m * s;
}

double c_quad_inverse_beta(double p, double q) {
    double nodes[32], weights[32];
    gauss_legendre01(nodes, weights);
    const double x = 1e-8;
    double s = 0.0;
    for (int i = 0; i < 32; ++i)
        s += weights[i] * std::pow(1.0 - x * std::pow(nodes[i], 1.0 / p),
                                   q - 1.0);
    const double log_b =
        std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
    return std::exp(-log_b) / p * s;
}

}  // namespace

TEST_CASE("exact_law_of the three families") {
    const auto ig = exact_law_of(LevyModel::brownian(std::sqrt(2.0), -1.0));
    CHECK(ig.kind == ExactLaw::Kind::InverseGamma);
    CHECK(ig.m == doctest::Approx(1.0));
    CHECK(ig.scale == doctest::Approx(1.0));

    const auto ib = exact_law_of(LevyModel::compound_poisson(0.5, 1.0));
    CHECK(ib.kind == ExactLaw::Kind::InverseBeta);
    CHECK(ib.p == doctest::Approx(0.5));
    CHECK(ib.q == doctest::Approx(0.5));

    CHECK_THROWS_AS(exact_law_of(LevyModel::stable_subordinator(0.5, 2.0)),
                    NoClosedFormError);
    CHECK_THROWS_AS(
        exact_law_of(LevyModel::compound_poisson_explicit(1.0, 0.5, -1.0)),
        NoClosedFormError);

    // The law's tail index is the generating model's Cramer root.
    const auto ig2 = exact_law_of(LevyModel::brownian(1.0, -1.0));
    CHECK(ig2.m == doctest::Approx(2.0));
    CHECK(ig2.scale == doctest::Approx(2.0));
    CHECK(ig2.tail_index() == doctest::Approx(2.0));
}

TEST_CASE("tail values") {
    const auto ig = ExactLaw::inverse_gamma(1.0, 1.0);
    CHECK(std::fabs(tail(ig, 1.0) - kOneMinusExpM1) < 1e-12);
    const auto ib = ExactLaw::inverse_beta(0.5, 0.5);
    CHECK(tail(ib, 1.0) == 1.0);
    CHECK(tail(ib, 0.5) == 1.0);  // support of 1/beta is [1, inf)
    CHECK(std::fabs(tail(ib, 4.0) - 1.0 / 3.0) < 1e-12);
    CHECK_THROWS_AS(tail(ig, 0.0), DomainError);
}

TEST_CASE("tail monotone, cdf complement, tail(0+) -> 1") {
    for (const auto& law : {ExactLaw::inverse_gamma(1.0, 1.0),
                            ExactLaw::inverse_gamma(2.0, 2.0),
                            ExactLaw::inverse_beta(0.5, 0.5),
                            ExactLaw::inverse_beta(0.3, 1.7)}) {
        double prev = 1.0;
        CHECK(tail(law, 1e-12) == doctest::Approx(1.0));
        for (double t = 0.25; t < 1e5; t *= 1.9) {
            const double s = tail(law, t);
            CHECK(s <= prev + 1e-15);
            CHECK(std::fabs(s + cdf(law, t) - 1.0) < 1e-15);
            prev = s;
        }
    }
}

TEST_CASE("tail constants: closed forms vs quadrature derivation") {
    const auto ig11 = ExactLaw::inverse_gamma(1.0, 1.0);
    CHECK(std::fabs(tail_constant(ig11) - 1.0) < 1e-12);
    const auto ib = ExactLaw::inverse_beta(0.5, 0.5);
    CHECK(std::fabs(tail_constant(ib) - kTwoOverPi) < 1e-12);
    const auto ig22 = ExactLaw::inverse_gamma(2.0, 2.0);
    CHECK(std::fabs(tail_constant(ig22) - 2.0) < 1e-12);

    // Both derivations of the constant must agree to 1e-8 before the
    // values are used as oracles anywhere else.
    for (const auto& law : {ig11, ig22, ExactLaw::inverse_gamma(0.5, 3.0)}) {
        const double cq = c_quad_inverse_gamma(law.m, law.scale);
        CHECK(std::fabs(tail_constant(law) - cq) /
                  std::max(1.0, cq) < 1e-8);
    }
    for (const auto& law : {ib, ExactLaw::inverse_beta(0.7, 2.2)}) {
        const double cq = c_quad_inverse_beta(law.p, law.q);
        CHECK(std::fabs(tail_constant(law) - cq) /
                  std::max(1.0, cq) < 1e-8);
    }
}

TEST_CASE("tail * t^chi converges to the constant at the stated rates") {
    const auto ig = ExactLaw::inverse_gamma(1.0, 1.0);
    const double c = tail_constant(ig);
    const double rel2 = std::fabs(tail(ig, 1e2) * 1e2 / c - 1.0);
    const double rel3 = std::fabs(tail(ig, 1e3) * 1e3 / c - 1.0);
    const double rel4 = std::fabs(tail(ig, 1e4) * 1e4 / c - 1.0);
    CHECK(rel2 < 0.05);
    CHECK(rel3 < 0.005);
    CHECK(rel4 < 0.0005);
}

TEST_CASE("exact moments") {
    const auto ig = ExactLaw::inverse_gamma(1.0, 1.0);
    CHECK(std::fabs(exact_moment(ig, 0.5) - kSqrtPi) < 1e-12);
    CHECK(exact_moment(ig, 0.0) == 1.0);
    CHECK(std::isinf(exact_moment(ig, 1.0)));
    CHECK(std::isinf(exact_moment(ig, 1.5)));

    const auto ib = ExactLaw::inverse_beta(0.5, 0.5);
    // E beta^{-alpha} = B(p-alpha, q)/B(p,q) = B(0.25,0.5)/B(0.5,0.5).
    const double want =
        std::exp(std::lgamma(0.25) + std::lgamma(0.5) - std::lgamma(0.75) -
                 (std::lgamma(0.5) * 2.0 - std::lgamma(1.0)));
    CHECK(std::fabs(exact_moment(ib, 0.25) - want) < 1e-12);
    CHECK(std::isinf(exact_moment(ib, 0.5)));
    CHECK(std::isfinite(exact_moment(ib, 0.49)));

    // Finite exactly below the tail index (Cramer boundary).
    for (double alpha = 0.05; alpha < 2.0; alpha += 0.05) {
        const bool fin = std::isfinite(exact_moment(ig, alpha));
        CHECK(fin == (alpha < ig.tail_index()));
    }
}
