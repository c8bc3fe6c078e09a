#include "levycramer/laws.hpp"

#include <cmath>
#include <limits>

#include "levycramer/errors.hpp"
#include "levycramer/specfun.hpp"

namespace levycramer {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ExactLaw ExactLaw::inverse_gamma(double m, double scale) {
    if (!(m > 0.0) || !(scale > 0.0))
        throw DomainError("inverse_gamma: requires m, scale > 0");
    ExactLaw law;
    law.kind = Kind::InverseGamma;
    law.m = m;
    law.scale = scale;
    return law;
}

ExactLaw ExactLaw::inverse_beta(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw DomainError("inverse_beta: requires p, q > 0");
    ExactLaw law;
    law.kind = Kind::InverseBeta;
    law.p = p;
    law.q = q;
    return law;
}

double ExactLaw::tail_index() const {
    return kind == Kind::InverseGamma ? m : p;
}

ExactLaw exact_law_of(const LevyModel& model) {
    switch (model.kind) {
        case ModelKind::BrownianDrift:
            return ExactLaw::inverse_gamma(
                -2.0 * model.nu / (model.sigma * model.sigma),
                2.0 / (model.sigma * model.sigma));
        case ModelKind::CompoundPoissonDrift:
            if (!model.has_ab)
                throw NoClosedFormError(
                    "exact_law_of: no closed form outside the (a,b) "
                    "compound-Poisson parameterization");
            return ExactLaw::inverse_beta(1.0 - model.a, model.a + model.b - 1.0);
        case ModelKind::StableSubordinatorDrift:
            throw NoClosedFormError(
                "exact_law_of: the stable-subordinator functional has no "
                "known closed-form law");
    }
    throw Error("exact_law_of: unreachable");
}

double tail(const ExactLaw& law, double t) {
    if (!(t > 0.0)) throw DomainError("tail: requires t > 0");
    if (law.kind == ExactLaw::Kind::InverseGamma)
        return specfun::reg_inc_gamma(law.m, law.scale / t);
    // 1/beta is supported on [1, inf).
    if (t < 1.0) return 1.0;
    return specfun::reg_inc_beta(law.p, law.q, 1.0 / t);
}

double cdf(const ExactLaw& law, double t) {
    if (!(t > 0.0)) return 0.0;
    return 1.0 - tail(law, t);
}

double tail_constant(const ExactLaw& law) {
    if (law.kind == ExactLaw::Kind::InverseGamma)
        return std::exp(law.m * std::log(law.scale) -
                        specfun::log_gamma(law.m)) /
               law.m;
    return std::exp(-specfun::log_beta(law.p, law.q)) / law.p;
}

double exact_moment(const ExactLaw& law, double alpha) {
    if (alpha == 0.0) return 1.0;
    if (law.kind == ExactLaw::Kind::InverseGamma) {
        if (alpha >= law.m) return kInf;
        return std::exp(alpha * std::log(law.scale) +
                        specfun::log_gamma(law.m - alpha) -
                        specfun::log_gamma(law.m));
    }
    if (alpha >= law.p) return kInf;
    // E beta^{-alpha} = B(p-alpha, q)/B(p, q); also valid for alpha < 0.
    return std::exp(specfun::log_beta(law.p - alpha, law.q) -
                    specfun::log_beta(law.p, law.q));
}

}  // namespace levycramer
