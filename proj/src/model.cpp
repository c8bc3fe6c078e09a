#include "levycramer/model.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "levycramer/errors.hpp"
#include "levycramer/pathsim.hpp"
#include "levycramer/stats.hpp"

namespace levycramer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

LevyModel LevyModel::brownian(double sigma, double nu) {
    if (!(sigma > 0.0)) throw DomainError("brownian: requires sigma > 0");
    if (!(nu < 0.0)) throw DomainError("brownian: requires nu < 0");
    LevyModel m;
    m.kind = ModelKind::BrownianDrift;
    m.sigma = sigma;
    m.nu = nu;
    return m;
}

LevyModel LevyModel::compound_poisson(double a, double b) {
    if (!(a > 0.0 && a < 1.0))
        throw DomainError("compound_poisson: requires 0 < a < 1");
    if (!(b > 0.0 && a + b > 1.0))
        throw DomainError("compound_poisson: requires b > 0 and a + b > 1");
    LevyModel m;
    m.kind = ModelKind::CompoundPoissonDrift;
    m.has_ab = true;
    m.a = a;
    m.b = b;
    m.jump_rate = a + b - 1.0;
    m.jump_scale = b;
    m.drift = -1.0;
    return m;
}

LevyModel LevyModel::compound_poisson_explicit(double rate, double scale,
                                               double drift) {
    if (!(rate >= 0.0))
        throw DomainError("compound_poisson_explicit: requires rate >= 0");
    if (!(scale > 0.0))
        throw DomainError("compound_poisson_explicit: requires scale > 0");
    LevyModel m;
    m.kind = ModelKind::CompoundPoissonDrift;
    m.has_ab = false;
    m.jump_rate = rate;
    m.jump_scale = scale;
    m.drift = drift;
    return m;
}

LevyModel LevyModel::stable_subordinator(double alpha, double a_drift) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("stable_subordinator: requires 0 < alpha < 1");
    if (!(a_drift > 0.0))
        throw DomainError("stable_subordinator: requires a > 0");
    LevyModel m;
    m.kind = ModelKind::StableSubordinatorDrift;
    m.alpha = alpha;
    m.a_drift = a_drift;
    return m;
}

double LevyModel::domain_limit() const {
    // The pole at jump_scale exists only when jumps actually occur.
    if (kind == ModelKind::CompoundPoissonDrift && jump_rate > 0.0)
        return jump_scale;
    return kInf;
}

std::string LevyModel::spec_string() const {
    switch (kind) {
        case ModelKind::BrownianDrift:
            return "bm:sigma=" + fmt_double(sigma) + ",nu=" + fmt_double(nu);
        case ModelKind::CompoundPoissonDrift:
            if (has_ab)
                return "cpp:a=" + fmt_double(a) + ",b=" + fmt_double(b);
            return "cppx:rate=" + fmt_double(jump_rate) +
                   ",scale=" + fmt_double(jump_scale) +
                   ",drift=" + fmt_double(drift);
        case ModelKind::StableSubordinatorDrift:
            return "stable:alpha=" + fmt_double(alpha) +
                   ",a=" + fmt_double(a_drift);
    }
    throw Error("spec_string: unreachable");
}

namespace {

// "key1=<f>,key2=<f>[,key3=<f>]" -> values, in the given key order.
std::vector<double> parse_kv(const std::string& body,
                             const std::vector<std::string>& keys,
                             const std::string& spec) {
    std::vector<double> out;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const std::string want = keys[i] + "=";
        if (body.compare(pos, want.size(), want) != 0)
            throw ParseError("bad model spec '" + spec + "': expected '" +
                             keys[i] + "='");
        pos += want.size();
        std::size_t end = body.find(',', pos);
        if (end == std::string::npos) end = body.size();
        const std::string tok = body.substr(pos, end - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad model spec '" + spec +
                             "': cannot parse number '" + tok + "'");
        }
        pos = end;
        const bool last = i + 1 == keys.size();
        if (!last) {
            if (pos >= body.size() || body[pos] != ',')
                throw ParseError("bad model spec '" + spec + "': expected ','");
            ++pos;
        } else if (pos != body.size()) {
            throw ParseError("bad model spec '" + spec + "': trailing input");
        }
    }
    return out;
}

}  // namespace

LevyModel parse_model(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("bad model spec '" + spec + "': missing ':'");
    const std::string family = spec.substr(0, colon);
    const std::string body = spec.substr(colon + 1);
    if (family == "bm") {
        const auto v = parse_kv(body, {"sigma", "nu"}, spec);
        return LevyModel::brownian(v[0], v[1]);
    }
    if (family == "cpp") {
        const auto v = parse_kv(body, {"a", "b"}, spec);
        return LevyModel::compound_poisson(v[0], v[1]);
    }
    if (family == "stable") {
        const auto v = parse_kv(body, {"alpha", "a"}, spec);
        return LevyModel::stable_subordinator(v[0], v[1]);
    }
    if (family == "cppx") {
        const auto v = parse_kv(body, {"rate", "scale", "drift"}, spec);
        return LevyModel::compound_poisson_explicit(v[0], v[1], v[2]);
    }
    throw ParseError("bad model spec '" + spec + "': unknown family '" +
                     family + "'");
}

double phi(const LevyModel& model, double lambda) {
    switch (model.kind) {
        case ModelKind::BrownianDrift:
            // E e^{l xi_t} = e^{t(s^2 l^2/2 + nu l)}.
            return -(0.5 * model.sigma * model.sigma * lambda * lambda +
                     model.nu * lambda);
        case ModelKind::CompoundPoissonDrift:
            if (model.jump_rate == 0.0) return -model.drift * lambda;
            if (lambda >= model.jump_scale)
                throw DomainError(
                    "phi: Phi = -inf at lambda >= jump scale (lambda=" +
                    fmt_double(lambda) + ", scale=" +
                    fmt_double(model.jump_scale) + ")");
            return -model.drift * lambda -
                   model.jump_rate * lambda / (model.jump_scale - lambda);
        case ModelKind::StableSubordinatorDrift:
            if (lambda < 0.0)
                throw DomainError("phi: stable family requires lambda >= 0");
            return std::pow(lambda, model.alpha) - model.a_drift * lambda;
    }
    throw Error("phi: unreachable");
}

double phi_prime(const LevyModel& model, double lambda) {
    switch (model.kind) {
        case ModelKind::BrownianDrift:
            return -(model.sigma * model.sigma * lambda + model.nu);
        case ModelKind::CompoundPoissonDrift: {
            if (model.jump_rate == 0.0) return -model.drift;
            if (lambda >= model.jump_scale)
                throw DomainError("phi_prime: lambda >= jump scale");
            const double d = model.jump_scale - lambda;
            return -model.drift - model.jump_rate * model.jump_scale / (d * d);
        }
        case ModelKind::StableSubordinatorDrift:
            if (!(lambda > 0.0))
                throw DomainError(
                    "phi_prime: stable family requires lambda > 0");
            return model.alpha * std::pow(lambda, model.alpha - 1.0) -
                   model.a_drift;
    }
    throw Error("phi_prime: unreachable");
}

namespace {

// Closed-form root used as the solver seed; NaN when the family's formula
// does not produce a usable positive value inside the domain.
double closed_form_chi(const LevyModel& model) {
    double chi = std::numeric_limits<double>::quiet_NaN();
    switch (model.kind) {
        case ModelKind::BrownianDrift:
            chi = -2.0 * model.nu / (model.sigma * model.sigma);
            break;
        case ModelKind::CompoundPoissonDrift:
            // Phi(l) = l(-drift(scale-l) - rate)/(scale-l): root where the
            // numerator bracket vanishes.
            if (model.drift < 0.0)
                chi = model.jump_scale + model.jump_rate / model.drift;
            break;
        case ModelKind::StableSubordinatorDrift:
            chi = std::pow(model.a_drift, 1.0 / (model.alpha - 1.0));
            break;
    }
    if (!(chi > 0.0) || chi >= model.domain_limit())
        return std::numeric_limits<double>::quiet_NaN();
    return chi;
}

}  // namespace

CramerSolution solve_cramer(const LevyModel& model) {
    const double limit = model.domain_limit();
    const double seed = closed_form_chi(model);

    // Lower bracket end: Phi > 0 close to 0 whenever a root exists.
    double lo = std::isnan(seed) ? 0.5 : seed * 0.5;
    if (!(lo > 0.0) || lo >= limit) lo = std::isinf(limit) ? 0.5 : limit * 0.25;
    int shrink = 0;
    while (phi(model, lo) <= 0.0) {
        lo *= 0.5;
        if (++shrink > 120)
            throw NoRootError("solve_cramer: Phi not positive near 0");
    }

    // Upper bracket end: walk out (or toward the pole) until Phi < 0.
    double hi = std::isnan(seed) ? 2.0 * lo : seed * 1.1;
    if (hi <= lo) hi = 2.0 * lo;
    if (hi >= limit) hi = 0.5 * (lo + limit);
    int grow = 0;
    while (phi(model, hi) >= 0.0) {
        const double next = std::isinf(limit) ? hi * 2.0 : 0.5 * (hi + limit);
        if (next <= hi || next >= limit || ++grow > 120)
            throw NoRootError(
                "solve_cramer: Phi does not change sign on the domain "
                "(Cramer's condition fails)");
        hi = next;
    }

    CramerSolution sol;
    int iters = 0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
        ++iters;
        if (phi(model, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    sol.bracket = {lo, hi};

    double chi = 0.5 * (lo + hi);
    // Newton polish inside the final bracket.
    for (int i = 0; i < 3; ++i) {
        const double f = phi(model, chi);
        const double fp = phi_prime(model, chi);
        if (fp == 0.0) break;
        const double next = chi - f / fp;
        if (!(next > lo && next < hi)) break;
        chi = next;
        ++iters;
    }
    if (std::fabs(phi(model, chi)) > 1e-10)
        throw NoRootError("solve_cramer: root polish failed, |Phi(chi)| = " +
                          fmt_double(std::fabs(phi(model, chi))));

    sol.chi = chi;
    sol.iterations = iters;
    sol.phi_prime_at_chi = phi_prime(model, chi);
    sol.tilt_mean_m = -sol.phi_prime_at_chi;
    if (!(sol.tilt_mean_m > 0.0))
        throw NoRootError("solve_cramer: nonpositive tilted mean at the root");
    return sol;
}

LevyModel esscher_tilt(const LevyModel& model, double chi) {
    if (!(chi >= 0.0)) throw DomainError("esscher_tilt: requires chi >= 0");
    if (model.kind == ModelKind::StableSubordinatorDrift)
        throw UnsupportedTiltError(
            "esscher_tilt: tilted stable-subordinator model leaves the "
            "family");
    if (std::fabs(phi(model, chi)) > 1e-8)
        throw DomainError("esscher_tilt: chi is not a root of Phi");
    if (chi == 0.0) return model;
    if (model.kind == ModelKind::BrownianDrift) {
        // Built in place: the tilted drift is positive, which the
        // user-facing factory rightly refuses.
        LevyModel tilted = model;
        tilted.nu = model.nu + model.sigma * model.sigma * chi;
        return tilted;
    }
    // Jump measure tilted by e^{chi x}: Exp(scale) -> Exp(scale - chi),
    // rate multiplied by E e^{chi J} = scale/(scale - chi); drift unchanged.
    const double scale = model.jump_scale - chi;
    const double rate = model.jump_rate * model.jump_scale / scale;
    return LevyModel::compound_poisson_explicit(rate, scale, model.drift);
}

KestenReport kesten_report(const LevyModel& model, double chi, double epsilon,
                           std::size_t n_mc, std::uint64_t seed, double h) {
    if (!(chi > 0.0)) throw DomainError("kesten_report: requires chi > 0");
    if (!(epsilon > 0.0))
        throw DomainError("kesten_report: requires epsilon > 0");
    if (chi + epsilon >= model.domain_limit())
        throw DomainError("kesten_report: Phi(chi+eps) = -inf");

    KestenReport rep;
    rep.chi = chi;
    rep.epsilon = epsilon;
    rep.n = n_mc;
    rep.analytic_m_chi = std::exp(-phi(model, chi));
    rep.analytic_bound = std::exp(-phi(model, chi + epsilon)) / epsilon;

    std::vector<double> m_chi(n_mc), m_log_m(n_mc), q_chi(n_mc);
    sample_replicates(n_mc, [&](std::size_t i, Rng& rng) {
        const PathBlock blk = sample_block(model, h, rng);
        const double log_m = std::log(blk.m_factor);
        const double mc = std::exp(chi * log_m);
        m_chi[i] = mc;
        m_log_m[i] = mc * std::max(log_m, 0.0);
        q_chi[i] = std::exp(chi * std::log(blk.q_integral));
    }, seed);

    const auto s1 = mean_se(m_chi);
    const auto s2 = mean_se(m_log_m);
    const auto s3 = mean_se(q_chi);
    rep.mc_m_chi = s1.mean;
    rep.mc_m_chi_se = s1.se;
    rep.mc_m_log_m = s2.mean;
    rep.mc_m_log_m_se = s2.se;
    rep.mc_q_chi = s3.mean;
    rep.mc_q_chi_se = s3.se;
    return rep;
}

}  // namespace levycramer
