// levy-cramer: command-line surface of the exponential-functional toolkit.
//
// Subcommands: exponent, sample, tail, constant, kesten, wald, validate.
// JSON on stdout by default; batches and curves go to CSV.  Exit codes:
// 0 success, 2 usage/config error, 1 numerical failure (or failed
// validation rows).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levycramer/batch_io.hpp"
#include "levycramer/errors.hpp"
#include "levycramer/laws.hpp"
#include "levycramer/model.hpp"
#include "levycramer/pathsim.hpp"
#include "levycramer/renewal.hpp"
#include "levycramer/tailstats.hpp"
#include "levycramer/validate.hpp"

namespace lc = levycramer;
using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw lc::Error("cannot open '" + out_path + "' for writing");
    os << j.dump(2) << "\n";
}

json cramer_json(const lc::LevyModel& model, const lc::CramerSolution& sol) {
    json j;
    j["model"] = model.spec_string();
    j["chi"] = sol.chi;
    j["phi_prime_at_chi"] = sol.phi_prime_at_chi;
    j["m"] = sol.tilt_mean_m;
    j["bracket"] = {sol.bracket.first, sol.bracket.second};
    j["iterations"] = sol.iterations;
    return j;
}

struct CommonOpts {
    std::string model_spec;
    std::uint64_t seed = 42;
    std::size_t n = 100000;
    double step = 1.0 / 256.0;
    double tol = 1e-8;
    std::string out;
    std::string format = "json";
};

int run_exponent(const CommonOpts& o) {
    const auto model = lc::parse_model(o.model_spec);
    const auto sol = lc::solve_cramer(model);
    emit(cramer_json(model, sol), o.out);
    return 0;
}

int run_sample(const CommonOpts& o, const std::string& horizon_str,
               bool exp_horizon) {
    const auto model = lc::parse_model(o.model_spec);
    lc::SampleBatch batch;
    if (exp_horizon || !horizon_str.empty()) {
        const lc::Horizon horizon =
            exp_horizon ? lc::Horizon::exponential()
                        : lc::Horizon::from_string(horizon_str);
        batch = lc::sample_a_finite(model, horizon, o.n, o.step, o.seed).batch;
    } else {
        batch = lc::sample_a_infinity(model, o.n, o.step, o.tol, o.seed);
    }
    if (o.out.empty()) {
        if (o.format == "csv")
            lc::write_batch_csv(batch, std::cout);
        else
            std::cout << lc::batch_to_json(batch) << "\n";
    } else {
        lc::save_batch(batch, o.out, o.format);
    }
    return 0;
}

int run_tail(const CommonOpts& o, const std::string& in_path, std::size_t k,
             double chi_override, const std::string& curve_out) {
    lc::SampleBatch batch;
    if (!in_path.empty()) {
        batch = lc::load_batch(in_path);
    } else if (!o.model_spec.empty()) {
        const auto model = lc::parse_model(o.model_spec);
        batch = lc::sample_a_infinity(model, o.n, o.step, o.tol, o.seed);
    } else {
        throw lc::ParseError("tail: provide --in FILE or --model SPEC");
    }
    const std::size_t use_k =
        k > 0 ? k : lc::default_hill_k(batch.values.size());
    const auto fit = lc::fit_tail(batch.values, use_k, chi_override);
    json j;
    j["chi_hat"] = fit.chi_hat;
    j["chi_se"] = fit.chi_se;
    j["c_hat"] = fit.c_hat;
    j["c_se"] = fit.c_se;
    j["k"] = fit.k_order_stats;
    j["n"] = fit.n;
    j["model"] = batch.model_spec;
    emit(j, o.out);

    if (!curve_out.empty()) {
        const double chi = chi_override > 0.0 ? chi_override : fit.chi_hat;
        double lo = 0.0, hi = 0.0;
        {
            std::vector<double> logs;
            logs.reserve(batch.values.size());
            for (double v : batch.values) logs.push_back(std::log(v));
            std::sort(logs.begin(), logs.end());
            lo = logs[logs.size() / 2];
            hi = logs.back();
        }
        std::vector<double> grid(201);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / 200.0;
        const auto curve = lc::smoothed_cramer_curve(batch.values, chi, grid);
        std::ofstream os(curve_out);
        if (!os)
            throw lc::Error("cannot open '" + curve_out + "' for writing");
        os << "v,r,r_smooth\n";
        char line[128];
        for (const auto& p : curve) {
            std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", p.v, p.r,
                          p.r_smooth);
            os << line;
        }
    }
    return 0;
}

int run_constant(const CommonOpts& o) {
    const auto model = lc::parse_model(o.model_spec);
    const auto sol = lc::solve_cramer(model);
    const auto est =
        lc::estimate_constant(model, sol, o.n, o.step, o.tol, o.seed);
    json j;
    j["model"] = model.spec_string();
    j["c_hat"] = est.c_hat;
    j["c_se"] = est.c_se;
    j["chi"] = est.chi;
    j["m"] = est.m;
    j["n"] = est.n;
    j["step"] = o.step;
    j["mean_a_chi"] = est.mean_a_chi;
    j["mean_shifted_chi"] = est.mean_shifted_chi;
    emit(j, o.out);
    return 0;
}

int run_kesten(const CommonOpts& o, double eps) {
    const auto model = lc::parse_model(o.model_spec);
    const auto sol = lc::solve_cramer(model);
    const double use_eps = eps > 0.0 ? eps : sol.chi / 2.0;
    const auto rep =
        lc::kesten_report(model, sol.chi, use_eps, o.n, o.seed, o.step);
    json j;
    j["model"] = model.spec_string();
    j["chi"] = rep.chi;
    j["epsilon"] = rep.epsilon;
    j["analytic_m_chi"] = rep.analytic_m_chi;
    j["analytic_bound"] = rep.analytic_bound;
    j["mc_m_chi"] = {{"mean", rep.mc_m_chi}, {"se", rep.mc_m_chi_se}};
    j["mc_m_log_m"] = {{"mean", rep.mc_m_log_m}, {"se", rep.mc_m_log_m_se}};
    j["mc_q_chi"] = {{"mean", rep.mc_q_chi}, {"se", rep.mc_q_chi_se}};
    j["n"] = rep.n;
    emit(j, o.out);
    return 0;
}

int run_wald(const CommonOpts& o, double h, std::size_t max_steps) {
    const auto model = lc::parse_model(o.model_spec);
    const auto sol = lc::solve_cramer(model);
    const auto rep =
        lc::wald_ladder_check(model, sol, h, o.n, max_steps, o.seed);
    json j;
    j["model"] = model.spec_string();
    j["chi"] = sol.chi;
    j["m"] = sol.tilt_mean_m;
    j["h"] = h;
    j["mean_h"] = {{"mean", rep.mean_h}, {"se", rep.se_h}};
    j["mean_tau"] = {{"mean", rep.mean_tau}, {"se", rep.se_tau}};
    j["step_mean"] = rep.step_mean;
    j["ratio"] = rep.ratio;
    j["ratio_se"] = rep.ratio_se;
    j["n"] = rep.n;
    j["timeouts"] = rep.timeouts;
    j["pass"] = rep.pass;
    emit(j, o.out);
    return rep.pass ? 0 : 1;
}

int run_validate(std::uint64_t seed, bool smoke, const std::string& format,
                 const std::string& out) {
    lc::ValidateTimings timings;
    const auto report = lc::validate_suite(seed, smoke, &timings);
    const std::string text = format == "table" ? lc::report_table(report)
                                               : lc::report_json(report);
    if (out.empty()) {
        std::cout << text;
        if (format != "table") std::cout << "\n";
    } else {
        std::ofstream os(out);
        if (!os) throw lc::Error("cannot open '" + out + "' for writing");
        os << text;
        if (format != "table") os << "\n";
    }
    std::fprintf(stderr,
                 "timings: exponent %.3f ms, bm law %.1f s, cpp law %.1f s, "
                 "total %.1f s\n",
                 timings.exponent_ms, timings.bm_law_seconds,
                 timings.cpp_law_seconds, timings.total_seconds);
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cramer exponents and exponential functionals of Levy "
                 "processes"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string horizon_str, in_path, curve_out;
    bool exp_horizon = false, smoke = false;
    std::size_t k = 0, max_steps = 100000;
    double eps = 0.0, chi_override = 0.0, wald_h = 0.01;

    auto add_common = [&](CLI::App* cmd, bool needs_model) {
        auto* m = cmd->add_option("--model", o.model_spec,
                                  "model spec: bm:sigma=<f>,nu=<f> | "
                                  "cpp:a=<f>,b=<f> | stable:alpha=<f>,a=<f>");
        if (needs_model) m->required();
        cmd->add_option("--seed", o.seed, "master RNG seed");
        cmd->add_option("--n", o.n, "replicate count")->check(CLI::PositiveNumber);
        cmd->add_option("--step", o.step, "grid step for bm/stable paths")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol", o.tol, "perpetuity truncation tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* c_exp = app.add_subcommand("exponent", "solve Cramer's condition");
    add_common(c_exp, true);

    auto* c_sample = app.add_subcommand(
        "sample", "draw an A_inf (default) or finite-horizon batch");
    add_common(c_sample, true);
    c_sample->add_option("--horizon", horizon_str, "finite horizon T");
    c_sample->add_flag("--exp-horizon", exp_horizon,
                       "Exp(1) horizon per replicate");

    auto* c_tail = app.add_subcommand(
        "tail", "Hill tail fit and plateau constant from a batch");
    add_common(c_tail, false);
    c_tail->add_option("--in", in_path, "batch file (csv or json)");
    c_tail->add_option("--k", k, "Hill order-statistic count");
    c_tail->add_option("--chi", chi_override,
                       "use this exponent for the plateau instead of chi_hat");
    c_tail->add_option("--curve-out", curve_out, "write (v,r,r~) curve CSV");

    auto* c_const = app.add_subcommand(
        "constant", "renewal-representation estimate of the tail constant");
    add_common(c_const, true);

    auto* c_kesten = app.add_subcommand(
        "kesten", "Kesten-condition report for the unit-time (M,Q) pair");
    add_common(c_kesten, true);
    c_kesten->add_option("--eps", eps, "tilt margin (default chi/2)");

    auto* c_wald = app.add_subcommand(
        "wald", "ladder Wald-identity check on the tilted skeleton");
    add_common(c_wald, true);
    c_wald->add_option("--max-steps", max_steps, "ladder step budget");

    auto* c_val =
        app.add_subcommand("validate", "run the closed-form acceptance suite");
    c_val->add_option("--seed", o.seed, "master RNG seed");
    c_val->add_flag("--smoke", smoke, "reduced n, tolerances widened 5x");
    c_val->add_option("--out", o.out, "output path (default stdout)");
    o.format = "json";
    c_val->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_exp->parsed()) return run_exponent(o);
        if (c_sample->parsed()) return run_sample(o, horizon_str, exp_horizon);
        if (c_tail->parsed())
            return run_tail(o, in_path, k, chi_override, curve_out);
        if (c_const->parsed()) return run_constant(o);
        if (c_kesten->parsed()) return run_kesten(o, eps);
        if (c_wald->parsed()) {
            // The skeleton default is coarser than the path-grid default.
            if (c_wald->count("--step") == 0) wald_h = 0.01;
            else wald_h = o.step;
            return run_wald(o, wald_h, max_steps);
        }
        if (c_val->parsed())
            return run_validate(o.seed, smoke, o.format, o.out);
    } catch (const lc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lc::DomainError& e) {
        // Bad configuration (model invariants, flag combinations).
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lc::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
