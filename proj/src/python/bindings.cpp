// Python bindings for the levycramer core: model construction, the Cramer
// exponent solver, path/batch samplers, tail estimators, and the
// closed-form validation suite.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levycramer/batch_io.hpp"
#include "levycramer/errors.hpp"
#include "levycramer/laws.hpp"
#include "levycramer/model.hpp"
#include "levycramer/pathsim.hpp"
#include "levycramer/renewal.hpp"
#include "levycramer/specfun.hpp"
#include "levycramer/tailstats.hpp"
#include "levycramer/validate.hpp"

namespace py = pybind11;
using namespace levycramer;

namespace {

Horizon horizon_from_object(const py::object& horizon) {
    if (horizon.is_none()) return Horizon::exponential();
    return Horizon::fixed(horizon.cast<double>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cramer exponents and exponential functionals of Levy processes";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<NoRootError>(m, "NoRootError");
    py::register_exception<UnsupportedTiltError>(m, "UnsupportedTiltError");
    py::register_exception<NonTerminationError>(m, "NonTerminationError");
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError");
    py::register_exception<InsufficientTailError>(m, "InsufficientTailError");
    py::register_exception<LadderTimeoutError>(m, "LadderTimeoutError");
    py::register_exception<NoClosedFormError>(m, "NoClosedFormError");
    py::register_exception<ParseError>(m, "ParseError");

    py::class_<LevyModel>(m, "LevyModel")
        .def_static("brownian", &LevyModel::brownian, py::arg("sigma"),
                    py::arg("nu"))
        .def_static("compound_poisson", &LevyModel::compound_poisson,
                    py::arg("a"), py::arg("b"))
        .def_static("compound_poisson_explicit",
                    &LevyModel::compound_poisson_explicit, py::arg("rate"),
                    py::arg("scale"), py::arg("drift"))
        .def_static("stable_subordinator", &LevyModel::stable_subordinator,
                    py::arg("alpha"), py::arg("a"))
        .def_static("parse", &parse_model, py::arg("spec"))
        .def_property_readonly("spec",
                               [](const LevyModel& m) { return m.spec_string(); })
        .def("__repr__", [](const LevyModel& m) {
            return "LevyModel('" + m.spec_string() + "')";
        });

    py::class_<CramerSolution>(m, "CramerSolution")
        .def_readonly("chi", &CramerSolution::chi)
        .def_readonly("phi_prime_at_chi", &CramerSolution::phi_prime_at_chi)
        .def_readonly("m", &CramerSolution::tilt_mean_m)
        .def_readonly("bracket", &CramerSolution::bracket)
        .def_readonly("iterations", &CramerSolution::iterations)
        .def("__repr__", [](const CramerSolution& s) {
            return "CramerSolution(chi=" + std::to_string(s.chi) +
                   ", m=" + std::to_string(s.tilt_mean_m) + ")";
        });

    m.def("phi", &phi, py::arg("model"), py::arg("lam"));
    m.def("phi_prime", &phi_prime, py::arg("model"), py::arg("lam"));
    m.def("solve_cramer", &solve_cramer, py::arg("model"));
    m.def("esscher_tilt", &esscher_tilt, py::arg("model"), py::arg("chi"));

    py::class_<KestenReport>(m, "KestenReport")
        .def_readonly("analytic_m_chi", &KestenReport::analytic_m_chi)
        .def_readonly("analytic_bound", &KestenReport::analytic_bound)
        .def_readonly("mc_m_chi", &KestenReport::mc_m_chi)
        .def_readonly("mc_m_chi_se", &KestenReport::mc_m_chi_se)
        .def_readonly("mc_m_log_m", &KestenReport::mc_m_log_m)
        .def_readonly("mc_m_log_m_se", &KestenReport::mc_m_log_m_se)
        .def_readonly("mc_q_chi", &KestenReport::mc_q_chi)
        .def_readonly("mc_q_chi_se", &KestenReport::mc_q_chi_se)
        .def_readonly("n", &KestenReport::n);
    m.def("kesten_report", &kesten_report, py::arg("model"), py::arg("chi"),
          py::arg("epsilon"), py::arg("n"), py::arg("seed"),
          py::arg("step") = 1.0 / 256.0,
          py::call_guard<py::gil_scoped_release>());

    py::class_<ExactLaw>(m, "ExactLaw")
        .def_static("inverse_gamma", &ExactLaw::inverse_gamma, py::arg("m"),
                    py::arg("scale"))
        .def_static("inverse_beta", &ExactLaw::inverse_beta, py::arg("p"),
                    py::arg("q"))
        .def_property_readonly("tail_index", &ExactLaw::tail_index);
    m.def("exact_law_of", &exact_law_of, py::arg("model"));
    m.def("law_tail", &tail, py::arg("law"), py::arg("t"));
    m.def("law_cdf", &cdf, py::arg("law"), py::arg("t"));
    m.def("tail_constant", &tail_constant, py::arg("law"));
    m.def("exact_moment", &exact_moment, py::arg("law"), py::arg("alpha"));

    py::class_<PathBlock>(m, "PathBlock")
        .def_readonly("m_factor", &PathBlock::m_factor)
        .def_readonly("q_integral", &PathBlock::q_integral)
        .def_property_readonly("step", [](const PathBlock& b) {
            return b.step ? py::cast(*b.step) : py::none().cast<py::object>();
        });
    m.def(
        "sample_block",
        [](const LevyModel& model, double step, std::uint64_t seed) {
            Rng rng(seed);
            return sample_block(model, step, rng);
        },
        py::arg("model"), py::arg("step") = 1.0 / 256.0, py::arg("seed") = 42);

    m.def(
        "sample_stable_one_sided",
        [](double alpha, std::size_t n, std::uint64_t seed) {
            Rng rng(seed);
            std::vector<double> out(n);
            for (auto& v : out) v = sample_stable_one_sided(alpha, rng);
            return out;
        },
        py::arg("alpha"), py::arg("n"), py::arg("seed") = 42,
        py::call_guard<py::gil_scoped_release>());

    py::class_<SampleBatch>(m, "SampleBatch")
        .def_readonly("values", &SampleBatch::values)
        .def_readonly("model_spec", &SampleBatch::model_spec)
        .def_readonly("seed", &SampleBatch::seed)
        .def_readonly("truncation_tol", &SampleBatch::truncation_tol)
        .def_property_readonly("step", [](const SampleBatch& b) {
            return b.step ? py::cast(*b.step) : py::none().cast<py::object>();
        });
    m.def("sample_a_infinity", &sample_a_infinity, py::arg("model"),
          py::arg("n"), py::arg("step") = 1.0 / 256.0,
          py::arg("tol") = 1e-8, py::arg("seed") = 42,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "sample_a_finite",
        [](const LevyModel& model, const py::object& horizon, std::size_t n,
           double step, std::uint64_t seed) {
            const Horizon h = horizon_from_object(horizon);
            py::gil_scoped_release release;
            auto out = sample_a_finite(model, h, n, step, seed);
            return std::make_pair(std::move(out.batch.values),
                                  std::move(out.endpoints));
        },
        py::arg("model"), py::arg("horizon") = py::none(), py::arg("n") = 1000,
        py::arg("step") = 1.0 / 256.0, py::arg("seed") = 42,
        "Returns (A_T values, xi_T endpoints); horizon=None draws "
        "T ~ Exp(1) per replicate.");

    m.def("save_batch", &save_batch, py::arg("batch"), py::arg("path"),
          py::arg("format") = "csv");
    m.def("load_batch", &load_batch, py::arg("path"));

    py::class_<HillEstimate>(m, "HillEstimate")
        .def_readonly("chi_hat", &HillEstimate::chi_hat)
        .def_readonly("chi_se", &HillEstimate::chi_se);
    m.def(
        "hill_estimate",
        [](const std::vector<double>& values, std::size_t k) {
            return hill_estimate(values, k == 0 ? default_hill_k(values.size())
                                                : k);
        },
        py::arg("values"), py::arg("k") = 0);
    m.def("default_hill_k", &default_hill_k, py::arg("n"));

    m.def(
        "smoothed_cramer_curve",
        [](const std::vector<double>& values, double chi,
           const std::vector<double>& grid) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& p : smoothed_cramer_curve(values, chi, grid))
                out.emplace_back(p.v, p.r, p.r_smooth);
            return out;
        },
        py::arg("values"), py::arg("chi"), py::arg("grid"));

    py::class_<PlateauEstimate>(m, "PlateauEstimate")
        .def_readonly("c_hat", &PlateauEstimate::c_hat)
        .def_readonly("c_se", &PlateauEstimate::c_se)
        .def_readonly("window_lo_v", &PlateauEstimate::window_lo_v)
        .def_readonly("window_hi_v", &PlateauEstimate::window_hi_v);
    m.def(
        "estimate_c_plateau",
        [](const std::vector<double>& values, double chi) {
            return estimate_c_plateau(values, chi);
        },
        py::arg("values"), py::arg("chi"));

    py::class_<TailFit>(m, "TailFit")
        .def_readonly("chi_hat", &TailFit::chi_hat)
        .def_readonly("chi_se", &TailFit::chi_se)
        .def_readonly("c_hat", &TailFit::c_hat)
        .def_readonly("c_se", &TailFit::c_se)
        .def_readonly("k", &TailFit::k_order_stats)
        .def_readonly("n", &TailFit::n);
    m.def(
        "fit_tail",
        [](const std::vector<double>& values, std::size_t k,
           double chi_override) { return fit_tail(values, k, chi_override); },
        py::arg("values"), py::arg("k"), py::arg("chi_override") = 0.0);

    py::class_<KsResult>(m, "KsResult")
        .def_readonly("statistic", &KsResult::statistic)
        .def_readonly("critical_1pct", &KsResult::critical_1pct);
    m.def(
        "ks_two_sample",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
            return ks_two_sample(xs, ys);
        },
        py::arg("xs"), py::arg("ys"));
    m.def(
        "ks_one_sample_law",
        [](const std::vector<double>& xs, const ExactLaw& law) {
            return ks_one_sample(xs, [&](double x) { return cdf(law, x); });
        },
        py::arg("xs"), py::arg("law"));

    py::class_<ConstantEstimate>(m, "ConstantEstimate")
        .def_readonly("c_hat", &ConstantEstimate::c_hat)
        .def_readonly("c_se", &ConstantEstimate::c_se)
        .def_readonly("m", &ConstantEstimate::m)
        .def_readonly("chi", &ConstantEstimate::chi)
        .def_readonly("n", &ConstantEstimate::n)
        .def_readonly("mean_a_chi", &ConstantEstimate::mean_a_chi)
        .def_readonly("mean_shifted_chi", &ConstantEstimate::mean_shifted_chi);
    m.def("estimate_constant", &estimate_constant, py::arg("model"),
          py::arg("cramer"), py::arg("n"), py::arg("step") = 1.0 / 256.0,
          py::arg("tol") = 1e-8, py::arg("seed") = 42,
          py::call_guard<py::gil_scoped_release>());

    m.def("tilted_drift", &tilted_drift, py::arg("model"), py::arg("cramer"));

    py::class_<WaldReport>(m, "WaldReport")
        .def_readonly("mean_h", &WaldReport::mean_h)
        .def_readonly("se_h", &WaldReport::se_h)
        .def_readonly("mean_tau", &WaldReport::mean_tau)
        .def_readonly("se_tau", &WaldReport::se_tau)
        .def_readonly("ratio", &WaldReport::ratio)
        .def_readonly("ratio_se", &WaldReport::ratio_se)
        .def_readonly("step_mean", &WaldReport::step_mean)
        .def_readonly("n", &WaldReport::n)
        .def_readonly("timeouts", &WaldReport::timeouts)
        .def_readonly("passed", &WaldReport::pass);
    m.def("wald_ladder_check", &wald_ladder_check, py::arg("model"),
          py::arg("cramer"), py::arg("h") = 0.01, py::arg("n") = 10000,
          py::arg("max_steps") = 100000, py::arg("seed") = 42,
          py::call_guard<py::gil_scoped_release>());

    auto sf = m.def_submodule("specfun", "log-gamma and regularized "
                                         "incomplete gamma/beta");
    sf.def("log_gamma", &specfun::log_gamma, py::arg("x"));
    sf.def("reg_inc_gamma", &specfun::reg_inc_gamma, py::arg("a"),
           py::arg("x"));
    sf.def("reg_inc_beta", &specfun::reg_inc_beta, py::arg("a"), py::arg("b"),
           py::arg("x"));

    m.def(
        "validate",
        [](std::uint64_t seed, bool smoke) {
            py::gil_scoped_release release;
            const auto report = validate_suite(seed, smoke);
            py::gil_scoped_acquire acquire;
            py::list rows;
            for (const auto& r : report.rows) {
                py::dict d;
                d["name"] = r.name;
                d["target"] = r.target;
                d["estimate"] = r.estimate;
                d["tolerance"] = r.tolerance;
                d["pass"] = r.pass;
                d["note"] = r.note;
                rows.append(d);
            }
            py::dict out;
            out["seed"] = report.seed;
            out["smoke"] = report.smoke;
            out["all_pass"] = report.all_pass();
            out["checks"] = rows;
            return out;
        },
        py::arg("seed") = 42, py::arg("smoke") = true);

    m.attr("__version__") = "0.1.0";
}
