#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sosfit/commands.hpp"
#include "sosfit/dataset.hpp"
#include "sosfit/estimation.hpp"
#include "sosfit/hypothesis.hpp"
#include "sosfit/inference.hpp"
#include "sosfit/likelihood.hpp"
#include "sosfit/simulate.hpp"

namespace py = pybind11;
using namespace sosfit;

namespace {

MultiplierScheme make_scheme(const py::object& spec) {
    // float -> power trend, list -> explicit multipliers
    if (py::isinstance<MultiplierScheme>(spec)) return spec.cast<MultiplierScheme>();
    if (py::isinstance<py::float_>(spec) || py::isinstance<py::int_>(spec)) {
        return MultiplierScheme::power_trend(spec.cast<double>());
    }
    return MultiplierScheme::explicit_alphas(spec.cast<std::vector<double>>());
}

ADomain parse_domain(const std::string& s) {
    if (s == "free") return ADomain::Free;
    if (s == "ge1") return ADomain::GeOne;
    throw DomainError("a_domain must be 'free' or 'ge1'");
}

py::list matrix_to_list(const Matrix3& m) {
    py::list rows;
    for (const auto& r : m) {
        py::list row;
        for (double v : r) row.append(v);
        rows.append(row);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_sosfit, m) {
    m.doc() = "Weibull/exponential fitting for sequential order statistics "
              "under power-trend proportional hazards";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "SosfitError");

    py::class_<SosSample>(m, "SosSample")
        .def(py::init([](std::vector<double> times, int n) {
                 return SosSample::validate(std::move(times), n);
             }),
             py::arg("times"), py::arg("n"))
        .def_property_readonly("n", &SosSample::n)
        .def_property_readonly("r", &SosSample::r)
        .def_property_readonly("times", [](const SosSample& s) { return s.times(); })
        .def_property_readonly("input_was_sorted", &SosSample::input_was_sorted)
        .def_property_readonly("has_ties", &SosSample::has_ties)
        .def("__repr__", [](const SosSample& s) {
            return "SosSample(n=" + std::to_string(s.n()) + ", r=" + std::to_string(s.r()) + ")";
        });

    py::class_<MultiplierScheme>(m, "MultiplierScheme")
        .def_static("power_trend", &MultiplierScheme::power_trend, py::arg("a"))
        .def_static("explicit_alphas", &MultiplierScheme::explicit_alphas, py::arg("alphas"))
        .def("alpha", &MultiplierScheme::alpha, py::arg("j"))
        .def("weights", &MultiplierScheme::weights, py::arg("n"), py::arg("r"))
        .def("weights_all_positive", &MultiplierScheme::weights_all_positive, py::arg("n"),
             py::arg("r"))
        .def_property_readonly("is_power_trend", &MultiplierScheme::is_power_trend);

    py::class_<FitResult>(m, "FitResult")
        .def_property_readonly("model",
                               [](const FitResult& f) { return std::string(model_name(f.model)); })
        .def_readonly("beta", &FitResult::beta)
        .def_readonly("sigma", &FitResult::sigma)
        .def_readonly("a", &FitResult::a)
        .def_readonly("loglik", &FitResult::loglik)
        .def_readonly("aic", &FitResult::aic)
        .def_readonly("n_params", &FitResult::n_params)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("boundary_a", &FitResult::boundary_a)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("diagnostic", &FitResult::diagnostic)
        .def("__repr__", [](const FitResult& f) {
            std::string s = "FitResult(" + std::string(model_name(f.model));
            if (f.beta) s += ", beta=" + std::to_string(*f.beta);
            s += ", sigma=" + std::to_string(f.sigma);
            if (f.a) s += ", a=" + std::to_string(*f.a);
            s += ", loglik=" + std::to_string(f.loglik) + ")";
            return s;
        });

    m.def("loglik_weibull",
          [](const SosSample& s, const py::object& scheme, double beta, double sigma) {
              return loglik_weibull(s, make_scheme(scheme), WeibullParams{beta, sigma});
          },
          py::arg("sample"), py::arg("scheme"), py::arg("beta"), py::arg("sigma"));
    m.def("loglik_exponential",
          [](const SosSample& s, const py::object& scheme, double sigma) {
              return loglik_exponential(s, make_scheme(scheme), ExpParams{sigma});
          },
          py::arg("sample"), py::arg("scheme"), py::arg("sigma"));
    m.def("loglik_constant", &loglik_constant, py::arg("sample"));
    m.def("score_ptcphm",
          [](const SosSample& s, double a, double beta, double sigma) {
              return score_ptcphm(s, a, WeibullParams{beta, sigma});
          },
          py::arg("sample"), py::arg("a"), py::arg("beta"), py::arg("sigma"));

    m.def("fit_weibull_known_alpha",
          [](const SosSample& s, const py::object& scheme) {
              return fit_weibull_known_alpha(s, make_scheme(scheme));
          },
          py::arg("sample"), py::arg("scheme"));
    m.def("fit_weibull_ptcphm",
          [](const SosSample& s, const std::string& domain) {
              return fit_weibull_ptcphm(s, parse_domain(domain));
          },
          py::arg("sample"), py::arg("a_domain") = "free");
    m.def("fit_exponential_known_alpha",
          [](const SosSample& s, const py::object& scheme) {
              return fit_exponential_known_alpha(s, make_scheme(scheme));
          },
          py::arg("sample"), py::arg("scheme"));
    m.def("fit_exponential_ptcphm",
          [](const SosSample& s, const std::string& domain) {
              return fit_exponential_ptcphm(s, parse_domain(domain));
          },
          py::arg("sample"), py::arg("a_domain") = "free");
    m.def("fit_all", &fit_all, py::arg("sample"));

    py::class_<ObservedInformation>(m, "ObservedInformation")
        .def_property_readonly("w", [](const ObservedInformation& i) { return matrix_to_list(i.w); })
        .def_property_readonly("inverse",
                               [](const ObservedInformation& i) { return matrix_to_list(i.inverse); })
        .def_property_readonly("cofactors",
                               [](const ObservedInformation& i) { return matrix_to_list(i.cofactors); })
        .def_readonly("det", &ObservedInformation::det)
        .def("positive_definite", &ObservedInformation::positive_definite);

    m.def("observed_information", &observed_information, py::arg("sample"), py::arg("beta"),
          py::arg("sigma"), py::arg("a"));

    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("__repr__", [](const Interval& iv) {
            return "(" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + ")";
        });

    py::class_<ConfidenceReport>(m, "ConfidenceReport")
        .def_readonly("gamma", &ConfidenceReport::gamma)
        .def_readonly("z", &ConfidenceReport::z)
        .def_readonly("simultaneous", &ConfidenceReport::simultaneous)
        .def_readonly("beta", &ConfidenceReport::beta)
        .def_readonly("sigma", &ConfidenceReport::sigma)
        .def_readonly("a", &ConfidenceReport::a);

    m.def("equi_tailed_intervals",
          [](const ObservedInformation& info, double beta, double sigma, double a,
             double gamma) {
              return equi_tailed_intervals(info, Estimates{beta, sigma, a}, gamma);
          },
          py::arg("info"), py::arg("beta"), py::arg("sigma"), py::arg("a"), py::arg("gamma"));
    m.def("bonferroni_region",
          [](const ObservedInformation& info, double beta, double sigma, double a, double gamma) {
              return bonferroni_region(info, Estimates{beta, sigma, a}, gamma);
          },
          py::arg("info"), py::arg("beta"), py::arg("sigma"), py::arg("a"), py::arg("gamma"));

    py::class_<SurvivalInterval>(m, "SurvivalInterval")
        .def_readonly("point", &SurvivalInterval::point)
        .def_readonly("lo", &SurvivalInterval::lo)
        .def_readonly("hi", &SurvivalInterval::hi)
        .def_readonly("clamped", &SurvivalInterval::clamped);

    m.def("survival_interval",
          [](const ObservedInformation& info, double beta, double sigma, double a, double t0,
             double gamma) {
              return survival_interval(info, Estimates{beta, sigma, a}, t0, gamma);
          },
          py::arg("info"), py::arg("beta"), py::arg("sigma"), py::arg("a"), py::arg("t0"),
          py::arg("gamma"));

    m.def("normal_quantile", &normal_quantile, py::arg("p"));
    m.def("chisq1_quantile", &chisq1_quantile, py::arg("p"));
    m.def("chisq1_sf", &chisq1_sf, py::arg("x"));

    py::class_<GlrResult>(m, "GlrResult")
        .def_readonly("lambda_", &GlrResult::lambda)
        .def_readonly("stat", &GlrResult::stat)
        .def_readonly("threshold", &GlrResult::threshold)
        .def_readonly("p_value", &GlrResult::p_value)
        .def_readonly("reject", &GlrResult::reject)
        .def_readonly("boundary", &GlrResult::boundary)
        .def_readonly("fit_h", &GlrResult::fit_h)
        .def_readonly("fit_k", &GlrResult::fit_k);

    m.def("glr_test_a_weibull",
          [](const SosSample& s, double gamma, const std::string& alt, bool mixture) {
              return glr_test_a_weibull(s, gamma, parse_domain(alt), mixture);
          },
          py::arg("sample"), py::arg("gamma"), py::arg("alt") = "ge1",
          py::arg("boundary_mixture") = false);
    m.def("glr_test_a_exponential",
          [](const SosSample& s, double gamma, const std::string& alt, bool mixture) {
              return glr_test_a_exponential(s, gamma, parse_domain(alt), mixture);
          },
          py::arg("sample"), py::arg("gamma"), py::arg("alt") = "ge1",
          py::arg("boundary_mixture") = false);
    m.def("glr_test_exponentiality",
          [](const SosSample& s, double gamma, const std::string& within) {
              if (within == "a=1") return glr_test_exponentiality(s, gamma, Within::AEqualOne);
              if (within == "free") return glr_test_exponentiality(s, gamma, Within::FreeA);
              throw DomainError("within must be 'a=1' or 'free'");
          },
          py::arg("sample"), py::arg("gamma"), py::arg("within") = "a=1");

    py::class_<McLevel>(m, "McLevel")
        .def_readonly("level", &McLevel::level)
        .def_readonly("stderr", &McLevel::stderr_)
        .def_readonly("replicates", &McLevel::replicates)
        .def_readonly("failures", &McLevel::failures);

    m.def("mc_actual_level", &mc_actual_level, py::arg("n"), py::arg("r"), py::arg("beta"),
          py::arg("sigma"), py::arg("a0") = 1.0, py::arg("gamma") = 0.05,
          py::arg("replicates") = 1000, py::arg("seed") = 1);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("substream", &RngStream::substream, py::arg("seed"), py::arg("index"))
        .def("next_uniform", &RngStream::next_uniform)
        .def("next_exponential", &RngStream::next_exponential);

    m.def("sample_sos",
          [](int n, int r, const py::object& scheme, double beta, double sigma, RngStream& rng) {
              const WeibullBaseline baseline(WeibullParams{beta, sigma});
              return sample_sos(n, r, make_scheme(scheme), baseline, rng);
          },
          py::arg("n"), py::arg("r"), py::arg("scheme"), py::arg("beta"), py::arg("sigma"),
          py::arg("rng"));

    m.def("run_study_file",
          [](const std::string& config_path) {
              const StudyConfig cfg = StudyConfig::load(config_path);
              return run_study(cfg).to_csv();
          },
          py::arg("config_path"), "Run a study config and return the CSV text");

    m.def("load_dataset",
          [](const std::string& path) {
              const Dataset d = load_dataset(path);
              return dataset_sample(d);
          },
          py::arg("path"));

    m.def("weibull_cum_hazard",
          [](double x, double beta, double sigma) {
              return weibull_cum_hazard(x, WeibullParams{beta, sigma});
          },
          py::arg("x"), py::arg("beta"), py::arg("sigma"));
    m.def("weibull_inverse_cum_hazard",
          [](double u, double beta, double sigma) {
              return weibull_inverse_cum_hazard(u, WeibullParams{beta, sigma});
          },
          py::arg("u"), py::arg("beta"), py::arg("sigma"));
}
