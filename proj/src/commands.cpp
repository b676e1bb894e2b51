#include "sosfit/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "sosfit/dataset.hpp"
#include "sosfit/estimation.hpp"
#include "sosfit/hypothesis.hpp"
#include "sosfit/inference.hpp"
#include "sosfit/simulate.hpp"

namespace sosfit {

namespace {

using nlohmann::json;

json json_finite(double v) {
    // nlohmann serializes non-finite numbers as null; make that explicit.
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json input_block(const Dataset& d, const SosSample& s) {
    char checksum[32];
    std::snprintf(checksum, sizeof checksum, "fnv1a:%016llx",
                  static_cast<unsigned long long>(d.checksum));
    return json{{"path", d.path},
                {"n", s.n()},
                {"r", s.r()},
                {"checksum", checksum},
                {"n_from_header", d.n_from_header},
                {"input_was_sorted", s.input_was_sorted()},
                {"has_ties", s.has_ties()}};
}

json fit_json(const FitResult& f) {
    return json{{"model", model_name(f.model)},
                {"n_params", f.n_params},
                {"beta", f.beta ? json_finite(*f.beta) : json(nullptr)},
                {"sigma", json_finite(f.sigma)},
                {"a", f.a ? json_finite(*f.a) : json(nullptr)},
                {"loglik", json_finite(f.loglik)},
                {"aic", json_finite(f.aic)},
                {"converged", f.converged},
                {"boundary_a", f.boundary_a},
                {"iterations", f.iterations},
                {"diagnostic", f.diagnostic}};
}

json interval_json(const ConfidenceReport& r) {
    return json{{"gamma", r.gamma},
                {"z", r.z},
                {"simultaneous", r.simultaneous},
                {"beta", {{"lo", r.beta.lo}, {"hi", r.beta.hi}}},
                {"sigma", {{"lo", r.sigma.lo}, {"hi", r.sigma.hi}}},
                {"a", {{"lo", r.a.lo}, {"hi", r.a.hi}}}};
}

Report base_report(const char* command) {
    return json{{"schema", kReportSchema}, {"tool_version", kToolVersion}, {"command", command}};
}

ADomain parse_domain(const std::string& s) {
    if (s == "free") return ADomain::Free;
    if (s == "ge1") return ADomain::GeOne;
    throw ParseError("unknown a-domain '" + s + "' (expected free or ge1)");
}

MultiplierScheme scheme_for_known_alpha(const std::vector<double>& alphas) {
    if (alphas.empty()) return MultiplierScheme::power_trend(1.0);
    return MultiplierScheme::explicit_alphas(alphas);
}

void write_out(const Report& rep, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write report to " + path);
    out << rep.dump(2) << "\n";
}

template <typename Fn>
CommandResult guarded(const char* command, const std::string& out_path, Fn body) {
    CommandResult result;
    try {
        result.report = body();
        result.exit_code = result.report.value("exit_code", kExitOk);
        result.report.erase("exit_code");
    } catch (const ParseError& e) {
        result.report = base_report(command);
        result.report["error"] = {{"type", "input"}, {"message", e.what()}};
        result.exit_code = kExitInputError;
    } catch (const InvalidSample& e) {
        result.report = base_report(command);
        result.report["error"] = {{"type", "input"}, {"message", e.what()}};
        result.exit_code = kExitInputError;
    } catch (const NotPositiveDefinite& e) {
        result.report = base_report(command);
        result.report["error"] = {
            {"type", "numerical"},
            {"message", std::string(e.what()) +
                            " (the curvature at the fit is not positive definite; "
                            "interval estimates are unavailable for this dataset)"}};
        result.exit_code = kExitNumericalError;
    } catch (const Error& e) {
        result.report = base_report(command);
        result.report["error"] = {{"type", "numerical"}, {"message", e.what()}};
        result.exit_code = kExitNumericalError;
    }
    try {
        write_out(result.report, out_path);
    } catch (const ParseError& e) {
        result.report["error"] = {{"type", "input"}, {"message", e.what()}};
        result.exit_code = kExitInputError;
    }
    return result;
}

}  // namespace

std::string CommandResult::text() const { return render_report(report); }

CommandResult cmd_fit(const FitOptions& opt) {
    return guarded("fit", opt.out, [&]() {
        const Dataset data = load_dataset(opt.dataset);
        const SosSample sample = dataset_sample(data);
        const ADomain domain = parse_domain(opt.a_domain);

        if (!opt.alphas.empty() && opt.model != "exp-iid" && opt.model != "weibull-iid") {
            throw ParseError("--alpha applies to the known-multiplier fits "
                             "(--model exp-iid or weibull-iid)");
        }
        std::vector<FitResult> fits;
        if (opt.model == "all") {
            fits = fit_all(sample);
        } else if (opt.model == "exp-iid") {
            fits.push_back(fit_exponential_known_alpha(sample, scheme_for_known_alpha(opt.alphas)));
        } else if (opt.model == "exp-ptcphm") {
            fits.push_back(fit_exponential_ptcphm(sample, domain));
        } else if (opt.model == "weibull-iid") {
            fits.push_back(fit_weibull_known_alpha(sample, scheme_for_known_alpha(opt.alphas)));
        } else if (opt.model == "weibull-ptcphm") {
            fits.push_back(fit_weibull_ptcphm(sample, domain));
        } else {
            throw ParseError("unknown model '" + opt.model + "'");
        }

        Report rep = base_report("fit");
        rep["input"] = input_block(data, sample);
        rep["options"] = {{"model", opt.model},
                          {"a_domain", opt.a_domain},
                          {"alphas", opt.alphas.empty() ? json(nullptr) : json(opt.alphas)}};
        rep["loglik_constant"] = loglik_constant(sample);
        rep["fits"] = json::array();
        bool all_ok = true;
        for (const auto& f : fits) {
            rep["fits"].push_back(fit_json(f));
            all_ok = all_ok && f.converged;
        }
        rep["exit_code"] = all_ok ? kExitOk : kExitNumericalError;
        return rep;
    });
}

CommandResult cmd_ci(const CiOptions& opt) {
    return guarded("ci", opt.out, [&]() {
        const Dataset data = load_dataset(opt.dataset);
        const SosSample sample = dataset_sample(data);
        const FitResult fit = fit_weibull_ptcphm(sample, ADomain::Free);
        const Estimates est{*fit.beta, fit.sigma, *fit.a};
        const ObservedInformation info =
            observed_information(sample, est.beta, est.sigma, est.a);

        Report rep = base_report("ci");
        rep["input"] = input_block(data, sample);
        rep["gamma"] = opt.gamma;
        rep["fit"] = fit_json(fit);
        rep["information_positive_definite"] = info.positive_definite();
        rep["equi_tailed"] = interval_json(equi_tailed_intervals(info, est, opt.gamma));
        rep["bonferroni"] =
            opt.simultaneous ? interval_json(bonferroni_region(info, est, opt.gamma)) : json(nullptr);
        if (opt.survival_at) {
            const SurvivalInterval s = survival_interval(info, est, *opt.survival_at, opt.gamma);
            rep["survival"] = {{"t0", *opt.survival_at},
                               {"point", s.point},
                               {"lo", s.lo},
                               {"hi", s.hi},
                               {"clamped", s.clamped}};
        } else {
            rep["survival"] = nullptr;
        }
        rep["exit_code"] = fit.converged ? kExitOk : kExitNumericalError;
        return rep;
    });
}

CommandResult cmd_test(const TestOptions& opt) {
    return guarded("test", opt.out, [&]() {
        const Dataset data = load_dataset(opt.dataset);
        const SosSample sample = dataset_sample(data);

        GlrResult res;
        std::string alternative;
        if (opt.null_hypothesis == "a=1") {
            const ADomain alt = parse_domain(opt.a_domain);
            alternative = alt == ADomain::GeOne ? "a > 1" : "a != 1";
            if (opt.baseline == "weibull") {
                res = glr_test_a_weibull(sample, opt.gamma, alt, opt.boundary_mixture);
            } else if (opt.baseline == "exponential") {
                res = glr_test_a_exponential(sample, opt.gamma, alt, opt.boundary_mixture);
            } else {
                throw ParseError("unknown baseline '" + opt.baseline + "'");
            }
        } else if (opt.null_hypothesis == "beta=1") {
            alternative = "beta != 1";
            Within w;
            if (opt.within == "a=1") {
                w = Within::AEqualOne;
            } else if (opt.within == "free") {
                w = Within::FreeA;
            } else {
                throw ParseError("unknown family '" + opt.within + "' (expected a=1 or free)");
            }
            res = glr_test_exponentiality(sample, opt.gamma, w);
        } else {
            throw ParseError("unknown null hypothesis '" + opt.null_hypothesis +
                             "' (expected a=1 or beta=1)");
        }

        Report rep = base_report("test");
        rep["input"] = input_block(data, sample);
        rep["null"] = opt.null_hypothesis;
        rep["alternative"] = alternative;
        rep["baseline"] = opt.null_hypothesis == "beta=1" ? "weibull vs exponential" : opt.baseline;
        rep["within"] = opt.null_hypothesis == "beta=1" ? json(opt.within) : json(nullptr);
        rep["a_domain"] = opt.null_hypothesis == "a=1" ? json(opt.a_domain) : json(nullptr);
        rep["gamma"] = opt.gamma;
        rep["boundary_mixture"] = opt.boundary_mixture;
        rep["lambda"] = json_finite(res.lambda);
        rep["stat"] = json_finite(res.stat);
        rep["threshold"] = json_finite(res.threshold);
        rep["p_value"] = json_finite(res.p_value);
        rep["reject"] = res.reject;
        rep["boundary"] = res.boundary;
        rep["fit_h"] = fit_json(res.fit_h);
        rep["fit_k"] = fit_json(res.fit_k);

        if (opt.mc_replicates > 0) {
            if (opt.null_hypothesis != "a=1" || opt.baseline != "weibull") {
                throw ParseError("--mc calibration is available for --null a=1 --baseline weibull");
            }
            const double beta0 = res.fit_h.beta.value_or(1.0);
            const McLevel mc = mc_actual_level(sample.n(), sample.r(), beta0, res.fit_h.sigma,
                                               1.0, opt.gamma, opt.mc_replicates, opt.seed);
            rep["mc"] = {{"level", mc.level},
                         {"stderr", mc.stderr_},
                         {"replicates", mc.replicates},
                         {"failures", mc.failures},
                         {"seed", opt.seed}};
        } else {
            rep["mc"] = nullptr;
        }
        rep["exit_code"] =
            res.fit_h.converged && res.fit_k.converged ? kExitOk : kExitNumericalError;
        return rep;
    });
}

CommandResult cmd_simulate(const SimulateOptions& opt) {
    return guarded("simulate", "", [&]() {
        StudyConfig cfg = StudyConfig::load(opt.config);
        if (!opt.out.empty()) cfg.output = opt.out;
        if (cfg.output.empty()) {
            throw ParseError("no output path: set \"output\" in the config or pass --out");
        }
        const StudyReport report = run_study(cfg);
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) throw ParseError("cannot write study output to " + cfg.output);
        out << report.to_csv();

        Report rep = base_report("simulate");
        rep["config"] = {{"path", opt.config},
                         {"seed", cfg.seed},
                         {"replicates", cfg.replicates},
                         {"gamma", cfg.gamma}};
        rep["cells"] = cfg.grid.size();
        rep["replicates"] = cfg.replicates;
        rep["seed"] = cfg.seed;
        rep["output"] = cfg.output;
        rep["rows"] = report.rows.size();
        return rep;
    });
}

}  // namespace sosfit
