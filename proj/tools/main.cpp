#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "sosfit/commands.hpp"

namespace {

int run(const sosfit::CommandResult& result) {
    std::fputs(result.text().c_str(), stdout);
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lifetime model fitting for sequential order statistics under "
                 "power-trend proportional hazards"};
    app.set_version_flag("--version", sosfit::kToolVersion);
    app.require_subcommand(1);

    sosfit::FitOptions fit_opt;
    auto* fit = app.add_subcommand("fit", "Fit lifetime models and compare by AIC");
    fit->add_option("dataset", fit_opt.dataset, "dataset file (one time per line, optional '# n=<int>')")
        ->required();
    fit->add_option("--model", fit_opt.model,
                    "exp-iid|exp-ptcphm|weibull-iid|weibull-ptcphm|all")
        ->default_val("all");
    fit->add_option("--alpha", fit_opt.alphas,
                    "explicit hazard multipliers for known-multiplier fits")
        ->delimiter(',');
    fit->add_option("--a-domain", fit_opt.a_domain, "trend domain: free|ge1")->default_val("free");
    fit->add_option("--out", fit_opt.out, "write the structured report here");

    sosfit::CiOptions ci_opt;
    auto* ci = app.add_subcommand("ci", "Confidence intervals from the observed information");
    ci->add_option("dataset", ci_opt.dataset)->required();
    ci->add_option("--gamma", ci_opt.gamma, "1 - confidence level")->default_val(0.05);
    ci->add_flag("--simultaneous", ci_opt.simultaneous, "add the Bonferroni region");
    double survival_t0 = 0.0;
    auto* surv = ci->add_option("--survival-at", survival_t0,
                                "also report a survival-probability interval at this time");
    ci->add_option("--out", ci_opt.out, "write the structured report here");

    sosfit::TestOptions test_opt;
    auto* test = app.add_subcommand("test", "Generalized likelihood ratio tests");
    test->add_option("dataset", test_opt.dataset)->required();
    test->add_option("--null", test_opt.null_hypothesis, "a=1|beta=1")->default_val("a=1");
    test->add_option("--baseline", test_opt.baseline, "weibull|exponential (for --null a=1)")
        ->default_val("weibull");
    test->add_option("--within", test_opt.within, "family for --null beta=1: a=1|free")
        ->default_val("a=1");
    test->add_option("--gamma", test_opt.gamma, "test size")->default_val(0.05);
    test->add_option("--a-domain", test_opt.a_domain, "alternative domain: ge1|free")
        ->default_val("ge1");
    test->add_flag("--boundary-mixture", test_opt.boundary_mixture,
                   "use the 0.5 chi2_0 + 0.5 chi2_1 null for the one-sided boundary test");
    test->add_option("--mc", test_opt.mc_replicates,
                     "Monte Carlo replicates for actual-level calibration");
    test->add_option("--seed", test_opt.seed, "Monte Carlo seed")->default_val(1);
    test->add_option("--out", test_opt.out, "write the structured report here");

    sosfit::SimulateOptions sim_opt;
    auto* sim = app.add_subcommand("simulate", "Run a simulation study from a JSON config");
    sim->add_option("config", sim_opt.config, "study configuration file")->required();
    sim->add_option("--out", sim_opt.out, "override the config's CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sosfit::kExitInputError;
    }

    if (fit->parsed()) return run(sosfit::cmd_fit(fit_opt));
    if (ci->parsed()) {
        if (surv->count() > 0) ci_opt.survival_at = survival_t0;
        return run(sosfit::cmd_ci(ci_opt));
    }
    if (test->parsed()) return run(sosfit::cmd_test(test_opt));
    if (sim->parsed()) return run(sosfit::cmd_simulate(sim_opt));
    return sosfit::kExitInputError;
}
