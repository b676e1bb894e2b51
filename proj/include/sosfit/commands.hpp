#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sosfit/report.hpp"

namespace sosfit {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitNumericalError = 3,
};

struct CommandResult {
    Report report;        // structured output; "error" key on failure
    int exit_code{kExitOk};
    std::string text() const;  // rendered view (same function the CLI prints)
};

struct FitOptions {
    std::string dataset;
    std::string model{"all"};          // exp-iid|exp-ptcphm|weibull-iid|weibull-ptcphm|all
    std::vector<double> alphas;        // explicit multipliers for known-alpha fits
    std::string a_domain{"free"};      // free|ge1
    std::string out;                   // structured report path ("" = none)
};

struct CiOptions {
    std::string dataset;
    double gamma{0.05};
    bool simultaneous{false};
    std::optional<double> survival_at;
    std::string out;
};

struct TestOptions {
    std::string dataset;
    std::string null_hypothesis{"a=1"};  // a=1|beta=1
    std::string baseline{"weibull"};     // weibull|exponential
    std::string within{"a=1"};           // for beta=1: a=1|free
    double gamma{0.05};
    bool boundary_mixture{false};
    std::string a_domain{"ge1"};         // alternative domain: ge1|free
    int mc_replicates{0};                // 0 = no Monte Carlo calibration
    std::uint64_t seed{1};
    std::string out;
};

struct SimulateOptions {
    std::string config;
    std::string out;  // overrides the config's output path when nonempty
};

CommandResult cmd_fit(const FitOptions& opt);
CommandResult cmd_ci(const CiOptions& opt);
CommandResult cmd_test(const TestOptions& opt);
CommandResult cmd_simulate(const SimulateOptions& opt);

}  // namespace sosfit
