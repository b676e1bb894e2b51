#pragma once

#include <cstdint>

#include "sosfit/estimation.hpp"

namespace sosfit {

struct GlrResult {
    double lambda{1.0};     // likelihood ratio in (0, 1]
    double stat{0.0};       // -2 log lambda
    double threshold{0.0};
    double p_value{1.0};    // asymptotic
    bool reject{false};
    bool boundary{false};   // constrained alternative collapsed onto the null
    FitResult fit_h;
    FitResult fit_k;
};

/// H: a = 1 against K: a > 1 with Weibull baseline. The alternative is the
/// constrained power-trend fit by default (alt = GeOne); pass Free for the
/// two-sided variant. The default decision rule compares -2 log lambda with
/// the chi-square(1) upper quantile; boundary_mixture switches threshold and
/// p-value to the 0.5 chi2_0 + 0.5 chi2_1 mixture appropriate for the
/// one-sided boundary null.
GlrResult glr_test_a_weibull(const SosSample& sample, double gamma,
                             ADomain alt = ADomain::GeOne,
                             bool boundary_mixture = false);

/// Same test with exponential baseline (beta fixed at 1).
GlrResult glr_test_a_exponential(const SosSample& sample, double gamma,
                                 ADomain alt = ADomain::GeOne,
                                 bool boundary_mixture = false);

/// Family for the nested exponentiality test.
enum class Within { AEqualOne, FreeA };

/// H: beta = 1 against K: beta != 1 within the chosen family.
GlrResult glr_test_exponentiality(const SosSample& sample, double gamma,
                                  Within within = Within::AEqualOne);

struct McLevel {
    double level{0.0};      // rejection fraction
    double stderr_{0.0};    // binomial standard error
    int replicates{0};
    int failures{0};        // non-converged fits, excluded from the denominator
};

/// Monte Carlo estimate of the actual level of glr_test_a_weibull at the
/// null a = a0. Replicates are simulated at Weibull(beta, sigma) with
/// censoring (n, r) and tested at level gamma. Per-replicate substreams are
/// derived from (seed, replicate), so the result is identical for any
/// worker count. Throws Error if fit failures reach 1% of replicates.
McLevel mc_actual_level(int n, int r, double beta, double sigma, double a0,
                        double gamma, int replicates, std::uint64_t seed);

}  // namespace sosfit
