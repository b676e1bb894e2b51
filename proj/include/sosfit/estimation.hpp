#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sosfit/likelihood.hpp"
#include "sosfit/sample.hpp"
#include "sosfit/scheme.hpp"

namespace sosfit {

enum class ModelId {
    ExpIid,             // a = 1, beta = 1
    ExpPtcphm,          // beta = 1, a free
    WeibullKnownAlpha,  // explicit multipliers
    WeibullIid,         // a = 1
    WeibullPtcphm,      // all three free
};

/// Domain for the trend parameter in power-trend fits.
enum class ADomain { Free, GeOne };

const char* model_name(ModelId id);

struct FitResult {
    ModelId model{ModelId::ExpIid};
    std::optional<double> beta;  // absent when fixed at 1
    double sigma{0.0};
    std::optional<double> a;     // absent for known-multiplier models
    double loglik{0.0};
    double aic{0.0};
    int n_params{0};
    bool converged{false};
    bool boundary_a{false};      // constrained fit landed on a = 1
    int iterations{0};
    std::string diagnostic;      // bracket/solver notes, failure reasons
};

/// Case (i): explicit multipliers known, (beta, sigma) estimated. The shape
/// comes from bracketing the root of h(beta) - 1/beta (geometric bracket
/// expansion from beta = 1, then Brent refinement); the scale has the
/// closed form sigma = (A_0(beta)/r)^(1/beta).
///
/// Throws Unidentifiable for r < 2. All-equal samples are returned as
/// non-converged with the shape capped rather than looping.
FitResult fit_weibull_known_alpha(const SosSample& sample, const MultiplierScheme& scheme);

/// Weibull fit under the power trend with a fixed; profile over beta only.
FitResult fit_weibull_fixed_a(const SosSample& sample, double a);

/// Case (ii): power trend, all of (beta, sigma, a) estimated. sigma is
/// profiled out; the 2-D profile log-likelihood is maximized over
/// (log beta, log a) by Nelder-Mead from three starts (a in {0.8, 1, 1.25},
/// beta from the a=1 fit) and the winner is polished by Newton steps on the
/// full score. With domain == GeOne and an unconstrained maximizer below 1,
/// returns the boundary fit at a = 1 with boundary_a set.
FitResult fit_weibull_ptcphm(const SosSample& sample, ADomain domain = ADomain::Free);

/// Exponential with known multipliers: closed form
/// sigma = [sum_{j<r} (m_j+1) x_j + alpha_r (n-r+1) x_r] / r.
FitResult fit_exponential_known_alpha(const SosSample& sample, const MultiplierScheme& scheme);

/// Exponential power trend: sigma profiled in closed form, 1-D search over
/// a, Newton polish on the (sigma, a) score. Boundary handling as in the
/// Weibull case.
FitResult fit_exponential_ptcphm(const SosSample& sample, ADomain domain = ADomain::Free);

/// The four standard model rows (exp iid, exp power-trend, Weibull iid,
/// Weibull power-trend) with n_params 1, 2, 2, 3. Rows fit independently;
/// a row's failure is recorded in its diagnostic rather than aborting the
/// others.
std::vector<FitResult> fit_all(const SosSample& sample);

}  // namespace sosfit
