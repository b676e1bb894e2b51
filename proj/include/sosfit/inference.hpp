#pragma once

#include <array>

#include "sosfit/sample.hpp"

namespace sosfit {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Observed Fisher information in (beta, sigma, a) order: the negative
/// Hessian of the power-trend Weibull log-likelihood, with its determinant,
/// cofactors b_ij and inverse. Inversion goes through the cofactor
/// expansion, so inverse_{ii} * det == b_{ii} holds identically.
struct ObservedInformation {
    Matrix3 w{};          // information entries, symmetric by construction
    Matrix3 cofactors{};  // b_ij
    Matrix3 inverse{};
    double det{0.0};

    /// True when all leading principal minors are positive (what an
    /// interior maximum produces). Reported, not enforced.
    bool positive_definite() const;
};

/// 2x2 sub-problem for the two-parameter models, formed by dropping the
/// fixed parameter's row and column from the 3x3 entries.
struct ObservedInformation2 {
    std::array<std::array<double, 2>, 2> w{};
    std::array<std::array<double, 2>, 2> inverse{};
    double det{0.0};
};

/// Evaluates the closed-form second-derivative entries at (beta, sigma, a).
/// Throws SingularInformation when the determinant vanishes relative to the
/// matrix scale.
ObservedInformation observed_information(const SosSample& sample, double beta,
                                         double sigma, double a);

/// Drop row/column `fixed` (0 = beta, 1 = sigma, 2 = a) from a 3x3 set of
/// entries and invert the remaining 2x2 block.
ObservedInformation2 drop_parameter(const ObservedInformation& info, int fixed);

struct Interval {
    double lo{0.0};
    double hi{0.0};
};

struct ConfidenceReport {
    double gamma{0.05};
    double z{0.0};            // quantile actually used
    bool simultaneous{false}; // Bonferroni-adjusted
    Interval beta, sigma, a;
};

struct Estimates {
    double beta{1.0};
    double sigma{1.0};
    double a{1.0};
};

/// Marginal equi-tailed intervals: estimate_i +- z_{1-gamma/2} sqrt(b_ii/det).
/// Throws NotPositiveDefinite when an inverse diagonal entry is negative.
ConfidenceReport equi_tailed_intervals(const ObservedInformation& info,
                                       const Estimates& est, double gamma);

/// Bonferroni product region: same intervals at z_{1-gamma/6}.
ConfidenceReport bonferroni_region(const ObservedInformation& info,
                                   const Estimates& est, double gamma);

struct SurvivalInterval {
    double point{0.0};
    double lo{0.0};
    double hi{0.0};
    bool clamped{false};  // an endpoint fell outside [0, 1] and was clamped
};

/// Delta-method interval for the baseline survival S(t0) = exp(-(t0/sigma)^beta),
/// using the b_11, b_21, b_22 cofactors.
SurvivalInterval survival_interval(const ObservedInformation& info, const Estimates& est,
                                   double t0, double gamma);

/// Standard normal quantile, accurate to well below 1e-9 absolute
/// (rational approximation refined by one Halley step on erfc).
double normal_quantile(double p);

/// Chi-square(1) quantile via normal_quantile((1+p)/2)^2.
double chisq1_quantile(double p);

/// Upper tail P(chi2_1 > x).
double chisq1_sf(double x);

}  // namespace sosfit
