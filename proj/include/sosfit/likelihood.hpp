#pragma once

#include <array>

#include "sosfit/baseline.hpp"
#include "sosfit/sample.hpp"
#include "sosfit/scheme.hpp"

namespace sosfit {

/// Precomputed weighted sums for one (sample, scheme) pair.
///
/// The core quantity is
///   A_k(beta) = sum_{j<r} (m_j+1) (log x_j)^k x_j^beta
///             + alpha_r (n-r+1) (log x_r)^k x_r^beta,   k = 0, 1, 2.
/// A_0 is the weighted power sum entering the log-likelihood, A_1/A_2 its
/// beta-derivatives. Terms are accumulated with compensated summation and,
/// in ratio form, factored by the largest exponent so h(beta) stays finite
/// far into the tails of beta.
class SufficientStats {
public:
    SufficientStats(const SosSample& sample, const MultiplierScheme& scheme);

    double log_eta() const { return log_eta_; }

    double weighted_power_sum(double beta) const;        // A_0
    double weighted_log_power_sum(double beta) const;    // A_1
    double weighted_log2_power_sum(double beta) const;   // A_2

    /// A_0(beta) / sigma^beta, the stable form used by the likelihood.
    double scaled_power_sum(double beta, double log_sigma) const;

    /// log A_0(beta), factored by the largest exponent; NaN when A_0 <= 0.
    double log_power_sum(double beta) const;

    /// h(beta) = A_1/A_0 - (log eta)/r. The shape equation is
    /// h(beta) = 1/beta; h is strictly increasing whenever all weights are
    /// positive.
    double h(double beta) const;

    /// d h / d beta = A_2/A_0 - (A_1/A_0)^2.
    double h_deriv(double beta) const;

    int r() const { return static_cast<int>(coeffs_.size()); }
    bool weights_all_positive() const { return weights_all_positive_; }

private:
    double sum_k(double beta, int k, double log_scale) const;

    std::vector<double> coeffs_;     // (m_j+1) for j<r, then alpha_r (n-r+1)
    std::vector<double> log_times_;  // log x_j
    double log_eta_{0.0};
    bool weights_all_positive_{true};
};

/// log n! / (n-r)!, the additive constant of the joint density. Reported
/// log-likelihoods exclude it (so values match the usual tabulated
/// convention); callers wanting the full density value add it back.
double loglik_constant(const SosSample& sample);

/// Weibull log-likelihood under the given multiplier scheme, excluding
/// loglik_constant. Under a power-trend scheme the sum of log alpha_j
/// contributes r(r+1)/2 * log a.
double loglik_weibull(const SosSample& sample, const MultiplierScheme& scheme,
                      const WeibullParams& p);

/// Exponential special case (beta = 1).
double loglik_exponential(const SosSample& sample, const MultiplierScheme& scheme,
                          const ExpParams& p);

/// Gradient of the power-trend Weibull log-likelihood in (beta, sigma, a).
std::array<double, 3> score_ptcphm(const SosSample& sample, double a,
                                   const WeibullParams& p);

}  // namespace sosfit
