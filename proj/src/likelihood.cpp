#include "sosfit/likelihood.hpp"

#include <cmath>

#include "ptcphm_sums.hpp"
#include "solvers.hpp"

namespace sosfit {

SufficientStats::SufficientStats(const SosSample& sample, const MultiplierScheme& scheme)
    : log_times_(sample.log_times()), log_eta_(sample.sum_log_times()) {
    const int n = sample.n();
    const int r = sample.r();
    coeffs_.reserve(static_cast<std::size_t>(r));
    if (r >= 2) {
        coeffs_ = scheme.weights(n, r);
        weights_all_positive_ = scheme.weights_all_positive(n, r);
    }
    coeffs_.push_back(scheme.alpha(r) * static_cast<double>(n - r + 1));
}

double SufficientStats::sum_k(double beta, int k, double log_scale) const {
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double lx = log_times_[i];
        double term = coeffs_[i] * std::exp(beta * lx - log_scale);
        for (int p = 0; p < k; ++p) term *= lx;
        acc.add(term);
    }
    return acc.value();
}

double SufficientStats::weighted_power_sum(double beta) const { return sum_k(beta, 0, 0.0); }
double SufficientStats::weighted_log_power_sum(double beta) const { return sum_k(beta, 1, 0.0); }
double SufficientStats::weighted_log2_power_sum(double beta) const { return sum_k(beta, 2, 0.0); }

double SufficientStats::scaled_power_sum(double beta, double log_sigma) const {
    return sum_k(beta, 0, beta * log_sigma);
}

double SufficientStats::log_power_sum(double beta) const {
    const double m = beta * log_times_.back();
    const double v = sum_k(beta, 0, m);
    if (!(v > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return m + std::log(v);
}

double SufficientStats::h(double beta) const {
    // Factor out the largest exponent so the ratio survives extreme beta.
    const double m = beta * log_times_.back();
    const double a0 = sum_k(beta, 0, m);
    const double a1 = sum_k(beta, 1, m);
    return a1 / a0 - log_eta_ / static_cast<double>(r());
}

double SufficientStats::h_deriv(double beta) const {
    const double m = beta * log_times_.back();
    const double a0 = sum_k(beta, 0, m);
    const double a1 = sum_k(beta, 1, m);
    const double a2 = sum_k(beta, 2, m);
    const double ratio = a1 / a0;
    return a2 / a0 - ratio * ratio;
}

double loglik_constant(const SosSample& sample) {
    return std::lgamma(static_cast<double>(sample.n()) + 1.0) -
           std::lgamma(static_cast<double>(sample.n() - sample.r()) + 1.0);
}

double loglik_weibull(const SosSample& sample, const MultiplierScheme& scheme,
                      const WeibullParams& p) {
    check_weibull_params(p);
    const int r = sample.r();
    const SufficientStats stats(sample, scheme);
    const double log_sigma = std::log(p.sigma);
    return scheme.sum_log_alpha(r) + r * std::log(p.beta) - r * p.beta * log_sigma +
           (p.beta - 1.0) * stats.log_eta() - stats.scaled_power_sum(p.beta, log_sigma);
}

double loglik_exponential(const SosSample& sample, const MultiplierScheme& scheme,
                          const ExpParams& p) {
    check_exp_params(p);
    return loglik_weibull(sample, scheme, WeibullParams{1.0, p.sigma});
}

std::array<double, 3> score_ptcphm(const SosSample& sample, double a, const WeibullParams& p) {
    check_weibull_params(p);
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be positive");
    const double r = static_cast<double>(sample.r());
    const double ls = std::log(p.sigma);
    const auto s = detail::ptcphm_scaled_sums(sample, p.beta, p.sigma, a);
    return {
        r / p.beta - r * ls + sample.sum_log_times() + ls * s.a0 - s.a1,
        -r * p.beta / p.sigma + (p.beta / p.sigma) * s.a0,
        r * (r + 1.0) / (2.0 * a) - s.b0,
    };
}

}  // namespace sosfit
