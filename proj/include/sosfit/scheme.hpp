#pragma once

#include <vector>

#include "sosfit/errors.hpp"

namespace sosfit {

/// Hazard multipliers alpha_1..alpha_r of the conditionally proportional
/// hazard rate model: after the (j-1)-th failure the survivors' hazard is
/// alpha_j times the baseline hazard.
///
/// Two variants: explicit positive constants, or the power trend
/// alpha_j = a^j (a = 1 recovers ordinary iid order statistics).
class MultiplierScheme {
public:
    static MultiplierScheme explicit_alphas(std::vector<double> alphas);
    static MultiplierScheme power_trend(double a);

    bool is_power_trend() const { return power_trend_; }

    /// Trend parameter a; throws DomainError for explicit schemes.
    double trend() const;

    /// alpha_j, 1-based. Explicit schemes throw DomainError past their size.
    double alpha(int j) const;

    /// Number of explicit multipliers (0 for power trend).
    int explicit_size() const { return static_cast<int>(alphas_.size()); }

    /// sum_{j=1..r} log alpha_j; equals r(r+1)/2 * log a under power trend.
    double sum_log_alpha(int r) const;

    /// The density weights (m_j + 1) = (n-j+1) alpha_j - (n-j) alpha_{j+1}
    /// for j = 1..r-1. Entries may be nonpositive; see weights_all_positive.
    std::vector<double> weights(int n, int r) const;

    /// True when every (m_j + 1) > 0, the regime in which the shape
    /// equation has a unique root. Under power trend this holds exactly
    /// for a < n/(n-1). Nonpositive weights are legal inputs for
    /// likelihood evaluation, so this is a flag rather than an error.
    bool weights_all_positive(int n, int r) const;

private:
    MultiplierScheme() = default;

    bool power_trend_{false};
    double a_{1.0};
    std::vector<double> alphas_;
};

/// Documented operation name: the (m_j + 1) weights for j = 1..r-1.
inline std::vector<double> multipliers_m(const MultiplierScheme& scheme, int n, int r) {
    return scheme.weights(n, r);
}

}  // namespace sosfit
