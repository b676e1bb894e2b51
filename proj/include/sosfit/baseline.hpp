#pragma once

#include <cmath>
#include <memory>

#include "sosfit/errors.hpp"

namespace sosfit {

/// Weibull shape/scale pair; cumulative hazard k(x) = (x/sigma)^beta.
struct WeibullParams {
    double beta{1.0};
    double sigma{1.0};
};

/// Exponential mean; the beta = 1 special case of WeibullParams.
struct ExpParams {
    double sigma{1.0};
};

/// A lifetime distribution of the form F(x) = 1 - exp(-k(x)) with k
/// strictly increasing, k(0+) = 0 and k(x) -> inf. Everything downstream
/// (likelihood, sampling) touches the distribution only through k, k' and
/// k^{-1}, so further families can be slotted in behind this interface.
class BaselineFamily {
public:
    virtual ~BaselineFamily() = default;

    virtual double cum_hazard(double x) const = 0;          // k(x)
    virtual double cum_hazard_deriv(double x) const = 0;    // k'(x)
    virtual double inverse_cum_hazard(double u) const = 0;  // k^{-1}(u)
};

class WeibullBaseline final : public BaselineFamily {
public:
    explicit WeibullBaseline(WeibullParams p);

    double cum_hazard(double x) const override;
    double cum_hazard_deriv(double x) const override;
    double inverse_cum_hazard(double u) const override;

    const WeibullParams& params() const { return params_; }

private:
    WeibullParams params_;
};

class ExponentialBaseline final : public BaselineFamily {
public:
    explicit ExponentialBaseline(ExpParams p);

    double cum_hazard(double x) const override;
    double cum_hazard_deriv(double x) const override;
    double inverse_cum_hazard(double u) const override;

    const ExpParams& params() const { return params_; }

private:
    ExpParams params_;
};

void check_weibull_params(const WeibullParams& p);
void check_exp_params(const ExpParams& p);

/// k(x) = (x/sigma)^beta for x > 0; throws DomainError otherwise.
double weibull_cum_hazard(double x, const WeibullParams& p);

/// k'(x) = (beta/sigma) (x/sigma)^(beta-1).
double weibull_cum_hazard_deriv(double x, const WeibullParams& p);

/// k^{-1}(u) = sigma u^(1/beta) for u >= 0.
double weibull_inverse_cum_hazard(double u, const WeibullParams& p);

}  // namespace sosfit
