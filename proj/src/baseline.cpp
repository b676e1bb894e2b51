#include "sosfit/baseline.hpp"

namespace sosfit {

void check_weibull_params(const WeibullParams& p) {
    if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw DomainError("beta must be positive");
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw DomainError("sigma must be positive");
}

void check_exp_params(const ExpParams& p) {
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw DomainError("sigma must be positive");
}

double weibull_cum_hazard(double x, const WeibullParams& p) {
    check_weibull_params(p);
    if (!(x > 0.0)) throw DomainError("cumulative hazard needs x > 0");
    return std::pow(x / p.sigma, p.beta);
}

double weibull_cum_hazard_deriv(double x, const WeibullParams& p) {
    check_weibull_params(p);
    if (!(x > 0.0)) throw DomainError("hazard density needs x > 0");
    return (p.beta / p.sigma) * std::pow(x / p.sigma, p.beta - 1.0);
}

double weibull_inverse_cum_hazard(double u, const WeibullParams& p) {
    check_weibull_params(p);
    if (u < 0.0) throw DomainError("inverse cumulative hazard needs u >= 0");
    return p.sigma * std::pow(u, 1.0 / p.beta);
}

WeibullBaseline::WeibullBaseline(WeibullParams p) : params_(p) { check_weibull_params(p); }

double WeibullBaseline::cum_hazard(double x) const { return weibull_cum_hazard(x, params_); }
double WeibullBaseline::cum_hazard_deriv(double x) const { return weibull_cum_hazard_deriv(x, params_); }
double WeibullBaseline::inverse_cum_hazard(double u) const { return weibull_inverse_cum_hazard(u, params_); }

ExponentialBaseline::ExponentialBaseline(ExpParams p) : params_(p) { check_exp_params(p); }

double ExponentialBaseline::cum_hazard(double x) const {
    if (!(x > 0.0)) throw DomainError("cumulative hazard needs x > 0");
    return x / params_.sigma;
}

double ExponentialBaseline::cum_hazard_deriv(double x) const {
    if (!(x > 0.0)) throw DomainError("hazard density needs x > 0");
    return 1.0 / params_.sigma;
}

double ExponentialBaseline::inverse_cum_hazard(double u) const {
    if (u < 0.0) throw DomainError("inverse cumulative hazard needs u >= 0");
    return params_.sigma * u;
}

}  // namespace sosfit
