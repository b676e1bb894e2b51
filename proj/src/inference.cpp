#include "sosfit/inference.hpp"

#include <algorithm>
#include <cmath>

#include "ptcphm_sums.hpp"

namespace sosfit {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// Acklam's rational approximation for the normal quantile.
double normal_quantile_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

Matrix3 cofactor_matrix(const Matrix3& w) {
    Matrix3 b{};
    b[0][0] = w[1][1] * w[2][2] - w[1][2] * w[2][1];
    b[0][1] = -(w[0][1] * w[2][2] - w[2][1] * w[0][2]);
    b[0][2] = w[0][1] * w[1][2] - w[1][1] * w[0][2];
    b[1][0] = b[0][1];
    b[1][1] = w[0][0] * w[2][2] - w[0][2] * w[2][0];
    b[1][2] = -(w[0][0] * w[1][2] - w[0][2] * w[1][0]);
    b[2][0] = b[0][2];
    b[2][1] = b[1][2];
    b[2][2] = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    return b;
}

std::array<double, 9> flatten(const Matrix3& w) {
    return {w[0][0], w[0][1], w[0][2], w[1][0], w[1][1], w[1][2], w[2][0], w[2][1], w[2][2]};
}

double require_variance(const ObservedInformation& info, int i, const char* name) {
    const double v = info.inverse[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (!(v >= 0.0)) {
        throw NotPositiveDefinite(std::string("negative variance estimate for ") + name);
    }
    return v;
}

double check_gamma(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw DomainError("confidence level parameter gamma must be in (0, 1]");
    }
    return gamma;
}

}  // namespace

bool ObservedInformation::positive_definite() const {
    return w[0][0] > 0.0 && cofactors[2][2] > 0.0 && det > 0.0;
}

ObservedInformation observed_information(const SosSample& sample, double beta, double sigma,
                                         double a) {
    if (!(beta > 0.0) || !(sigma > 0.0) || !(a > 0.0)) {
        throw DomainError("observed information needs positive (beta, sigma, a)");
    }
    ObservedInformation info;
    info.w = detail::info_entries(sample, beta, sigma, a);
    info.cofactors = cofactor_matrix(info.w);
    info.det = info.w[0][0] * info.cofactors[0][0] + info.w[0][1] * info.cofactors[0][1] +
               info.w[0][2] * info.cofactors[0][2];

    double scale = 0.0;
    for (const auto& row : info.w)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (std::abs(info.det) < 1e-14 * scale * scale * scale) {
        throw SingularInformation("observed information matrix is singular", flatten(info.w));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            info.inverse[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                info.cofactors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / info.det;
    return info;
}

ObservedInformation2 drop_parameter(const ObservedInformation& info, int fixed) {
    if (fixed < 0 || fixed > 2) throw DomainError("parameter index must be 0, 1 or 2");
    ObservedInformation2 out;
    int rows[2], k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != fixed) rows[k++] = i;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                info.w[static_cast<std::size_t>(rows[i])][static_cast<std::size_t>(rows[j])];
    out.det = out.w[0][0] * out.w[1][1] - out.w[0][1] * out.w[1][0];
    double scale = std::max({std::abs(out.w[0][0]), std::abs(out.w[0][1]), std::abs(out.w[1][1])});
    if (std::abs(out.det) < 1e-14 * scale * scale) {
        throw SingularInformation("reduced information matrix is singular", flatten(info.w));
    }
    out.inverse[0][0] = out.w[1][1] / out.det;
    out.inverse[1][1] = out.w[0][0] / out.det;
    out.inverse[0][1] = -out.w[0][1] / out.det;
    out.inverse[1][0] = out.inverse[0][1];
    return out;
}

ConfidenceReport equi_tailed_intervals(const ObservedInformation& info, const Estimates& est,
                                       double gamma) {
    check_gamma(gamma);
    ConfidenceReport rep;
    rep.gamma = gamma;
    rep.z = normal_quantile(1.0 - gamma / 2.0);
    rep.simultaneous = false;
    const double se_b = std::sqrt(require_variance(info, 0, "beta"));
    const double se_s = std::sqrt(require_variance(info, 1, "sigma"));
    const double se_a = std::sqrt(require_variance(info, 2, "a"));
    rep.beta = {est.beta - rep.z * se_b, est.beta + rep.z * se_b};
    rep.sigma = {est.sigma - rep.z * se_s, est.sigma + rep.z * se_s};
    rep.a = {est.a - rep.z * se_a, est.a + rep.z * se_a};
    return rep;
}

ConfidenceReport bonferroni_region(const ObservedInformation& info, const Estimates& est,
                                   double gamma) {
    check_gamma(gamma);
    ConfidenceReport rep;
    rep.gamma = gamma;
    rep.z = normal_quantile(1.0 - gamma / 6.0);
    rep.simultaneous = true;
    const double se_b = std::sqrt(require_variance(info, 0, "beta"));
    const double se_s = std::sqrt(require_variance(info, 1, "sigma"));
    const double se_a = std::sqrt(require_variance(info, 2, "a"));
    rep.beta = {est.beta - rep.z * se_b, est.beta + rep.z * se_b};
    rep.sigma = {est.sigma - rep.z * se_s, est.sigma + rep.z * se_s};
    rep.a = {est.a - rep.z * se_a, est.a + rep.z * se_a};
    return rep;
}

SurvivalInterval survival_interval(const ObservedInformation& info, const Estimates& est,
                                   double t0, double gamma) {
    check_gamma(gamma);
    if (!(t0 > 0.0)) throw DomainError("survival interval needs t0 > 0");
    const double u = std::pow(t0 / est.sigma, est.beta);
    const double lt = std::log(t0 / est.sigma);
    const double bs = est.beta / est.sigma;
    const double b11 = info.cofactors[0][0];
    const double b21 = info.cofactors[1][0];
    const double b22 = info.cofactors[1][1];
    const double var = std::exp(-2.0 * u) * u * u *
                       (b11 * lt * lt - 2.0 * b21 * bs * lt + b22 * bs * bs) / info.det;
    if (!(var >= 0.0)) {
        throw NotPositiveDefinite("negative variance estimate for the survival probability");
    }
    const double z = normal_quantile(1.0 - gamma / 2.0);
    SurvivalInterval out;
    out.point = std::exp(-u);
    const double lo = out.point - z * std::sqrt(var);
    const double hi = out.point + z * std::sqrt(var);
    out.clamped = lo < 0.0 || hi > 1.0;
    out.lo = std::clamp(lo, 0.0, 1.0);
    out.hi = std::clamp(hi, 0.0, 1.0);
    return out;
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw DomainError("normal quantile needs p in (0, 1)");
    }
    double x = normal_quantile_approx(p);
    // One Halley step against the exact CDF pushes the rational
    // approximation (|err| ~ 1e-9) to machine accuracy. Beyond |x| ~ 37
    // the CDF underflows and exp(x^2/2) overflows, so leave the
    // approximation alone out there.
    if (std::abs(x) < 37.0) {
        const double e = normal_cdf(x) - p;
        const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double chisq1_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw DomainError("chi-square quantile needs p in (0, 1)");
    }
    const double z = normal_quantile(0.5 * (1.0 + p));
    return z * z;
}

double chisq1_sf(double x) {
    if (x <= 0.0) return 1.0;
    return std::erfc(std::sqrt(0.5 * x));
}

}  // namespace sosfit
