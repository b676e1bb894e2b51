// Internal weighted sums for the power-trend model and their a-derivatives,
// all scaled by sigma^{-beta}:
//   a_k = sum_j w_j(a)      (log x_j)^k (x_j/sigma)^beta
//   b_k = sum_j w_j'(a)     (log x_j)^k (x_j/sigma)^beta
//   c_0 = sum_j w_j''(a)                (x_j/sigma)^beta
// where w_j(a) = (n-j+1) a^j - (n-j) a^{j+1} for j < r and
// w_r(a) = (n-r+1) a^r.
#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "sosfit/sample.hpp"
#include "solvers.hpp"

namespace sosfit::detail {

struct PtSums {
    double a0{0}, a1{0}, a2{0};
    double b0{0}, b1{0};
    double c0{0};
};

inline PtSums ptcphm_scaled_sums(const SosSample& s, double beta, double sigma, double a) {
    const int n = s.n();
    const int r = s.r();
    const double log_sigma = std::log(sigma);
    CompensatedSum a0, a1, a2, b0, b1, c0;
    for (int j = 1; j <= r; ++j) {
        const double lx = s.log_times()[static_cast<std::size_t>(j - 1)];
        const double e = std::exp(beta * (lx - log_sigma));
        double w, dw, d2w;
        if (j < r) {
            const double cj = static_cast<double>(n - j + 1);
            const double dj = static_cast<double>(n - j);
            const double aj1 = std::pow(a, j - 1);
            const double aj = aj1 * a;
            w = cj * aj - dj * aj * a;
            dw = cj * j * aj1 - dj * (j + 1) * aj;
            d2w = cj * j * (j - 1) * (j >= 2 ? std::pow(a, j - 2) : 0.0) - dj * (j + 1) * j * aj1;
        } else {
            const double tail = static_cast<double>(n - r + 1);
            w = tail * std::pow(a, r);
            dw = tail * r * std::pow(a, r - 1);
            d2w = tail * r * (r - 1) * (r >= 2 ? std::pow(a, r - 2) : 0.0);
        }
        a0.add(w * e);
        a1.add(w * lx * e);
        a2.add(w * lx * lx * e);
        b0.add(dw * e);
        b1.add(dw * lx * e);
        c0.add(d2w * e);
    }
    PtSums out;
    out.a0 = a0.value();
    out.a1 = a1.value();
    out.a2 = a2.value();
    out.b0 = b0.value();
    out.b1 = b1.value();
    out.c0 = c0.value();
    return out;
}

// Closed-form observed-information entries in (beta, sigma, a) order,
// shared by the inference module and the Newton polish in estimation.
inline std::array<std::array<double, 3>, 3> info_entries(const SosSample& sample, double beta,
                                                         double sigma, double a) {
    const double r = static_cast<double>(sample.r());
    const double ls = std::log(sigma);
    const auto s = ptcphm_scaled_sums(sample, beta, sigma, a);
    const double w11 = r / (beta * beta) + ls * ls * s.a0 - 2.0 * ls * s.a1 + s.a2;
    const double w12 = r / sigma + ((beta * ls - 1.0) / sigma) * s.a0 - (beta / sigma) * s.a1;
    const double w13 = -ls * s.b0 + s.b1;
    const double w22 = -r * beta / (sigma * sigma) + (beta * (beta + 1.0) / (sigma * sigma)) * s.a0;
    const double w23 = -(beta / sigma) * s.b0;
    const double w33 = r * (r + 1.0) / (2.0 * a * a) + s.c0;
    return {{{w11, w12, w13}, {w12, w22, w23}, {w13, w23, w33}}};
}

// Weighted power sum A_0(beta, a) with the largest exponent factored out:
// returns log A_0, or NaN when the sum is nonpositive.
inline double log_weighted_power_sum(const SosSample& s, double beta, double a) {
    const int n = s.n();
    const int r = s.r();
    const double max_lx = s.log_times().back();
    CompensatedSum acc;
    for (int j = 1; j <= r; ++j) {
        const double lx = s.log_times()[static_cast<std::size_t>(j - 1)];
        double w;
        if (j < r) {
            w = static_cast<double>(n - j + 1) * std::pow(a, j) -
                static_cast<double>(n - j) * std::pow(a, j + 1);
        } else {
            w = static_cast<double>(n - r + 1) * std::pow(a, r);
        }
        acc.add(w * std::exp(beta * (lx - max_lx)));
    }
    const double v = acc.value();
    if (!(v > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return beta * max_lx + std::log(v);
}

}  // namespace sosfit::detail
