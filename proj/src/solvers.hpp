// Internal root-finding and derivative-free optimization helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace sosfit::detail {

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_{0.0};
    double comp_{0.0};
};

struct RootResult {
    double x{0.0};
    double fx{0.0};
    int iterations{0};
    bool converged{false};
    double bracket_lo{0.0};
    double bracket_hi{0.0};
};

// Brent's method on a sign-changing bracket [lo, hi].
template <typename F>
RootResult brent_root(F f, double lo, double hi, double flo, double fhi,
                      double ftol = 1e-10, int max_iter = 200) {
    RootResult res;
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    double a = lo, b = hi, fa = flo, fb = fhi;
    if (fa == 0.0) { res.x = a; res.fx = 0.0; res.converged = true; return res; }
    if (fb == 0.0) { res.x = b; res.fx = 0.0; res.converged = true; return res; }
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 1e-15;
        const double xm = 0.5 * (c - b);
        if (std::abs(fb) < ftol || std::abs(xm) <= tol1) {
            res.x = b; res.fx = fb; res.converged = true;
            return res;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r2;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r2 = fb / fc;
                p = s * (2.0 * xm * q * (q - r2) - (b - a) * (r2 - 1.0));
                q = (q - 1.0) * (r2 - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    res.x = b;
    res.fx = fb;
    res.converged = std::abs(fb) < ftol;
    return res;
}

struct SimplexResult {
    std::vector<double> x;
    double fmin{0.0};
    int evaluations{0};
    bool converged{false};
};

// Nelder-Mead minimization with standard coefficients. Stops when the
// simplex function spread falls below ftol or the evaluation cap is hit.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> start, double step,
                                 double ftol = 1e-10, int max_evals = 10000) {
    const std::size_t dim = start.size();
    std::vector<std::vector<double>> pts(dim + 1, start);
    std::vector<double> fv(dim + 1);
    int evals = 0;
    for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= dim; ++i) { fv[i] = f(pts[i]); ++evals; }

    SimplexResult res;
    while (evals < max_evals) {
        std::size_t lo = 0, hi = 0, nh = 0;
        for (std::size_t i = 1; i <= dim; ++i) {
            if (fv[i] < fv[lo]) lo = i;
            if (fv[i] > fv[hi]) hi = i;
        }
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != hi && fv[i] > fv[nh]) nh = i;
        if (std::abs(fv[hi] - fv[lo]) <= ftol * (std::abs(fv[lo]) + std::abs(fv[hi])) + ftol) {
            res.converged = true;
            break;
        }
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != hi)
                for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / static_cast<double>(dim);
        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t k = 0; k < dim; ++k) p[k] = centroid[k] + t * (pts[hi][k] - centroid[k]);
            return p;
        };
        auto refl = blend(-1.0);
        double frefl = f(refl); ++evals;
        if (frefl < fv[lo]) {
            auto exp2 = blend(-2.0);
            double fexp = f(exp2); ++evals;
            if (fexp < frefl) { pts[hi] = std::move(exp2); fv[hi] = fexp; }
            else { pts[hi] = std::move(refl); fv[hi] = frefl; }
        } else if (frefl < fv[nh]) {
            pts[hi] = std::move(refl);
            fv[hi] = frefl;
        } else {
            auto contr = blend(frefl < fv[hi] ? -0.5 : 0.5);
            double fcon = f(contr); ++evals;
            if (fcon < std::min(frefl, fv[hi])) {
                pts[hi] = std::move(contr);
                fv[hi] = fcon;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == lo) continue;
                    for (std::size_t k = 0; k < dim; ++k)
                        pts[i][k] = pts[lo][k] + 0.5 * (pts[i][k] - pts[lo][k]);
                    fv[i] = f(pts[i]);
                    ++evals;
                }
            }
        }
    }
    std::size_t lo = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (fv[i] < fv[lo]) lo = i;
    res.x = pts[lo];
    res.fmin = fv[lo];
    res.evaluations = evals;
    return res;
}

// Golden-section maximization on [lo, hi]; f assumed unimodal there.
template <typename F>
double golden_max(F f, double lo, double hi, double xtol = 1e-12, int max_iter = 200) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace sosfit::detail
