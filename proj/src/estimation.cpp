#include "sosfit/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptcphm_sums.hpp"
#include "solvers.hpp"

namespace sosfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBetaCap = 1e3;

double aic_of(int n_params, double loglik) { return 2.0 * n_params - 2.0 * loglik; }

// Solve h(beta) = 1/beta by geometric bracket expansion from beta = 1
// followed by Brent refinement. Returns false when no sign change is found
// (degenerate data, e.g. all observations equal), in which case *beta_out
// carries the capped value.
bool solve_shape(const SufficientStats& stats, double* beta_out, int* iterations,
                 std::string* diagnostic) {
    auto g = [&stats](double beta) { return stats.h(beta) - 1.0 / beta; };
    double lo = 1.0, hi = 1.0;
    double flo = g(1.0), fhi = flo;
    *iterations = 1;
    if (std::isnan(flo)) {
        *diagnostic = "weighted power sum nonpositive at beta = 1";
        *beta_out = 1.0;
        return false;
    }
    if (flo > 0.0) {
        while (flo > 0.0) {
            hi = lo;
            fhi = flo;
            lo *= 0.5;
            flo = g(lo);
            ++*iterations;
            if (std::isnan(flo) || lo < 1e-10) {
                *diagnostic = "no sign change while shrinking the shape bracket";
                *beta_out = lo;
                return false;
            }
        }
    } else if (flo < 0.0) {
        while (fhi < 0.0) {
            lo = hi;
            flo = fhi;
            hi *= 2.0;
            fhi = g(hi);
            ++*iterations;
            if (std::isnan(fhi) || hi > 1e6) {
                *diagnostic = "shape estimate diverges (are all observations equal?)";
                *beta_out = std::min(hi, kBetaCap);
                return false;
            }
        }
    }
    auto root = detail::brent_root(g, lo, hi, flo, fhi, 1e-10, 300);
    *iterations += root.iterations;
    *beta_out = root.x;
    *diagnostic = "shape bracket [" + std::to_string(root.bracket_lo) + ", " +
                  std::to_string(root.bracket_hi) + "]";
    return root.converged;
}

// Case (i) machinery for any fixed multiplier scheme.
FitResult fit_weibull_scheme(const SosSample& sample, const MultiplierScheme& scheme,
                             ModelId label) {
    if (sample.r() < 2) {
        throw Unidentifiable("Weibull shape is unidentifiable with r < 2 "
                             "(the shape equation 1/beta = 0 has no solution)");
    }
    const int r = sample.r();
    const SufficientStats stats(sample, scheme);

    FitResult fit;
    fit.model = label;
    fit.n_params = 2;

    double beta = 1.0;
    fit.converged = solve_shape(stats, &beta, &fit.iterations, &fit.diagnostic);
    beta = std::min(beta, kBetaCap);
    const double log_a0 = stats.log_power_sum(beta);
    if (std::isnan(log_a0)) {
        fit.converged = false;
        fit.diagnostic += "; scale undefined (nonpositive weighted sum)";
        fit.beta = beta;
        fit.sigma = std::numeric_limits<double>::quiet_NaN();
        fit.loglik = -kInf;
        fit.aic = kInf;
        return fit;
    }
    const double log_sigma = (log_a0 - std::log(static_cast<double>(r))) / beta;
    fit.beta = beta;
    fit.sigma = std::exp(log_sigma);
    fit.loglik = loglik_weibull(sample, scheme, WeibullParams{beta, fit.sigma});
    fit.aic = aic_of(fit.n_params, fit.loglik);
    if (!stats.weights_all_positive()) {
        fit.diagnostic += "; warning: some density weights m_j+1 <= 0, root may not be unique";
    }
    return fit;
}

// Profile log-likelihood of the power-trend Weibull model with sigma
// maximized out; also reports log sigma at the profile optimum.
double profile_loglik_pt(const SosSample& sample, double beta, double a, double* log_sigma_out) {
    if (!(beta > 0.0) || !(a > 0.0)) return -kInf;
    const double log_a0 = detail::log_weighted_power_sum(sample, beta, a);
    if (std::isnan(log_a0)) return -kInf;
    const double r = static_cast<double>(sample.r());
    const double log_sigma = (log_a0 - std::log(r)) / beta;
    if (log_sigma_out != nullptr) *log_sigma_out = log_sigma;
    return 0.5 * r * (r + 1.0) * std::log(a) + r * std::log(beta) - r * beta * log_sigma +
           (beta - 1.0) * sample.sum_log_times() - r;
}

bool solve3(const std::array<std::array<double, 3>, 3>& m, const std::array<double, 3>& rhs,
            std::array<double, 3>* out) {
    // Gaussian elimination with partial pivoting on a local copy.
    double a[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        a[i][3] = rhs[static_cast<std::size_t>(i)];
    }
    for (int c = 0; c < 3; ++c) {
        int p = c;
        for (int i = c + 1; i < 3; ++i)
            if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
        if (std::abs(a[p][c]) < 1e-300) return false;
        if (p != c) std::swap(a[p], a[c]);
        for (int i = c + 1; i < 3; ++i) {
            const double f = a[i][c] / a[c][c];
            for (int j = c; j < 4; ++j) a[i][j] -= f * a[c][j];
        }
    }
    for (int i = 2; i >= 0; --i) {
        double v = a[i][3];
        for (int j = i + 1; j < 3; ++j) v -= a[i][j] * (*out)[static_cast<std::size_t>(j)];
        (*out)[static_cast<std::size_t>(i)] = v / a[i][i];
    }
    return true;
}

double loglik_pt(const SosSample& sample, double beta, double sigma, double a) {
    return loglik_weibull(sample, MultiplierScheme::power_trend(a),
                          WeibullParams{beta, sigma});
}

// Newton refinement of a stationary point of the full (beta, sigma, a)
// log-likelihood, guarded so the log-likelihood never decreases. Returns
// the scaled gradient norm max(|g_beta beta|, |g_sigma sigma|, |g_a a|).
double newton_polish_pt(const SosSample& sample, double* beta, double* sigma, double* a,
                        int* iterations) {
    double b = *beta, s = *sigma, t = *a;
    double ll = loglik_pt(sample, b, s, t);
    double gnorm = kInf;
    for (int it = 0; it < 25; ++it) {
        const auto g = score_ptcphm(sample, t, WeibullParams{b, s});
        gnorm = std::max({std::abs(g[0] * b), std::abs(g[1] * s), std::abs(g[2] * t)});
        if (gnorm < 1e-11) break;
        const auto w = detail::info_entries(sample, b, s, t);
        std::array<double, 3> step{};
        if (!solve3(w, {g[0], g[1], g[2]}, &step)) break;
        double damp = 1.0;
        bool accepted = false;
        for (int k = 0; k < 20; ++k, damp *= 0.5) {
            const double nb = b + damp * step[0];
            const double ns = s + damp * step[1];
            const double nt = t + damp * step[2];
            if (!(nb > 0.0) || !(ns > 0.0) || !(nt > 0.0)) continue;
            const double nll = loglik_pt(sample, nb, ns, nt);
            if (!std::isfinite(nll) || nll < ll - 1e-9) continue;
            b = nb; s = ns; t = nt; ll = nll;
            accepted = true;
            break;
        }
        ++*iterations;
        if (!accepted) break;
    }
    *beta = b;
    *sigma = s;
    *a = t;
    return gnorm;
}

FitResult boundary_fit_at_one(const SosSample& sample, ModelId label, int n_params) {
    FitResult fit = fit_weibull_scheme(sample, MultiplierScheme::power_trend(1.0), label);
    fit.a = 1.0;
    fit.boundary_a = true;
    fit.n_params = n_params;
    fit.aic = aic_of(n_params, fit.loglik);
    fit.diagnostic += "; constrained maximum on the boundary a = 1";
    return fit;
}

}  // namespace

const char* model_name(ModelId id) {
    switch (id) {
        case ModelId::ExpIid: return "exp-iid";
        case ModelId::ExpPtcphm: return "exp-ptcphm";
        case ModelId::WeibullKnownAlpha: return "weibull-known-alpha";
        case ModelId::WeibullIid: return "weibull-iid";
        case ModelId::WeibullPtcphm: return "weibull-ptcphm";
    }
    return "unknown";
}

FitResult fit_weibull_known_alpha(const SosSample& sample, const MultiplierScheme& scheme) {
    if (!scheme.is_power_trend() && scheme.explicit_size() < sample.r()) {
        throw DomainError("explicit scheme provides " + std::to_string(scheme.explicit_size()) +
                          " multipliers but r = " + std::to_string(sample.r()));
    }
    bool all_ones = true;
    if (scheme.is_power_trend()) {
        all_ones = scheme.trend() == 1.0;
    } else {
        for (int j = 1; j <= sample.r(); ++j) all_ones = all_ones && scheme.alpha(j) == 1.0;
    }
    return fit_weibull_scheme(sample, scheme,
                              all_ones ? ModelId::WeibullIid : ModelId::WeibullKnownAlpha);
}

FitResult fit_weibull_fixed_a(const SosSample& sample, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be positive");
    FitResult fit = fit_weibull_scheme(sample, MultiplierScheme::power_trend(a),
                                       a == 1.0 ? ModelId::WeibullIid : ModelId::WeibullPtcphm);
    if (a != 1.0) {
        fit.a = a;
        fit.diagnostic += "; trend held fixed";
    }
    return fit;
}

FitResult fit_weibull_ptcphm(const SosSample& sample, ADomain domain) {
    if (sample.r() < 2) {
        throw Unidentifiable("power-trend Weibull fit needs r >= 2");
    }
    const FitResult base = fit_weibull_fixed_a(sample, 1.0);
    if (!base.converged) {
        FitResult fit = base;
        fit.model = ModelId::WeibullPtcphm;
        fit.a = 1.0;
        fit.n_params = 3;
        fit.aic = aic_of(3, fit.loglik);
        fit.diagnostic += "; trend search skipped (baseline fit failed)";
        return fit;
    }

    const double log_beta0 = std::log(*base.beta);
    auto objective = [&sample](const std::vector<double>& p) {
        return -profile_loglik_pt(sample, std::exp(p[0]), std::exp(p[1]), nullptr);
    };

    detail::SimplexResult best;
    best.fmin = kInf;
    int total_evals = 0;
    for (double a_start : {0.8, 1.0, 1.25}) {
        auto res = detail::nelder_mead(objective, {log_beta0, std::log(a_start)}, 0.25,
                                       1e-10, 10000);
        total_evals += res.evaluations;
        if (res.fmin < best.fmin) best = res;
    }

    FitResult fit;
    fit.model = ModelId::WeibullPtcphm;
    fit.n_params = 3;
    fit.iterations = total_evals;
    if (!std::isfinite(best.fmin)) {
        fit.converged = false;
        fit.diagnostic = "profile search failed from every start";
        fit.beta = *base.beta;
        fit.sigma = base.sigma;
        fit.a = 1.0;
        fit.loglik = base.loglik;
        fit.aic = aic_of(3, fit.loglik);
        return fit;
    }

    double beta = std::exp(best.x[0]);
    double a = std::exp(best.x[1]);
    double log_sigma = 0.0;
    profile_loglik_pt(sample, beta, a, &log_sigma);
    double sigma = std::exp(log_sigma);
    const double gnorm = newton_polish_pt(sample, &beta, &sigma, &a, &fit.iterations);

    fit.beta = beta;
    fit.sigma = sigma;
    fit.a = a;
    fit.loglik = loglik_pt(sample, beta, sigma, a);
    fit.aic = aic_of(3, fit.loglik);
    fit.converged = gnorm < 1e-6;
    fit.diagnostic = "profile simplex + Newton polish, scaled score norm " + std::to_string(gnorm);

    if (domain == ADomain::GeOne && a < 1.0) {
        FitResult bounded = boundary_fit_at_one(sample, ModelId::WeibullPtcphm, 3);
        bounded.iterations += fit.iterations;
        return bounded;
    }
    return fit;
}

FitResult fit_exponential_known_alpha(const SosSample& sample, const MultiplierScheme& scheme) {
    if (!scheme.is_power_trend() && scheme.explicit_size() < sample.r()) {
        throw DomainError("explicit scheme provides " + std::to_string(scheme.explicit_size()) +
                          " multipliers but r = " + std::to_string(sample.r()));
    }
    const int r = sample.r();
    const SufficientStats stats(sample, scheme);
    FitResult fit;
    fit.model = ModelId::ExpIid;
    fit.n_params = 1;
    fit.sigma = stats.weighted_power_sum(1.0) / static_cast<double>(r);
    if (!(fit.sigma > 0.0)) {
        fit.converged = false;
        fit.diagnostic = "nonpositive weighted sum; scale undefined";
        fit.loglik = -kInf;
        fit.aic = kInf;
        return fit;
    }
    fit.loglik = loglik_exponential(sample, scheme, ExpParams{fit.sigma});
    fit.aic = aic_of(fit.n_params, fit.loglik);
    fit.converged = true;
    fit.iterations = 0;
    fit.diagnostic = "closed form";
    return fit;
}

FitResult fit_exponential_ptcphm(const SosSample& sample, ADomain domain) {
    if (sample.r() < 2) {
        throw Unidentifiable("power-trend exponential fit needs r >= 2");
    }
    const int r = sample.r();

    auto profile = [&sample, r](double log_a) {
        const double a = std::exp(log_a);
        const SufficientStats stats(sample, MultiplierScheme::power_trend(a));
        const double sigma = stats.weighted_power_sum(1.0) / static_cast<double>(r);
        if (!(sigma > 0.0)) return -kInf;
        return 0.5 * r * (r + 1.0) * std::log(a) - r * std::log(sigma) - static_cast<double>(r);
    };

    // Bracket a maximum of the 1-D profile around log a = 0.
    double mid = 0.0, fmid = profile(0.0);
    double lo = -0.25, hi = 0.25;
    double flo = profile(lo), fhi = profile(hi);
    int iters = 3;
    const double kLogBound = 14.0;
    while (flo > fmid && lo > -kLogBound) {
        hi = mid; fhi = fmid;
        mid = lo; fmid = flo;
        lo = std::max(lo * 2.0, -kLogBound);
        flo = profile(lo);
        ++iters;
    }
    while (fhi > fmid && hi < kLogBound) {
        lo = mid; flo = fmid;
        mid = hi; fmid = fhi;
        hi = std::min(hi * 2.0, kLogBound);
        fhi = profile(hi);
        ++iters;
    }

    FitResult fit;
    fit.model = ModelId::ExpPtcphm;
    fit.n_params = 2;
    fit.iterations = iters;
    if (flo > fmid || fhi > fmid) {
        fit.converged = false;
        fit.diagnostic = "profile maximum ran into the search bound for a";
        const double a = std::exp(flo > fmid ? lo : hi);
        const SufficientStats stats(sample, MultiplierScheme::power_trend(a));
        fit.a = a;
        fit.sigma = stats.weighted_power_sum(1.0) / static_cast<double>(r);
        fit.loglik = profile(std::log(a));
        fit.aic = aic_of(2, fit.loglik);
        return fit;
    }

    double a = std::exp(detail::golden_max(profile, lo, hi, 1e-12));
    SufficientStats stats(sample, MultiplierScheme::power_trend(a));
    double sigma = stats.weighted_power_sum(1.0) / static_cast<double>(r);

    // Newton polish on the (sigma, a) score with beta fixed at 1.
    double gnorm = kInf;
    double ll = loglik_exponential(sample, MultiplierScheme::power_trend(a), ExpParams{sigma});
    for (int it = 0; it < 25; ++it) {
        const auto g3 = score_ptcphm(sample, a, WeibullParams{1.0, sigma});
        gnorm = std::max(std::abs(g3[1] * sigma), std::abs(g3[2] * a));
        if (gnorm < 1e-11) break;
        const auto w = detail::info_entries(sample, 1.0, sigma, a);
        const double det = w[1][1] * w[2][2] - w[1][2] * w[2][1];
        if (std::abs(det) < 1e-300) break;
        const double ds = (w[2][2] * g3[1] - w[1][2] * g3[2]) / det;
        const double da = (-w[2][1] * g3[1] + w[1][1] * g3[2]) / det;
        double damp = 1.0;
        bool accepted = false;
        for (int k = 0; k < 20; ++k, damp *= 0.5) {
            const double ns = sigma + damp * ds;
            const double na = a + damp * da;
            if (!(ns > 0.0) || !(na > 0.0)) continue;
            const double nll =
                loglik_exponential(sample, MultiplierScheme::power_trend(na), ExpParams{ns});
            if (!std::isfinite(nll) || nll < ll - 1e-9) continue;
            sigma = ns; a = na; ll = nll;
            accepted = true;
            break;
        }
        ++fit.iterations;
        if (!accepted) break;
    }

    fit.sigma = sigma;
    fit.a = a;
    fit.loglik = ll;
    fit.aic = aic_of(2, ll);
    fit.converged = gnorm < 1e-6;
    fit.diagnostic = "profile golden section + Newton polish, scaled score norm " +
                     std::to_string(gnorm);

    if (domain == ADomain::GeOne && a < 1.0) {
        FitResult bounded = fit_exponential_known_alpha(sample, MultiplierScheme::power_trend(1.0));
        bounded.model = ModelId::ExpPtcphm;
        bounded.a = 1.0;
        bounded.boundary_a = true;
        bounded.n_params = 2;
        bounded.aic = aic_of(2, bounded.loglik);
        bounded.iterations += fit.iterations;
        bounded.diagnostic += "; constrained maximum on the boundary a = 1";
        return bounded;
    }
    return fit;
}

std::vector<FitResult> fit_all(const SosSample& sample) {
    if (sample.r() < 2) {
        throw Unidentifiable("model comparison needs r >= 2");
    }
    std::vector<FitResult> rows;
    rows.reserve(4);
    auto guarded = [&rows](ModelId id, auto&& f) {
        try {
            rows.push_back(f());
        } catch (const Error& e) {
            FitResult failed;
            failed.model = id;
            failed.converged = false;
            failed.loglik = -kInf;
            failed.aic = kInf;
            failed.diagnostic = e.what();
            rows.push_back(failed);
        }
    };
    const auto ones = MultiplierScheme::power_trend(1.0);
    guarded(ModelId::ExpIid, [&] { return fit_exponential_known_alpha(sample, ones); });
    guarded(ModelId::ExpPtcphm, [&] { return fit_exponential_ptcphm(sample, ADomain::Free); });
    guarded(ModelId::WeibullIid, [&] { return fit_weibull_fixed_a(sample, 1.0); });
    guarded(ModelId::WeibullPtcphm, [&] { return fit_weibull_ptcphm(sample, ADomain::Free); });
    return rows;
}

}  // namespace sosfit
