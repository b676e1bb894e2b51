#include "sosfit/hypothesis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "sosfit/inference.hpp"
#include "sosfit/simulate.hpp"

namespace sosfit {

namespace {

GlrResult assemble(FitResult fit_h, FitResult fit_k, double gamma, bool boundary_mixture) {
    if (!(gamma >= 0.0) || gamma >= 1.0) {
        throw DomainError("test size gamma must lie in [0, 1)");
    }
    GlrResult res;
    res.fit_h = std::move(fit_h);
    res.fit_k = std::move(fit_k);
    res.boundary = res.fit_k.boundary_a;
    res.stat = std::max(0.0, 2.0 * (res.fit_k.loglik - res.fit_h.loglik));
    if (res.boundary) res.stat = 0.0;
    res.lambda = std::exp(-0.5 * res.stat);
    if (boundary_mixture) {
        // Under the boundary null, -2 log Lambda ~ 0.5 chi2_0 + 0.5 chi2_1.
        res.threshold = (gamma > 0.0 && 2.0 * gamma < 1.0)
                            ? chisq1_quantile(1.0 - 2.0 * gamma)
                            : (gamma > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        res.p_value = res.stat > 0.0 ? 0.5 * chisq1_sf(res.stat) : 1.0;
    } else {
        res.threshold = gamma > 0.0 ? chisq1_quantile(1.0 - gamma)
                                    : std::numeric_limits<double>::infinity();
        res.p_value = chisq1_sf(res.stat);
    }
    res.reject = res.stat > res.threshold;
    return res;
}

int worker_count() {
    if (const char* env = std::getenv("SOSFIT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

GlrResult glr_test_a_weibull(const SosSample& sample, double gamma, ADomain alt,
                             bool boundary_mixture) {
    FitResult fit_h = fit_weibull_fixed_a(sample, 1.0);
    FitResult fit_k = fit_weibull_ptcphm(sample, alt);
    return assemble(std::move(fit_h), std::move(fit_k), gamma, boundary_mixture);
}

GlrResult glr_test_a_exponential(const SosSample& sample, double gamma, ADomain alt,
                                 bool boundary_mixture) {
    FitResult fit_h = fit_exponential_known_alpha(sample, MultiplierScheme::power_trend(1.0));
    FitResult fit_k = fit_exponential_ptcphm(sample, alt);
    return assemble(std::move(fit_h), std::move(fit_k), gamma, boundary_mixture);
}

GlrResult glr_test_exponentiality(const SosSample& sample, double gamma, Within within) {
    FitResult fit_h, fit_k;
    if (within == Within::AEqualOne) {
        fit_h = fit_exponential_known_alpha(sample, MultiplierScheme::power_trend(1.0));
        fit_k = fit_weibull_fixed_a(sample, 1.0);
    } else {
        fit_h = fit_exponential_ptcphm(sample, ADomain::Free);
        fit_k = fit_weibull_ptcphm(sample, ADomain::Free);
    }
    return assemble(std::move(fit_h), std::move(fit_k), gamma, false);
}

McLevel mc_actual_level(int n, int r, double beta, double sigma, double a0, double gamma,
                        int replicates, std::uint64_t seed) {
    if (replicates < 100) throw DomainError("Monte Carlo calibration needs >= 100 replicates");
    if (r < 2 || r > n) throw DomainError("Monte Carlo calibration needs 2 <= r <= n");
    check_weibull_params(WeibullParams{beta, sigma});
    const MultiplierScheme scheme = MultiplierScheme::power_trend(a0);
    const WeibullBaseline baseline(WeibullParams{beta, sigma});

    // 0 = accept, 1 = reject, 2 = failure; filled per replicate index so the
    // outcome does not depend on scheduling.
    std::vector<unsigned char> outcome(static_cast<std::size_t>(replicates), 0);
    std::atomic<int> next{0};
    auto run = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= replicates) return;
            RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(i));
            try {
                SosSample s = sample_sos(n, r, scheme, baseline, rng);
                GlrResult t = glr_test_a_weibull(s, gamma);
                if (!t.fit_h.converged || !t.fit_k.converged) {
                    outcome[static_cast<std::size_t>(i)] = 2;
                } else {
                    outcome[static_cast<std::size_t>(i)] = t.reject ? 1 : 0;
                }
            } catch (const Error&) {
                outcome[static_cast<std::size_t>(i)] = 2;
            }
        }
    };

    const int workers = std::min(worker_count(), replicates);
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    McLevel out;
    out.replicates = replicates;
    int rejects = 0;
    for (unsigned char o : outcome) {
        if (o == 2) ++out.failures;
        else if (o == 1) ++rejects;
    }
    if (out.failures * 100 >= replicates) {
        throw Error("Monte Carlo calibration aborted: " + std::to_string(out.failures) +
                    " of " + std::to_string(replicates) + " replicate fits failed");
    }
    const int effective = replicates - out.failures;
    out.level = static_cast<double>(rejects) / effective;
    out.stderr_ = std::sqrt(std::max(0.0, out.level * (1.0 - out.level) / effective));
    return out;
}

}  // namespace sosfit
