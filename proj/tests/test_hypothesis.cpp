#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "sosfit/hypothesis.hpp"
#include "sosfit/inference.hpp"
#include "sosfit/likelihood.hpp"
#include "sosfit/simulate.hpp"
#include "test_support.hpp"

using namespace sosfit;
using testsupport::aircraft;

namespace {

// Closed-form likelihood-ratio route, written independently of the
// exp(l_H - l_K) route used by the library.
double lambda_closed_weibull(const SosSample& s, const FitResult& h, const FitResult& k) {
    const double r = static_cast<double>(s.r());
    const SufficientStats s1(s, MultiplierScheme::power_trend(1.0));
    const SufficientStats s2(s, MultiplierScheme::power_trend(*k.a));
    const double b1 = *h.beta;
    const double b2 = *k.beta;
    const double ratio = s2.weighted_power_sum(b2) / s1.weighted_power_sum(b1);
    return std::pow(b1 / b2, r) * std::pow(ratio, r) *
           std::pow(*k.a, -0.5 * r * (r + 1.0)) *
           std::exp((b1 - b2) * s.sum_log_times());
}

double lambda_closed_exponential(const SosSample& s, const FitResult& k) {
    const double r = static_cast<double>(s.r());
    const SufficientStats s1(s, MultiplierScheme::power_trend(1.0));
    const SufficientStats s2(s, MultiplierScheme::power_trend(*k.a));
    const double ratio = s2.weighted_power_sum(1.0) / s1.weighted_power_sum(1.0);
    return std::pow(ratio, r) * std::pow(*k.a, -0.5 * r * (r + 1.0));
}

}  // namespace

TEST_CASE("trend test with exponential baseline on the aircraft data") {
    const GlrResult t = glr_test_a_exponential(aircraft(), 0.05);
    CHECK_FALSE(t.boundary);  // the free trend estimate is above one
    CHECK(t.stat == doctest::Approx(0.22731006042773316).epsilon(1e-7));
    CHECK(t.p_value == doctest::Approx(0.633525591216921).epsilon(1e-7));
    CHECK(t.threshold == doctest::Approx(3.8414588206941254).epsilon(1e-12));
    CHECK_FALSE(t.reject);
    CHECK(t.lambda == doctest::Approx(std::exp(-0.5 * t.stat)).epsilon(1e-12));
    // Constrained and unconstrained alternatives coincide here.
    const GlrResult tf = glr_test_a_exponential(aircraft(), 0.05, ADomain::Free);
    CHECK(tf.stat == doctest::Approx(t.stat).epsilon(1e-9));
}

TEST_CASE("trend test with Weibull baseline hits the boundary on the aircraft data") {
    const GlrResult t = glr_test_a_weibull(aircraft(), 0.05);
    CHECK(t.boundary);
    CHECK(t.stat == 0.0);
    CHECK(t.lambda == 1.0);
    CHECK(t.p_value == 1.0);
    CHECK_FALSE(t.reject);
    CHECK(*t.fit_k.a == 1.0);

    const GlrResult free_alt = glr_test_a_weibull(aircraft(), 0.05, ADomain::Free);
    CHECK_FALSE(free_alt.boundary);
    CHECK(free_alt.stat == doctest::Approx(2.703302724413213).epsilon(1e-7));
    CHECK_FALSE(free_alt.reject);
}

TEST_CASE("exponentiality test on the aircraft data") {
    const GlrResult t = glr_test_exponentiality(aircraft(), 0.05, Within::AEqualOne);
    CHECK(t.stat == doctest::Approx(1.4345649624351324).epsilon(1e-8));
    CHECK(t.p_value == doctest::Approx(0.23102087661727164).epsilon(1e-7));
    CHECK_FALSE(t.reject);

    const GlrResult tf = glr_test_exponentiality(aircraft(), 0.05, Within::FreeA);
    CHECK(tf.stat == doctest::Approx(3.910557626420612).epsilon(1e-7));
    CHECK(tf.reject);  // 3.91 > 3.84: the trend-adjusted fit prefers beta != 1
}

TEST_CASE("closed-form likelihood ratio equals the two-fit route") {
    RngStream rng(640);
    const WeibullBaseline baseline(WeibullParams{1.3, 2.2});
    int done = 0;
    while (done < 50) {
        const int n = 6 + static_cast<int>(rng.next_uniform() * 8);
        const int r = 4 + static_cast<int>(rng.next_uniform() * (n - 3));
        RngStream draw = RngStream::substream(640, static_cast<std::uint64_t>(done) + 7);
        const SosSample s =
            sample_sos(n, r, MultiplierScheme::power_trend(1.0), baseline, draw);

        const GlrResult tw = glr_test_a_weibull(s, 0.05, ADomain::Free);
        if (!tw.fit_h.converged || !tw.fit_k.converged) continue;
        const double lw = lambda_closed_weibull(s, tw.fit_h, tw.fit_k);
        CHECK(std::abs(lw - tw.lambda) <= 1e-8 * std::max(1.0, std::abs(tw.lambda)));

        const GlrResult te = glr_test_a_exponential(s, 0.05, ADomain::Free);
        if (!te.fit_h.converged || !te.fit_k.converged) continue;
        const double le = lambda_closed_exponential(s, te.fit_k);
        CHECK(std::abs(le - te.lambda) <= 1e-8 * std::max(1.0, std::abs(te.lambda)));

        CHECK(tw.stat >= 0.0);
        CHECK(te.stat >= 0.0);
        ++done;
    }
}

TEST_CASE("test statistics are scale invariant") {
    const SosSample s = aircraft();
    const GlrResult t0e = glr_test_a_exponential(s, 0.05, ADomain::Free);
    const GlrResult t0b = glr_test_exponentiality(s, 0.05, Within::AEqualOne);
    const GlrResult t0w = glr_test_a_weibull(s, 0.05, ADomain::Free);
    for (double c : {0.1, 7.3}) {
        std::vector<double> scaled;
        for (double t : s.times()) scaled.push_back(c * t);
        const SosSample sc = SosSample::validate(scaled, s.n());
        CHECK(glr_test_a_exponential(sc, 0.05, ADomain::Free).stat ==
              doctest::Approx(t0e.stat).epsilon(1e-8));
        CHECK(glr_test_exponentiality(sc, 0.05, Within::AEqualOne).stat ==
              doctest::Approx(t0b.stat).epsilon(1e-8));
        CHECK(glr_test_a_weibull(sc, 0.05, ADomain::Free).stat ==
              doctest::Approx(t0w.stat).epsilon(1e-6));
    }
}

TEST_CASE("rejection is monotone in the test size") {
    const SosSample s = aircraft();
    bool rejected = false;
    for (double gamma : {0.01, 0.05, 0.2, 0.5, 0.7}) {
        const GlrResult t = glr_test_a_exponential(s, gamma, ADomain::Free);
        if (rejected) CHECK(t.reject);
        rejected = t.reject;
    }
}

TEST_CASE("boundary-mixture option halves the p-value away from zero") {
    const GlrResult plain = glr_test_a_exponential(aircraft(), 0.05);
    const GlrResult mixed = glr_test_a_exponential(aircraft(), 0.05, ADomain::GeOne, true);
    CHECK(mixed.p_value == doctest::Approx(0.5 * plain.p_value).epsilon(1e-12));
    CHECK(mixed.threshold < plain.threshold);
    CHECK(mixed.threshold == doctest::Approx(chisq1_quantile(0.90)).epsilon(1e-12));

    const GlrResult bnd = glr_test_a_weibull(aircraft(), 0.05, ADomain::GeOne, true);
    CHECK(bnd.stat == 0.0);
    CHECK(bnd.p_value == 1.0);
}

TEST_CASE("Monte Carlo level estimate is deterministic and seed-driven") {
    const McLevel a = mc_actual_level(8, 5, 1.5, 2.0, 1.0, 0.05, 400, 99);
    const McLevel b = mc_actual_level(8, 5, 1.5, 2.0, 1.0, 0.05, 400, 99);
    CHECK(a.level == b.level);
    CHECK(a.failures == b.failures);

    // Worker count must not change the outcome.
    setenv("SOSFIT_THREADS", "1", 1);
    const McLevel c1 = mc_actual_level(8, 5, 1.5, 2.0, 1.0, 0.05, 400, 99);
    setenv("SOSFIT_THREADS", "3", 1);
    const McLevel c3 = mc_actual_level(8, 5, 1.5, 2.0, 1.0, 0.05, 400, 99);
    unsetenv("SOSFIT_THREADS");
    CHECK(c1.level == c3.level);
    CHECK(c1.level == a.level);

    // A different seed gives a different draw sequence (same level scale).
    const McLevel d = mc_actual_level(8, 5, 1.5, 2.0, 1.0, 0.05, 400, 100);
    CHECK(d.replicates == 400);

    // gamma = 0 never rejects.
    const McLevel z = mc_actual_level(8, 5, 1.5, 2.0, 1.0, 0.0, 200, 7);
    CHECK(z.level == 0.0);

    CHECK_THROWS_AS(mc_actual_level(8, 5, 1.5, 2.0, 1.0, 0.05, 50, 1), DomainError);
}
