#include <doctest.h>

#include <cmath>

#include "sosfit/baseline.hpp"
#include "sosfit/sample.hpp"
#include "sosfit/scheme.hpp"
#include "sosfit/simulate.hpp"
#include "test_support.hpp"

using namespace sosfit;
using testsupport::aircraft;

TEST_CASE("validate_sample accepts the aircraft data") {
    const SosSample s = aircraft();
    CHECK(s.n() == 13);
    CHECK(s.r() == 10);
    CHECK(s.time(1) == doctest::Approx(0.22));
    CHECK(s.time(10) == doctest::Approx(3.00));
    CHECK(s.input_was_sorted());
    CHECK_FALSE(s.has_ties());
}

TEST_CASE("validate_sample minimal and error cases") {
    const SosSample one = SosSample::validate({5.0}, 1);
    CHECK(one.n() == 1);
    CHECK(one.r() == 1);

    CHECK_THROWS_AS(SosSample::validate({1.0, -2.0}, 3), InvalidSample);
    try {
        SosSample::validate({1.0, -2.0}, 3);
    } catch (const InvalidSample& e) {
        CHECK(e.index() == 2);
    }
    CHECK_THROWS_AS(SosSample::validate({1.0, 2.0, 3.0}, 2), InvalidSample);  // r > n
    CHECK_THROWS_AS(SosSample::validate({}, 3), InvalidSample);
    CHECK_THROWS_AS(SosSample::validate({1.0, 0.0}, 5), InvalidSample);
}

TEST_CASE("validate_sample sorts and flags") {
    const SosSample s = SosSample::validate({3.0, 1.0, 2.0}, 5);
    CHECK_FALSE(s.input_was_sorted());
    CHECK(s.times() == std::vector<double>{1.0, 2.0, 3.0});

    const SosSample t = SosSample::validate({1.0, 1.0, 2.0}, 5);
    CHECK(t.has_ties());
}

TEST_CASE("multiplier weights, all-ones and power-trend") {
    const auto ones = MultiplierScheme::explicit_alphas(std::vector<double>(10, 1.0));
    for (double w : ones.weights(13, 10)) CHECK(w == doctest::Approx(1.0));

    const auto pt1 = MultiplierScheme::power_trend(1.0);
    for (double w : pt1.weights(13, 10)) CHECK(w == doctest::Approx(1.0));
    CHECK(pt1.alpha(10) == doctest::Approx(1.0));

    // j = 1 weight at the trend value fitted on the aircraft data:
    // 13 a - 12 a^2 at a = 1.04936.
    const auto pt = MultiplierScheme::power_trend(1.04936);
    CHECK(pt.weights(13, 10)[0] == doctest::Approx(0.4278030848).epsilon(1e-9));
}

TEST_CASE("power-trend weights are positive exactly when a < n/(n-1)") {
    for (int n : {3, 5, 13, 20}) {
        for (int r = 2; r <= n; r += (n > 6 ? 3 : 1)) {
            const double edge = static_cast<double>(n) / (n - 1);
            for (double frac : {0.2, 0.6, 0.9, 0.999}) {
                const double a = frac * edge;
                CAPTURE(n); CAPTURE(r); CAPTURE(a);
                CHECK(MultiplierScheme::power_trend(a).weights_all_positive(n, r));
            }
            CHECK_FALSE(MultiplierScheme::power_trend(edge * 1.001).weights_all_positive(n, r));
        }
    }
}

TEST_CASE("scheme validation") {
    CHECK_THROWS_AS(MultiplierScheme::power_trend(0.0), DomainError);
    CHECK_THROWS_AS(MultiplierScheme::power_trend(-1.0), DomainError);
    CHECK_THROWS_AS(MultiplierScheme::explicit_alphas({1.0, -0.5}), DomainError);
    CHECK_THROWS_AS(MultiplierScheme::explicit_alphas({}), DomainError);
    const auto e = MultiplierScheme::explicit_alphas({2.0, 3.0});
    CHECK(e.alpha(2) == 3.0);
    CHECK_THROWS_AS(e.alpha(3), DomainError);
    CHECK_THROWS_AS(e.trend(), DomainError);
}

TEST_CASE("weibull cumulative hazard") {
    CHECK(weibull_cum_hazard(2.305, WeibullParams{3.7, 2.305}) == doctest::Approx(1.0));
    CHECK(weibull_cum_hazard(2.0, WeibullParams{1.0, 2.305}) ==
          doctest::Approx(2.0 / 2.305).epsilon(1e-12));
    CHECK(weibull_inverse_cum_hazard(1.0, WeibullParams{2.0, 3.0}) == doctest::Approx(3.0));
    CHECK(weibull_cum_hazard_deriv(2.0, WeibullParams{1.0, 2.305}) ==
          doctest::Approx(1.0 / 2.305));
    CHECK_THROWS_AS(weibull_cum_hazard(0.0, WeibullParams{1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(weibull_cum_hazard(1.0, WeibullParams{-1.0, 1.0}), DomainError);
}

TEST_CASE("weibull hazard round-trip over a parameter grid") {
    RngStream rng(411);
    for (double beta : {0.2, 0.7, 1.0, 2.5, 10.0}) {
        for (double sigma : {0.01, 0.5, 1.0, 7.0, 100.0}) {
            const WeibullParams p{beta, sigma};
            for (int k = 0; k < 20; ++k) {
                const double x = sigma * std::exp(4.0 * (rng.next_uniform() - 0.5));
                const double back = weibull_inverse_cum_hazard(weibull_cum_hazard(x, p), p);
                CHECK(back == doctest::Approx(x).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("baseline classes agree with the free functions") {
    const WeibullBaseline wb(WeibullParams{1.7, 2.2});
    CHECK(wb.cum_hazard(1.3) == doctest::Approx(weibull_cum_hazard(1.3, WeibullParams{1.7, 2.2})));
    CHECK(wb.inverse_cum_hazard(0.8) ==
          doctest::Approx(weibull_inverse_cum_hazard(0.8, WeibullParams{1.7, 2.2})));

    const ExponentialBaseline eb(ExpParams{2.5});
    CHECK(eb.cum_hazard(1.0) == doctest::Approx(0.4));
    CHECK(eb.inverse_cum_hazard(0.4) == doctest::Approx(1.0));
    CHECK(eb.cum_hazard_deriv(3.0) == doctest::Approx(0.4));
}
