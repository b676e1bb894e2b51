#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "sosfit/simulate.hpp"
#include "test_support.hpp"

using namespace sosfit;

TEST_CASE("substreams are reproducible and distinct") {
    RngStream a = RngStream::substream(42, 7);
    RngStream b = RngStream::substream(42, 7);
    RngStream c = RngStream::substream(42, 8);
    bool all_equal_c = true;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        all_equal_c = all_equal_c && (va == c.next_u64());
    }
    CHECK_FALSE(all_equal_c);

    RngStream u(3);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.next_uniform();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        CHECK(u.next_exponential() > 0.0);
    }
}

TEST_CASE("sampler contract checks") {
    RngStream rng(5);
    const ExponentialBaseline exp1(ExpParams{1.0});
    CHECK_THROWS_AS(sample_sos(2, 3, MultiplierScheme::power_trend(1.0), exp1, rng), DomainError);

    // Output times strictly increase, draw after draw.
    const auto scheme = MultiplierScheme::power_trend(1.2);
    const WeibullBaseline wb(WeibullParams{2.0, 1.0});
    for (int k = 0; k < 200; ++k) {
        const SosSample s = sample_sos(6, 4, scheme, wb, rng);
        for (int j = 2; j <= s.r(); ++j) CHECK(s.time(j) > s.time(j - 1));
    }
}

TEST_CASE("single-unit system is a plain exponential draw") {
    RngStream rng(1234);
    const double sigma = 1.7;
    const ExponentialBaseline baseline(ExpParams{sigma});
    const auto scheme = MultiplierScheme::power_trend(1.0);
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        sum += sample_sos(1, 1, scheme, baseline, rng).time(1);
    }
    const double mean = sum / draws;
    CHECK(std::abs(mean - sigma) / sigma < 0.02);
}

TEST_CASE("iid order-statistic means for two standard exponentials") {
    RngStream rng(777);
    const ExponentialBaseline baseline(ExpParams{1.0});
    const auto scheme = MultiplierScheme::power_trend(1.0);
    double s1 = 0.0, s2 = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const SosSample s = sample_sos(2, 2, scheme, baseline, rng);
        s1 += s.time(1);
        s2 += s.time(2);
    }
    // E X_(1) = 1/2 (sd 1/2), E X_(2) = 3/2 (sd sqrt(5)/2).
    CHECK(std::abs(s1 / draws - 0.5) < 3.0 * 0.5 / std::sqrt(draws));
    CHECK(std::abs(s2 / draws - 1.5) < 3.0 * std::sqrt(1.25) / std::sqrt(draws));
}

TEST_CASE("first cumulative-hazard increment is standard exponential in mean") {
    const int draws = 100000;
    auto check_case = [&](int n, const MultiplierScheme& scheme, const BaselineFamily& baseline,
                          std::uint64_t seed) {
        RngStream rng(seed);
        double acc = 0.0;
        for (int i = 0; i < draws; ++i) {
            const SosSample s = sample_sos(n, 1, scheme, baseline, rng);
            acc += scheme.alpha(1) * n * baseline.cum_hazard(s.time(1));
        }
        CHECK(std::abs(acc / draws - 1.0) < 3.0 / std::sqrt(static_cast<double>(draws)));
    };
    check_case(3, MultiplierScheme::power_trend(1.5), WeibullBaseline(WeibullParams{2.0, 1.0}), 3017);
    check_case(6, MultiplierScheme::power_trend(0.9), WeibullBaseline(WeibullParams{1.0, 2.0}), 6017);
    check_case(1, MultiplierScheme::power_trend(1.0), WeibullBaseline(WeibullParams{1.3, 0.7}), 1017);
    check_case(5, MultiplierScheme::explicit_alphas({2.5}), ExponentialBaseline(ExpParams{1.8}), 5017);
}

TEST_CASE("iid special case matches sorted iid sampling distributionally") {
    const int draws = 10000;
    const WeibullBaseline baseline(WeibullParams{2.0, 1.0});
    const auto scheme = MultiplierScheme::power_trend(1.0);
    std::vector<double> sos_min, sos_max, iid_min, iid_max;
    RngStream rng_sos(2718);
    RngStream rng_iid(31415);
    for (int i = 0; i < draws; ++i) {
        const SosSample s = sample_sos(3, 3, scheme, baseline, rng_sos);
        sos_min.push_back(s.time(1));
        sos_max.push_back(s.time(3));
        double lo = 1e300, hi = -1e300;
        for (int j = 0; j < 3; ++j) {
            const double u = rng_iid.next_uniform();
            const double x = baseline.inverse_cum_hazard(-std::log1p(-u));
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        iid_min.push_back(lo);
        iid_max.push_back(hi);
    }
    CHECK(testsupport::ks2_pvalue(sos_min, iid_min) > 0.01);
    CHECK(testsupport::ks2_pvalue(sos_max, iid_max) > 0.01);
}

TEST_CASE("study config parsing and validation") {
    const char* good = R"({
        "seed": 11, "replicates": 5, "gamma": 0.05, "output": "x.csv",
        "grid": {"n": [8], "r": [5, 6], "beta": [1.5], "sigma": [2.0], "a": [1.0]}
    })";
    const StudyConfig cfg = StudyConfig::from_json_text(good, "inline");
    CHECK(cfg.grid.size() == 2);
    CHECK(cfg.seed == 11);
    CHECK(cfg.output == "x.csv");

    CHECK_THROWS_AS(StudyConfig::from_json_text("{", "inline"), ParseError);
    CHECK_THROWS_AS(StudyConfig::from_json_text(R"({"seed": 1})", "inline"), ParseError);
    CHECK_THROWS_AS(StudyConfig::from_json_text(
                        R"({"seed":1,"replicates":2,"grid":{"n":[3],"r":[5],"beta":[1],"sigma":[1],"a":[1]}})",
                        "inline"),
                    ParseError);
}

TEST_CASE("studies are deterministic across runs and worker counts") {
    const char* text = R"({
        "seed": 20260809, "replicates": 40, "gamma": 0.05,
        "grid": {"n": [8], "r": [6], "beta": [1.5], "sigma": [2.0], "a": [1.0]}
    })";
    const StudyConfig cfg = StudyConfig::from_json_text(text, "inline");
    setenv("SOSFIT_THREADS", "1", 1);
    const std::string csv1 = run_study(cfg).to_csv();
    setenv("SOSFIT_THREADS", "4", 1);
    const std::string csv4 = run_study(cfg).to_csv();
    unsetenv("SOSFIT_THREADS");
    CHECK(csv1 == csv4);
    CHECK(csv1 == run_study(cfg).to_csv());
    CHECK(csv1.find("mean_beta_hat") != std::string::npos);
    CHECK(csv1.find("reject_rate_a_trend") != std::string::npos);

    StudyConfig empty = cfg;
    empty.replicates = 0;
    const std::string header_only = run_study(empty).to_csv();
    CHECK(header_only == "n,r,beta,sigma,a,replicates,metric,value\n");
}
