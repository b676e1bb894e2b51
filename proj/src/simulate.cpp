#include "sosfit/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sosfit/hypothesis.hpp"

namespace sosfit {

std::uint64_t RngStream::mix(std::uint64_t z) {
    // SplitMix64 finalizer.
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RngStream RngStream::substream(std::uint64_t seed, std::uint64_t index) {
    RngStream s(0);
    s.engine_.seed(mix(mix(seed) ^ mix(index + 0x632be59bd9b4e019ULL)));
    return s;
}

double RngStream::next_uniform() {
    // 53-bit mantissa shifted into (0, 1); never exactly 0 or 1.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::next_exponential() { return -std::log(next_uniform()); }

SosSample sample_sos(int n, int r, const MultiplierScheme& scheme,
                     const BaselineFamily& baseline, RngStream& rng) {
    if (n < 1 || r < 1 || r > n) throw DomainError("need 1 <= r <= n");
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(r));
    double h = 0.0;
    for (int j = 1; j <= r; ++j) {
        const double rate = static_cast<double>(n - j + 1) * scheme.alpha(j);
        h += rng.next_exponential() / rate;
        times.push_back(baseline.inverse_cum_hazard(h));
    }
    return SosSample::validate(std::move(times), n);
}

StudyConfig StudyConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open study config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

StudyConfig StudyConfig::from_json_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("study config " + origin + ": " + e.what());
    }
    auto require = [&](const char* key) {
        if (!j.contains(key)) throw ParseError("study config " + origin + ": missing key '" + key + "'");
        return j.at(key);
    };
    StudyConfig cfg;
    cfg.seed = require("seed").get<std::uint64_t>();
    cfg.replicates = require("replicates").get<int>();
    if (cfg.replicates < 0) throw ParseError("study config " + origin + ": replicates must be >= 0");
    cfg.gamma = j.value("gamma", 0.05);
    cfg.output = j.value("output", std::string{});

    const auto grid = require("grid");
    auto list_of = [&](const char* key) {
        if (!grid.contains(key))
            throw ParseError("study config " + origin + ": grid is missing '" + key + "'");
        return grid.at(key).get<std::vector<double>>();
    };
    const auto ns = list_of("n");
    const auto rs = list_of("r");
    const auto betas = list_of("beta");
    const auto sigmas = list_of("sigma");
    const auto as = list_of("a");
    for (double nv : ns)
        for (double rv : rs)
            for (double bv : betas)
                for (double sv : sigmas)
                    for (double av : as) {
                        StudyCell cell;
                        cell.n = static_cast<int>(nv);
                        cell.r = static_cast<int>(rv);
                        cell.beta = bv;
                        cell.sigma = sv;
                        cell.a = av;
                        if (cell.r < 2 || cell.r > cell.n)
                            throw ParseError("study config " + origin + ": need 2 <= r <= n in grid");
                        cfg.grid.push_back(cell);
                    }
    return cfg;
}

std::string StudyReport::to_csv() const {
    std::string out = "n,r,beta,sigma,a,replicates,metric,value\n";
    char line[256];
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%d,%d,%.12g,%.12g,%.12g,%d,%s,%.12g\n", row.cell.n,
                      row.cell.r, row.cell.beta, row.cell.sigma, row.cell.a, row.replicates,
                      row.metric.c_str(), row.value);
        out += line;
    }
    return out;
}

namespace {

struct CellAccum {
    std::vector<double> beta_hat, sigma_hat, a_hat;
    int rejects{0};
    int failures{0};
};

int study_workers() {
    if (const char* env = std::getenv("SOSFIT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double rmse_of(const std::vector<double>& v, double truth) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v) s += (x - truth) * (x - truth);
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

StudyReport run_study(const StudyConfig& config) {
    StudyReport report;
    if (config.replicates == 0 || config.grid.empty()) return report;

    for (std::size_t cell_idx = 0; cell_idx < config.grid.size(); ++cell_idx) {
        const StudyCell& cell = config.grid[cell_idx];
        const MultiplierScheme scheme = MultiplierScheme::power_trend(cell.a);
        const WeibullBaseline baseline(WeibullParams{cell.beta, cell.sigma});

        const int reps = config.replicates;
        // Per-replicate slots keep the reduction order fixed.
        std::vector<double> bh(static_cast<std::size_t>(reps), 0.0);
        std::vector<double> sh(static_cast<std::size_t>(reps), 0.0);
        std::vector<double> ah(static_cast<std::size_t>(reps), 0.0);
        std::vector<unsigned char> status(static_cast<std::size_t>(reps), 0);  // 0 ok, 1 fail
        std::vector<unsigned char> rejected(static_cast<std::size_t>(reps), 0);

        std::atomic<int> next{0};
        auto run = [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= reps) return;
                const std::uint64_t stream_index =
                    static_cast<std::uint64_t>(cell_idx) * static_cast<std::uint64_t>(reps) +
                    static_cast<std::uint64_t>(i);
                RngStream rng = RngStream::substream(config.seed, stream_index);
                try {
                    SosSample s = sample_sos(cell.n, cell.r, scheme, baseline, rng);
                    FitResult fit = fit_weibull_ptcphm(s, ADomain::Free);
                    GlrResult test = glr_test_a_weibull(s, config.gamma);
                    if (!fit.converged || !test.fit_h.converged || !test.fit_k.converged) {
                        status[static_cast<std::size_t>(i)] = 1;
                        continue;
                    }
                    bh[static_cast<std::size_t>(i)] = *fit.beta;
                    sh[static_cast<std::size_t>(i)] = fit.sigma;
                    ah[static_cast<std::size_t>(i)] = *fit.a;
                    rejected[static_cast<std::size_t>(i)] = test.reject ? 1 : 0;
                } catch (const Error&) {
                    status[static_cast<std::size_t>(i)] = 1;
                }
            }
        };
        const int workers = std::min(study_workers(), reps);
        if (workers <= 1) {
            run();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(run);
            for (auto& t : pool) t.join();
        }

        CellAccum acc;
        for (int i = 0; i < reps; ++i) {
            if (status[static_cast<std::size_t>(i)] != 0) {
                ++acc.failures;
                continue;
            }
            acc.beta_hat.push_back(bh[static_cast<std::size_t>(i)]);
            acc.sigma_hat.push_back(sh[static_cast<std::size_t>(i)]);
            acc.a_hat.push_back(ah[static_cast<std::size_t>(i)]);
            acc.rejects += rejected[static_cast<std::size_t>(i)];
        }
        const double ok = static_cast<double>(reps - acc.failures);

        auto push = [&](const std::string& metric, double value) {
            StudyRow row;
            row.cell = cell;
            row.replicates = reps;
            row.metric = metric;
            row.value = value;
            report.rows.push_back(std::move(row));
        };
        push("mean_beta_hat", mean_of(acc.beta_hat));
        push("bias_beta_hat", mean_of(acc.beta_hat) - cell.beta);
        push("rmse_beta_hat", rmse_of(acc.beta_hat, cell.beta));
        push("mean_sigma_hat", mean_of(acc.sigma_hat));
        push("bias_sigma_hat", mean_of(acc.sigma_hat) - cell.sigma);
        push("rmse_sigma_hat", rmse_of(acc.sigma_hat, cell.sigma));
        push("mean_a_hat", mean_of(acc.a_hat));
        push("bias_a_hat", mean_of(acc.a_hat) - cell.a);
        push("rmse_a_hat", rmse_of(acc.a_hat, cell.a));
        push("reject_rate_a_trend", ok > 0 ? acc.rejects / ok : std::numeric_limits<double>::quiet_NaN());
        push("n_failed", acc.failures);
    }
    return report;
}

}  // namespace sosfit
