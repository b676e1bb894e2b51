#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sosfit/baseline.hpp"
#include "sosfit/sample.hpp"
#include "sosfit/scheme.hpp"

namespace sosfit {

/// Reproducible random stream. Substreams are derived from (seed, index)
/// by SplitMix64 mixing feeding a Mersenne Twister (mt19937_64), so
/// replicate k's stream is reachable without generating replicates 0..k-1
/// and identical across platforms and worker counts. The uniform and
/// exponential mappings are fixed here rather than taken from
/// <random> distributions, which the standard leaves unspecified.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix(seed)) {}

    static RngStream substream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double next_uniform();

    /// Standard exponential, strictly positive.
    double next_exponential();

private:
    static std::uint64_t mix(std::uint64_t z);
    std::mt19937_64 engine_;
};

/// Draws the first r sequential order statistics of an n-component system
/// under the given multiplier scheme and baseline, via cumulative-hazard
/// increments: H_j = H_{j-1} + E_j / ((n-j+1) alpha_j) with E_j iid standard
/// exponential, x_j = k^{-1}(H_j). The increments
/// alpha_j (n-j+1) [k(x_j) - k(x_{j-1})] of the joint density telescope to
/// exactly this construction, which the density-oracle test checks.
SosSample sample_sos(int n, int r, const MultiplierScheme& scheme,
                     const BaselineFamily& baseline, RngStream& rng);

/// One cell of a simulation study grid.
struct StudyCell {
    int n{13};
    int r{10};
    double beta{1.0};
    double sigma{1.0};
    double a{1.0};
};

struct StudyConfig {
    std::uint64_t seed{0};
    int replicates{0};
    double gamma{0.05};
    std::string output;        // CSV path ("" = caller decides)
    std::vector<StudyCell> grid;

    /// Parse from a JSON file; see the README for the schema.
    static StudyConfig load(const std::string& path);
    static StudyConfig from_json_text(const std::string& text, const std::string& origin);
};

struct StudyRow {
    StudyCell cell;
    int replicates{0};
    std::string metric;
    double value{0.0};
};

struct StudyReport {
    std::vector<StudyRow> rows;

    /// Deterministic CSV: header + one row per (cell, metric).
    std::string to_csv() const;
};

/// For each grid cell, simulates `replicates` datasets, fits the free
/// power-trend Weibull model and runs the a-trend GLR test; reports
/// mean/bias/RMSE of the estimators, the rejection rate, and the failure
/// count. Deterministic given the seed, for any worker count.
StudyReport run_study(const StudyConfig& config);

}  // namespace sosfit
