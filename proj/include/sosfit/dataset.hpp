#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sosfit/sample.hpp"

namespace sosfit {

/// A parsed dataset file: one failure time per line, '#' comment lines,
/// and an optional "# n=<int>" header giving the number of components.
/// Without the header the sample is treated as complete (n = line count).
struct Dataset {
    std::vector<double> times;
    int n{0};
    bool n_from_header{false};
    std::uint64_t checksum{0};  // FNV-1a over the raw bytes
    std::string path;
};

Dataset load_dataset(const std::string& path);
Dataset parse_dataset(const std::string& text, const std::string& origin);

/// Validated sample from the parsed file.
SosSample dataset_sample(const Dataset& d);

}  // namespace sosfit
