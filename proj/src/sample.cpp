#include "sosfit/sample.hpp"

#include <algorithm>
#include <cmath>

namespace sosfit {

SosSample SosSample::validate(std::vector<double> raw_times, int n_components) {
    if (raw_times.empty()) {
        throw InvalidSample("empty sample");
    }
    if (n_components < static_cast<int>(raw_times.size())) {
        throw InvalidSample("observed count r = " + std::to_string(raw_times.size()) +
                            " exceeds system size n = " + std::to_string(n_components));
    }
    for (std::size_t i = 0; i < raw_times.size(); ++i) {
        if (!std::isfinite(raw_times[i])) {
            throw InvalidSample("non-finite time at index " + std::to_string(i + 1), i + 1);
        }
        if (raw_times[i] <= 0.0) {
            throw InvalidSample("nonpositive time at index " + std::to_string(i + 1), i + 1);
        }
    }

    SosSample s;
    s.n_ = n_components;
    s.input_was_sorted_ = std::is_sorted(raw_times.begin(), raw_times.end());
    s.times_ = std::move(raw_times);
    std::sort(s.times_.begin(), s.times_.end());
    s.has_ties_ = std::adjacent_find(s.times_.begin(), s.times_.end()) != s.times_.end();

    s.log_times_.reserve(s.times_.size());
    double acc = 0.0;
    for (double t : s.times_) {
        s.log_times_.push_back(std::log(t));
        acc += s.log_times_.back();
    }
    s.sum_log_times_ = acc;
    return s;
}

}  // namespace sosfit
