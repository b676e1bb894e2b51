#pragma once

#include <vector>

#include "sosfit/errors.hpp"

namespace sosfit {

/// A Type-II censored sample of sequential order statistics: the first r
/// ordered failure times x_1 <= ... <= x_r out of n components on test.
///
/// Immutable after construction; cheap to copy and safe to share across
/// threads.
class SosSample {
public:
    /// Validates and normalizes raw observations. Times are sorted
    /// ascending; whether the input was already sorted is recorded, as is
    /// the presence of tied values (ties are accepted but flagged, since
    /// rounded field data often contains them).
    ///
    /// Throws InvalidSample when the data is empty, contains a nonpositive
    /// or non-finite time (with its 1-based index), or has more
    /// observations than components (r > n).
    static SosSample validate(std::vector<double> raw_times, int n_components);

    int n() const { return n_; }
    int r() const { return static_cast<int>(times_.size()); }

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& log_times() const { return log_times_; }

    /// x_j, 1-based as in the usual order-statistics notation.
    double time(int j) const { return times_[static_cast<std::size_t>(j - 1)]; }

    /// log eta = sum of log x_j.
    double sum_log_times() const { return sum_log_times_; }

    bool input_was_sorted() const { return input_was_sorted_; }
    bool has_ties() const { return has_ties_; }

private:
    SosSample() = default;

    int n_{0};
    std::vector<double> times_;
    std::vector<double> log_times_;
    double sum_log_times_{0.0};
    bool input_was_sorted_{true};
    bool has_ties_{false};
};

/// Convenience alias for the documented operation name.
inline SosSample validate_sample(std::vector<double> raw_times, int n_components) {
    return SosSample::validate(std::move(raw_times), n_components);
}

}  // namespace sosfit
