#include "sosfit/scheme.hpp"

#include <cmath>

namespace sosfit {

MultiplierScheme MultiplierScheme::explicit_alphas(std::vector<double> alphas) {
    if (alphas.empty()) {
        throw DomainError("explicit multiplier scheme needs at least one alpha");
    }
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (!(alphas[j] > 0.0) || !std::isfinite(alphas[j])) {
            throw DomainError("alpha_" + std::to_string(j + 1) + " must be positive");
        }
    }
    MultiplierScheme s;
    s.power_trend_ = false;
    s.alphas_ = std::move(alphas);
    return s;
}

MultiplierScheme MultiplierScheme::power_trend(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("power trend parameter a must be positive");
    }
    MultiplierScheme s;
    s.power_trend_ = true;
    s.a_ = a;
    return s;
}

double MultiplierScheme::trend() const {
    if (!power_trend_) throw DomainError("explicit scheme has no trend parameter");
    return a_;
}

double MultiplierScheme::alpha(int j) const {
    if (j < 1) throw DomainError("multiplier index must be >= 1");
    if (power_trend_) {
        return std::pow(a_, j);
    }
    if (j > static_cast<int>(alphas_.size())) {
        throw DomainError("multiplier scheme has only " + std::to_string(alphas_.size()) +
                          " alphas, index " + std::to_string(j) + " requested");
    }
    return alphas_[static_cast<std::size_t>(j - 1)];
}

double MultiplierScheme::sum_log_alpha(int r) const {
    if (power_trend_) {
        return 0.5 * static_cast<double>(r) * static_cast<double>(r + 1) * std::log(a_);
    }
    double acc = 0.0;
    for (int j = 1; j <= r; ++j) acc += std::log(alpha(j));
    return acc;
}

std::vector<double> MultiplierScheme::weights(int n, int r) const {
    if (r < 2) throw DomainError("weights are defined for r >= 2");
    if (n < r) throw DomainError("need n >= r");
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(r - 1));
    for (int j = 1; j <= r - 1; ++j) {
        w.push_back(static_cast<double>(n - j + 1) * alpha(j) -
                    static_cast<double>(n - j) * alpha(j + 1));
    }
    return w;
}

bool MultiplierScheme::weights_all_positive(int n, int r) const {
    if (r < 2) return true;
    for (double v : weights(n, r)) {
        if (!(v > 0.0)) return false;
    }
    return true;
}

}  // namespace sosfit
