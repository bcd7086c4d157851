#include "hawkes/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hawkes {

LinkKernel make_zero() { return ZeroKernel{}; }

LinkKernel make_exponential(double alpha, double beta) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("exponential kernel: alpha must be finite and >= 0");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("exponential kernel: beta must be finite and > 0");
    }
    return ExponentialKernel{alpha, beta};
}

LinkKernel make_step(double bin_width, std::vector<double> levels) {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw std::invalid_argument("step kernel: bin_width must be finite and > 0");
    }
    for (double v : levels) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("step kernel: levels must be finite");
        }
    }
    return StepKernel{bin_width, std::move(levels)};
}

namespace {

// Right-continuous level lookup for u >= 0; zero past the support.
double step_level_at(const StepKernel& k, double u) {
    const double idx = std::floor(u / k.bin_width);
    if (idx < 0.0 || idx >= static_cast<double>(k.levels.size())) return 0.0;
    return k.levels[static_cast<std::size_t>(idx)];
}

} // namespace

double kernel_value(const LinkKernel& kernel, double u) {
    if (u <= 0.0) return 0.0;
    return std::visit(
        [u](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroKernel>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return k.alpha * std::exp(-k.beta * u);
            } else {
                return step_level_at(k, u);
            }
        },
        kernel);
}

double kernel_value_right(const LinkKernel& kernel, double u) {
    if (u < 0.0) return 0.0;
    return std::visit(
        [u](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroKernel>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return k.alpha * std::exp(-k.beta * u);
            } else {
                return step_level_at(k, u);
            }
        },
        kernel);
}

double kernel_integral(const LinkKernel& kernel) {
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroKernel>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return k.alpha / k.beta;
            } else {
                double sum = 0.0;
                for (double v : k.levels) sum += v;
                return k.bin_width * sum;
            }
        },
        kernel);
}

double kernel_support_end(const LinkKernel& kernel) {
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroKernel>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return k.alpha > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
            } else {
                return k.bin_width * static_cast<double>(k.levels.size());
            }
        },
        kernel);
}

bool kernel_is_zero(const LinkKernel& kernel) {
    return std::visit(
        [](const auto& k) -> bool {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroKernel>) {
                return true;
            } else if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return k.alpha == 0.0;
            } else {
                for (double v : k.levels) {
                    if (v != 0.0) return false;
                }
                return true;
            }
        },
        kernel);
}

bool kernel_is_nonincreasing(const LinkKernel& kernel) {
    return std::visit(
        [](const auto& k) -> bool {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroKernel>) {
                return true;
            } else if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return true; // alpha >= 0 enforced at construction
            } else {
                if (k.levels.empty()) return true;
                for (std::size_t i = 0; i + 1 < k.levels.size(); ++i) {
                    if (k.levels[i] < k.levels[i + 1]) return false;
                }
                return k.levels.back() >= 0.0;
            }
        },
        kernel);
}

} // namespace hawkes
