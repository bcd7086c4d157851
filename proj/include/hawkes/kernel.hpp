#pragma once

#include <variant>
#include <vector>

namespace hawkes {

/// The identically-zero link.
struct ZeroKernel {};

/// alpha * exp(-beta * u) on u > 0; alpha >= 0, beta > 0.
struct ExponentialKernel {
    double alpha = 0.0;
    double beta = 1.0;
};

/// Piecewise-constant link: levels[l] on [l*bin_width, (l+1)*bin_width),
/// zero beyond the last bin. bin_width > 0.
struct StepKernel {
    double bin_width = 1.0;
    std::vector<double> levels;
};

/// A single link function phi_ij. Vanishes on u <= 0 in every variant.
using LinkKernel = std::variant<ZeroKernel, ExponentialKernel, StepKernel>;

/// Validating factories; throw std::invalid_argument on bad parameters.
LinkKernel make_zero();
LinkKernel make_exponential(double alpha, double beta);
LinkKernel make_step(double bin_width, std::vector<double> levels);

/// phi(u). Zero for u <= 0 (keeps the conditional intensity left-continuous),
/// right-continuous on (0, inf).
double kernel_value(const LinkKernel& kernel, double u);

/// lim_{s -> u+} phi(s) for u >= 0; zero for u < 0. Equals kernel_value on
/// (0, inf) and differs only at u = 0. This is the evaluation the thinning
/// majorant needs.
double kernel_value_right(const LinkKernel& kernel, double u);

/// Integral over (0, inf), in closed form per variant.
double kernel_integral(const LinkKernel& kernel);

/// End of the support: 0 for the zero kernel, bin_width * levels.size() for
/// step kernels, +inf for exponential kernels with alpha > 0.
double kernel_support_end(const LinkKernel& kernel);

/// True when the link is identically zero.
bool kernel_is_zero(const LinkKernel& kernel);

/// True when the link is nonincreasing on (0, inf). Because the value drops
/// to zero past the support, this implies nonnegativity everywhere.
bool kernel_is_nonincreasing(const LinkKernel& kernel);

} // namespace hawkes
