#ifndef ANM_KERNEL_HPP
#define ANM_KERNEL_HPP

#include <string>
#include <string_view>

namespace anm {

/// Smoothing kernels shared by the regressors and the density estimator.
///
/// Box is uniform on the open interval (-1, 1) and only serves as a regression
/// weight. Biweight and Epanechnikov vanish for |u| >= 1. The Gaussian is
/// evaluated with a hard cutoff at |u| = 8, where its mass outside is below
/// 1e-14.
enum class Kernel { Box, Epanechnikov, Biweight, Gaussian };

double kernel_value(Kernel k, double u) noexcept;

/// Half-width of the region where kernel_value can be non-zero.
double support_radius(Kernel k) noexcept;

bool has_compact_support(Kernel k) noexcept;

std::string kernel_name(Kernel k);
Kernel parse_kernel(std::string_view name);

} // namespace anm

#endif
