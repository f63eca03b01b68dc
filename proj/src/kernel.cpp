#include "anm/kernel.hpp"

#include <cmath>
#include <numbers>

#include "anm/errors.hpp"

namespace anm {

namespace {
constexpr double gaussian_cutoff = 8.0;
}

double kernel_value(Kernel k, double u) noexcept
{
    const double a = std::abs(u);
    switch (k) {
    case Kernel::Box:
        return a < 1.0 ? 0.5 : 0.0;
    case Kernel::Epanechnikov:
        return a < 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case Kernel::Biweight: {
        if (a >= 1.0)
            return 0.0;
        const double w = 1.0 - u * u;
        return (15.0 / 16.0) * w * w;
    }
    case Kernel::Gaussian:
        return a < gaussian_cutoff ? std::exp(-0.5 * u * u) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2) : 0.0;
    }
    return 0.0;
}

double support_radius(Kernel k) noexcept
{
    return k == Kernel::Gaussian ? gaussian_cutoff : 1.0;
}

bool has_compact_support(Kernel k) noexcept
{
    return k != Kernel::Gaussian;
}

std::string kernel_name(Kernel k)
{
    switch (k) {
    case Kernel::Box: return "box";
    case Kernel::Epanechnikov: return "epanechnikov";
    case Kernel::Biweight: return "biweight";
    case Kernel::Gaussian: return "gaussian";
    }
    return "?";
}

Kernel parse_kernel(std::string_view name)
{
    if (name == "box")
        return Kernel::Box;
    if (name == "epanechnikov")
        return Kernel::Epanechnikov;
    if (name == "biweight")
        return Kernel::Biweight;
    if (name == "gaussian")
        return Kernel::Gaussian;
    throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

} // namespace anm
