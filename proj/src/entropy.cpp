#include "anm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anm/errors.hpp"
#include "anm/stats.hpp"

namespace anm {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void require_sigma(double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("density bandwidth must be positive");
}

std::vector<double> sorted_copy(std::span<const double> values)
{
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    return s;
}

/// For each sorted point, the kernel sum over all points including itself.
/// Pairs are visited once; the window for point i ends at the first j with
/// v_j - v_i >= radius.
std::vector<double> pairwise_sums(const std::vector<double>& v, double sigma, Kernel kernel, bool include_self)
{
    const std::size_t n = v.size();
    const double radius = sigma * support_radius(kernel);
    const double self = include_self ? kernel_value(kernel, 0.0) : 0.0;
    std::vector<double> sums(n, self);
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i];
        for (std::size_t j = i + 1; j < n && v[j] - vi < radius; ++j) {
            const double w = kernel_value(kernel, (v[j] - vi) / sigma);
            sums[i] += w;
            sums[j] += w;
        }
    }
    return sums;
}

} // namespace

DensityEstimate::DensityEstimate(std::vector<double> centers, double sigma, Kernel kernel)
    : centers_(std::move(centers)), sigma_(sigma), kernel_(kernel)
{
    if (centers_.empty())
        throw EmptySample();
    require_sigma(sigma_);
    std::sort(centers_.begin(), centers_.end());
}

double DensityEstimate::operator()(double t) const
{
    const double radius = sigma_ * support_radius(kernel_);
    auto it = std::partition_point(centers_.begin(), centers_.end(), [&](double c) { return t - c >= radius; });
    double s = 0.0;
    for (; it != centers_.end() && *it - t < radius; ++it)
        s += kernel_value(kernel_, (*it - t) / sigma_);
    return s / (static_cast<double>(centers_.size()) * sigma_);
}

double kde_eval(const DensityEstimate& estimate, double t)
{
    return estimate(t);
}

EntropyEstimate resubstitution_entropy(std::span<const double> values, double sigma, Kernel kernel)
{
    if (values.size() < 2)
        throw SampleTooSmall("entropy estimation needs at least 2 values");
    require_sigma(sigma);
    const auto v = sorted_copy(values);
    if (v.front() == v.back())
        throw DegenerateSample("all values are identical; differential entropy diverges");

    const auto sums = pairwise_sums(v, sigma, kernel, true);
    const double norm = static_cast<double>(v.size()) * sigma;
    double acc = 0.0;
    for (double s : sums)
        acc += std::log(s / norm);

    EntropyEstimate e;
    e.value = -acc / static_cast<double>(v.size());
    e.sigma_used = sigma;
    e.n = v.size();
    return e;
}

double loo_log_likelihood(std::span<const double> values, double sigma, Kernel kernel)
{
    if (values.size() < 2)
        throw SampleTooSmall("leave-one-out likelihood needs at least 2 values");
    require_sigma(sigma);
    const auto v = sorted_copy(values);
    const auto sums = pairwise_sums(v, sigma, kernel, false);
    const double norm = static_cast<double>(v.size() - 1) * sigma;
    double acc = 0.0;
    for (double s : sums) {
        if (!(s > 0.0))
            return neg_inf;
        acc += std::log(s / norm);
    }
    return acc;
}

double tune_sigma_loo(std::span<const double> values, Kernel kernel, std::span<const double> grid)
{
    if (grid.empty())
        throw std::invalid_argument("bandwidth grid is empty");
    if (values.size() < 3)
        throw SampleTooSmall("leave-one-out tuning needs at least 3 values");
    if (grid.size() == 1)
        return grid[0];

    double best_sigma = *std::max_element(grid.begin(), grid.end());
    double best_ll = neg_inf;
    for (double sigma : grid) {
        const double ll = loo_log_likelihood(values, sigma, kernel);
        if (std::isnan(ll) || ll == neg_inf)
            continue;
        if (ll > best_ll || (ll == best_ll && sigma > best_sigma)) {
            best_ll = ll;
            best_sigma = sigma;
        }
    }
    return best_sigma;
}

double max_sigma_exponent(double alpha)
{
    return std::min((1.0 - alpha) / 4.0, alpha / 2.0);
}

std::pair<double, double> theory_bandwidths(std::size_t n, double c1, double alpha, double c2, double beta)
{
    if (n == 0)
        throw std::invalid_argument("n must be positive");
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw std::invalid_argument("schedule constants must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ScheduleViolation("regression exponent alpha must lie in (0, 1)");
    const double upper = max_sigma_exponent(alpha);
    if (!(beta > 0.0 && beta < upper))
        throw ScheduleViolation("density exponent beta=" + std::to_string(beta) + " outside (0, " +
                                std::to_string(upper) + ") for alpha=" + std::to_string(alpha));
    const double nn = static_cast<double>(n);
    return {c1 * std::pow(nn, -alpha), c2 * std::pow(nn, -beta)};
}

EntropyEstimate estimate_entropy(std::span<const double> values, const BandwidthSpec& spec, Kernel kernel)
{
    if (values.size() < 2)
        throw SampleTooSmall("entropy estimation needs at least 2 values");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi)
        throw DegenerateSample("all values are identical; differential entropy diverges");
    const double scale = spec.relative ? sample_sd(values) : 1.0;

    double sigma = 0.0;
    switch (spec.kind) {
    case BandwidthSpec::Kind::Fixed:
        sigma = spec.value * scale;
        break;
    case BandwidthSpec::Kind::TheorySchedule:
        sigma = spec.value * std::pow(static_cast<double>(values.size()), -spec.exponent) * scale;
        break;
    case BandwidthSpec::Kind::LooLikelihood: {
        std::vector<double> grid(spec.grid);
        for (double& g : grid)
            g *= scale;
        sigma = tune_sigma_loo(values, kernel, grid);
        break;
    }
    case BandwidthSpec::Kind::CrossValidation:
        throw ConfigError("entropy bandwidth cannot use regression cross-validation");
    }
    return resubstitution_entropy(values, sigma, kernel);
}

} // namespace anm
