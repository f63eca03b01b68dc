#include "anm/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "anm/errors.hpp"
#include "anm/seed.hpp"

namespace anm {

namespace {

void check_training(std::span<const double> covariate, std::span<const double> response, double h,
                    double bound)
{
    if (covariate.size() != response.size())
        throw LengthMismatch(covariate.size(), response.size());
    if (covariate.empty())
        throw EmptySample();
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("bandwidth must be positive");
    if (!(bound >= 0.0))
        throw std::invalid_argument("truncation bound must be non-negative");
}

void sort_pairs(std::span<const double> covariate, std::span<const double> response,
                std::vector<double>& xs, std::vector<double>& ys)
{
    std::vector<std::size_t> order(covariate.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return covariate[a] < covariate[b]; });
    xs.resize(order.size());
    ys.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        xs[i] = covariate[order[i]];
        ys[i] = response[order[i]];
    }
}

double squared_exponential(double a, double b, double length_scale)
{
    const double d = (a - b) / length_scale;
    return std::exp(-0.5 * d * d);
}

} // namespace

double RegressionFit::predict(double x) const
{
    return std::clamp(predict_unclamped(x), -bound_, bound_);
}

std::vector<double> RegressionFit::predict(std::span<const double> xs) const
{
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs)
        out.push_back(predict(x));
    return out;
}

double RegressionFit::predict_unclamped(double x) const
{
    switch (method_) {
    case RegressorKind::BoxKernel:
    case RegressorKind::NadarayaWatson:
        return local_average(x);
    case RegressorKind::KernelRidge: {
        double s = 0.0;
        for (std::size_t i = 0; i < xs_.size(); ++i)
            s += dual_[i] * squared_exponential(x, xs_[i], bandwidth_);
        return s;
    }
    }
    return 0.0;
}

double RegressionFit::local_average(double x) const
{
    const double radius = bandwidth_ * support_radius(kernel_);
    // Window of covariates with |xi - x| < radius; both predicates are
    // monotone in xi, so the window is a contiguous run of the sorted data.
    const auto lo = std::partition_point(xs_.begin(), xs_.end(), [&](double xi) { return x - xi >= radius; });
    const auto hi = std::partition_point(lo, xs_.end(), [&](double xi) { return xi - x < radius; });
    const auto first = static_cast<std::size_t>(lo - xs_.begin());
    const auto last = static_cast<std::size_t>(hi - xs_.begin());

    double num = 0.0;
    double den = 0.0;
    if (kernel_ == Kernel::Box) {
        for (std::size_t i = first; i < last; ++i) {
            num += 0.5 * ys_[i];
            den += 0.5;
        }
    } else {
        for (std::size_t i = first; i < last; ++i) {
            const double w = kernel_value(kernel_, (xs_[i] - x) / bandwidth_);
            num += w * ys_[i];
            den += w;
        }
    }
    if (den > 0.0)
        return num / den;
    return nearest_response(x);
}

double RegressionFit::nearest_response(double x) const
{
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    std::size_t pick;
    if (it == xs_.begin()) {
        pick = 0;
    } else if (it == xs_.end()) {
        pick = xs_.size() - 1;
    } else {
        const auto right = static_cast<std::size_t>(it - xs_.begin());
        const auto left = right - 1;
        pick = (xs_[right] - x < x - xs_[left]) ? right : left;
    }
    const double target = xs_[pick];
    const auto run_lo = std::lower_bound(xs_.begin(), xs_.end(), target) - xs_.begin();
    const auto run_hi = std::upper_bound(xs_.begin(), xs_.end(), target) - xs_.begin();
    double s = 0.0;
    for (auto i = run_lo; i < run_hi; ++i)
        s += ys_[static_cast<std::size_t>(i)];
    return s / static_cast<double>(run_hi - run_lo);
}

RegressionFit fit_box_kernel(std::span<const double> covariate, std::span<const double> response,
                             double h, double bound)
{
    check_training(covariate, response, h, bound);
    RegressionFit fit;
    fit.method_ = RegressorKind::BoxKernel;
    fit.kernel_ = Kernel::Box;
    fit.bandwidth_ = h;
    fit.bound_ = bound;
    sort_pairs(covariate, response, fit.xs_, fit.ys_);
    return fit;
}

RegressionFit fit_nadaraya_watson(std::span<const double> covariate, std::span<const double> response,
                                  Kernel kernel, double h, double bound)
{
    check_training(covariate, response, h, bound);
    RegressionFit fit;
    fit.method_ = RegressorKind::NadarayaWatson;
    fit.kernel_ = kernel;
    fit.bandwidth_ = h;
    fit.bound_ = bound;
    sort_pairs(covariate, response, fit.xs_, fit.ys_);
    return fit;
}

RegressionFit fit_kernel_ridge(std::span<const double> covariate, std::span<const double> response,
                               double length_scale, double lambda, double bound)
{
    check_training(covariate, response, length_scale, bound);
    if (!(lambda > 0.0))
        throw std::invalid_argument("ridge penalty must be positive");

    const auto n = static_cast<Eigen::Index>(covariate.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double k = squared_exponential(covariate[static_cast<std::size_t>(i)],
                                                 covariate[static_cast<std::size_t>(j)], length_scale);
            gram(i, j) = k;
            gram(j, i) = k;
        }
    }
    gram.diagonal().array() += lambda;
    const Eigen::Map<const Eigen::VectorXd> rhs(response.data(), n);

    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        gram.diagonal().array() += 1e-10;
        llt.compute(gram);
        if (llt.info() != Eigen::Success)
            throw SingularSystem("kernel ridge system is not positive definite; increase lambda");
    }
    const Eigen::VectorXd alpha = llt.solve(rhs);
    if (!alpha.allFinite())
        throw SingularSystem("kernel ridge solve produced non-finite weights");

    RegressionFit fit;
    fit.method_ = RegressorKind::KernelRidge;
    fit.kernel_ = Kernel::Gaussian;
    fit.bandwidth_ = length_scale;
    fit.lambda_ = lambda;
    fit.bound_ = bound;
    fit.xs_.assign(covariate.begin(), covariate.end());
    fit.ys_.assign(response.begin(), response.end());
    fit.dual_.assign(alpha.data(), alpha.data() + n);
    return fit;
}

RegressionFit fit_regressor(const RegressorSpec& spec, std::span<const double> covariate,
                            std::span<const double> response, double bandwidth, double bound)
{
    switch (spec.kind) {
    case RegressorKind::BoxKernel:
        return fit_box_kernel(covariate, response, bandwidth, bound);
    case RegressorKind::NadarayaWatson:
        return fit_nadaraya_watson(covariate, response, spec.kernel, bandwidth, bound);
    case RegressorKind::KernelRidge:
        return fit_kernel_ridge(covariate, response, bandwidth, spec.lambda, bound);
    }
    throw std::invalid_argument("unknown regressor");
}

double auto_truncation_bound(std::span<const double> response)
{
    double m = 0.0;
    for (double y : response)
        m = std::max(m, std::abs(y));
    return 3.0 * m;
}

double select_bandwidth_cv(std::span<const double> covariate, std::span<const double> response,
                           const RegressorSpec& spec, int folds, std::span<const double> grid,
                           std::uint64_t seed, double bound)
{
    if (grid.empty())
        throw std::invalid_argument("bandwidth grid is empty");
    if (covariate.size() != response.size())
        throw LengthMismatch(covariate.size(), response.size());
    const std::size_t n = covariate.size();
    if (folds < 2 || n < static_cast<std::size_t>(folds))
        throw SampleTooSmall("cross-validation needs n >= folds >= 2");
    if (grid.size() == 1)
        return grid[0];

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);

    const auto k = static_cast<std::size_t>(folds);
    std::vector<double> sse(grid.size(), 0.0);
    std::vector<double> train_x, train_y;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t begin = f * n / k;
        const std::size_t end = (f + 1) * n / k;
        train_x.clear();
        train_y.clear();
        for (std::size_t p = 0; p < n; ++p) {
            if (p >= begin && p < end)
                continue;
            train_x.push_back(covariate[perm[p]]);
            train_y.push_back(response[perm[p]]);
        }
        const double b = bound > 0.0 ? bound : auto_truncation_bound(train_y);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto fit = fit_regressor(spec, train_x, train_y, grid[g], b);
            for (std::size_t p = begin; p < end; ++p) {
                const double e = response[perm[p]] - fit.predict(covariate[perm[p]]);
                sse[g] += e * e;
            }
        }
    }

    std::size_t best = 0;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double err = std::isnan(sse[g]) ? std::numeric_limits<double>::infinity() : sse[g];
        if (err < best_err || (err == best_err && grid[g] > grid[best])) {
            best = g;
            best_err = err;
        }
    }
    return grid[best];
}

ResidualSeries residuals(const RegressionFit& fit, std::span<const double> eval_covariate,
                         std::span<const double> eval_response, ResidualKind kind)
{
    if (eval_covariate.size() != eval_response.size())
        throw LengthMismatch(eval_covariate.size(), eval_response.size());
    ResidualSeries out;
    out.kind = kind;
    out.values.reserve(eval_covariate.size());
    for (std::size_t i = 0; i < eval_covariate.size(); ++i)
        out.values.push_back(eval_response[i] - fit.predict(eval_covariate[i]));
    return out;
}

double average_excess_risk(const RegressionFit& fit, const std::function<double(double)>& truth,
                           std::span<const double> sample_covariate)
{
    if (sample_covariate.empty())
        throw EmptySample();
    double s = 0.0;
    for (double x : sample_covariate)
        s += std::abs(fit.predict(x) - truth(x));
    return s / static_cast<double>(sample_covariate.size());
}

} // namespace anm
