#ifndef ANM_REGRESS_HPP
#define ANM_REGRESS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "anm/kernel.hpp"
#include "anm/model.hpp"

namespace anm {

/// Which regressor to fit, with its non-bandwidth parameters.
struct RegressorSpec {
    RegressorKind kind = RegressorKind::BoxKernel;
    Kernel kernel = Kernel::Biweight;   // Nadaraya-Watson only.
    double lambda = 0.1;                // Kernel ridge only.
};

/// A fitted one-dimensional regressor. Predictions are always clamped to
/// [-bound, bound].
class RegressionFit {
public:
    RegressorKind method() const noexcept { return method_; }
    double bandwidth() const noexcept { return bandwidth_; }
    double bound() const noexcept { return bound_; }
    double lambda() const noexcept { return lambda_; }
    Kernel kernel() const noexcept { return kernel_; }
    const std::vector<double>& train_xs() const noexcept { return xs_; }
    const std::vector<double>& train_ys() const noexcept { return ys_; }
    const std::vector<double>& dual_weights() const noexcept { return dual_; }

    double predict(double x) const;
    std::vector<double> predict(std::span<const double> xs) const;

private:
    friend RegressionFit fit_box_kernel(std::span<const double>, std::span<const double>, double, double);
    friend RegressionFit fit_nadaraya_watson(std::span<const double>, std::span<const double>, Kernel,
                                             double, double);
    friend RegressionFit fit_kernel_ridge(std::span<const double>, std::span<const double>, double,
                                          double, double);

    RegressionFit() = default;

    double predict_unclamped(double x) const;
    double local_average(double x) const;
    double nearest_response(double x) const;

    RegressorKind method_ = RegressorKind::BoxKernel;
    Kernel kernel_ = Kernel::Box;
    double bandwidth_ = 1.0;
    double lambda_ = 0.0;
    double bound_ = 0.0;
    // Box and Nadaraya-Watson keep training pairs sorted by covariate (stable);
    // kernel ridge keeps them in input order alongside the dual weights.
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> dual_;
};

/// Local mean over the open window (x-h, x+h). An empty window falls back to
/// the nearest training covariate (ties toward the smaller one); repeated
/// covariate values contribute the mean of their responses.
RegressionFit fit_box_kernel(std::span<const double> covariate, std::span<const double> response,
                             double h, double bound);

RegressionFit fit_nadaraya_watson(std::span<const double> covariate, std::span<const double> response,
                                  Kernel kernel, double h, double bound);

/// Solves (K + lambda I) alpha = y with the squared-exponential kernel
/// k(a, b) = exp(-(a-b)^2 / (2 l^2)). Throws SingularSystem when the
/// factorization fails even after a 1e-10 diagonal jitter.
RegressionFit fit_kernel_ridge(std::span<const double> covariate, std::span<const double> response,
                               double length_scale, double lambda, double bound);

RegressionFit fit_regressor(const RegressorSpec& spec, std::span<const double> covariate,
                            std::span<const double> response, double bandwidth, double bound);

/// 3 x max |response|.
double auto_truncation_bound(std::span<const double> response);

/// Grid value minimizing k-fold mean squared prediction error. Folds are
/// contiguous blocks of a seeded permutation; ties go to the larger bandwidth.
/// A non-positive bound uses the automatic bound of each training fold.
double select_bandwidth_cv(std::span<const double> covariate, std::span<const double> response,
                           const RegressorSpec& spec, int folds, std::span<const double> grid,
                           std::uint64_t seed, double bound = 0.0);

enum class ResidualKind { Forward, Backward };

struct ResidualSeries {
    std::vector<double> values;
    ResidualKind kind = ResidualKind::Forward;
};

ResidualSeries residuals(const RegressionFit& fit, std::span<const double> eval_covariate,
                         std::span<const double> eval_response,
                         ResidualKind kind = ResidualKind::Forward);

/// (1/n) sum |fit(x_i) - truth(x_i)| over the given covariates.
double average_excess_risk(const RegressionFit& fit, const std::function<double(double)>& truth,
                           std::span<const double> sample_covariate);

} // namespace anm

#endif
