#ifndef ANM_ENTROPY_HPP
#define ANM_ENTROPY_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anm/kernel.hpp"
#include "anm/model.hpp"

namespace anm {

/// Kernel density estimate p(t) = 1/(n sigma) sum_i K((c_i - t) / sigma).
///
/// The normalization uses the density bandwidth sigma, so the estimate
/// integrates to one.
class DensityEstimate {
public:
    DensityEstimate(std::vector<double> centers, double sigma, Kernel kernel);

    double operator()(double t) const;

    const std::vector<double>& centers() const noexcept { return centers_; }
    double sigma() const noexcept { return sigma_; }
    Kernel kernel() const noexcept { return kernel_; }

private:
    std::vector<double> centers_;   // sorted
    double sigma_;
    Kernel kernel_;
};

double kde_eval(const DensityEstimate& estimate, double t);

struct EntropyEstimate {
    double value = 0.0;   // nats
    double sigma_used = 0.0;
    std::size_t n = 0;
    std::string method = "resubstitution";
};

/// -(1/n) sum_i ln p_n(v_i), with p_n built on the same values.
/// Throws DegenerateSample when all values coincide.
EntropyEstimate resubstitution_entropy(std::span<const double> values, double sigma, Kernel kernel);

/// Leave-one-out log-likelihood sum_i ln p_{n,-i}(v_i); -inf when some point
/// gets zero density from the others.
double loo_log_likelihood(std::span<const double> values, double sigma, Kernel kernel);

/// Grid sigma maximizing the leave-one-out log-likelihood, ties toward the
/// larger value. When every candidate scores -inf the largest is returned.
double tune_sigma_loo(std::span<const double> values, Kernel kernel, std::span<const double> grid);

/// Upper end of the admissible open interval (0, min{(1-alpha)/4, alpha/2})
/// for the density-bandwidth exponent.
double max_sigma_exponent(double alpha);

/// (c1 n^-alpha, c2 n^-beta) after checking the exponents against the
/// consistency schedule. Throws ScheduleViolation otherwise.
std::pair<double, double> theory_bandwidths(std::size_t n, double c1, double alpha, double c2, double beta);

/// Resolves `spec` against `values` and returns the resubstitution estimate.
/// Relative specs scale by the sample standard deviation.
EntropyEstimate estimate_entropy(std::span<const double> values, const BandwidthSpec& spec, Kernel kernel);

} // namespace anm

#endif
