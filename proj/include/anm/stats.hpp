#ifndef ANM_STATS_HPP
#define ANM_STATS_HPP

#include <span>

namespace anm {

double mean(std::span<const double> v);
/// Standard deviation with the n-1 denominator; 0 for fewer than two values.
double sample_sd(std::span<const double> v);
double skewness(std::span<const double> v);
double correlation(std::span<const double> a, std::span<const double> b);

} // namespace anm

#endif
