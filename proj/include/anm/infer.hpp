#ifndef ANM_INFER_HPP
#define ANM_INFER_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anm/model.hpp"

namespace anm {

/// Which observations feed each estimation stage.
struct SplitPlan {
    std::vector<std::size_t> fit_indices;
    std::vector<std::size_t> entropy_indices;
    std::vector<std::size_t> marginal_indices;
};

/// Coupled: every stage sees all n points. Decoupled: a seeded permutation
/// sends ceil(n/2) points to the regressions and floor(n/2) to the residual
/// entropies; marginals always use the full sample. Decoupled needs n >= 4.
SplitPlan make_split(std::size_t n, EstimationMode mode, std::uint64_t seed);

/// XtoY iff c_xy + tau <= c_yx, YtoX iff c_yx + tau <= c_xy, else Abstain.
/// An exact tie with tau = 0 abstains.
Direction decide(double c_xy, double c_yx, double tau);

/// Seed of the split permutation. It ignores the lowest bit of the config
/// seed, which only selects between the forward and backward streams.
std::uint64_t split_seed(std::uint64_t config_seed);

/// Fits both directions, estimates the four entropies and applies the
/// thresholded decision. Deterministic in (sample, config).
///
/// The forward pipeline (y on x) is driven by config.seed and the backward one
/// by config.seed ^ 1, so scoring sample.swapped() with seed ^ 1 mirrors the
/// computation and negates the gap exactly.
DirectionScore score_direction(const PairedSample& sample, const InferenceConfig& config);

} // namespace anm

#endif
