#include "anm/infer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anm/entropy.hpp"
#include "anm/errors.hpp"
#include "anm/regress.hpp"
#include "anm/seed.hpp"
#include "anm/stats.hpp"

namespace anm {

SplitPlan make_split(std::size_t n, EstimationMode mode, std::uint64_t seed)
{
    if (n == 0)
        throw EmptySample();
    SplitPlan plan;
    plan.marginal_indices.resize(n);
    std::iota(plan.marginal_indices.begin(), plan.marginal_indices.end(), std::size_t{0});
    if (mode == EstimationMode::Coupled) {
        plan.fit_indices = plan.marginal_indices;
        plan.entropy_indices = plan.marginal_indices;
        return plan;
    }
    if (n < 4)
        throw SampleTooSmall("decoupled estimation needs at least 4 points");

    auto perm = plan.marginal_indices;
    Rng rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t half = (n + 1) / 2;
    plan.fit_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(half));
    plan.entropy_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(half), perm.end());
    std::sort(plan.fit_indices.begin(), plan.fit_indices.end());
    std::sort(plan.entropy_indices.begin(), plan.entropy_indices.end());
    return plan;
}

Direction decide(double c_xy, double c_yx, double tau)
{
    if (tau == 0.0 && c_xy == c_yx)
        return Direction::Abstain;
    if (c_xy + tau <= c_yx)
        return Direction::XtoY;
    if (c_yx + tau <= c_xy)
        return Direction::YtoX;
    return Direction::Abstain;
}

std::uint64_t split_seed(std::uint64_t config_seed)
{
    return derive_seed(config_seed >> 1, stream::split);
}

namespace {

std::vector<double> gather(const std::vector<double>& v, const std::vector<std::size_t>& idx)
{
    std::vector<double> out;
    out.reserve(idx.size());
    for (auto i : idx)
        out.push_back(v[i]);
    return out;
}

struct ResidualEntropy {
    double entropy = 0.0;
    double bandwidth = 0.0;
    double sigma = 0.0;
};

double resolve_regression_bandwidth(const InferenceConfig& config, const RegressorSpec& regressor,
                                    const std::vector<double>& covariate, const std::vector<double>& response,
                                    double bound, std::uint64_t seed)
{
    const auto& spec = config.regression_bandwidth;
    const double scale = spec.relative ? sample_sd(covariate) : 1.0;
    switch (spec.kind) {
    case BandwidthSpec::Kind::Fixed:
        return spec.value * scale;
    case BandwidthSpec::Kind::TheorySchedule:
        return spec.value * std::pow(static_cast<double>(covariate.size()), -spec.exponent) * scale;
    case BandwidthSpec::Kind::CrossValidation: {
        std::vector<double> grid(spec.grid);
        for (double& g : grid)
            g *= scale;
        return select_bandwidth_cv(covariate, response, regressor, spec.folds, grid,
                                   derive_seed(seed, stream::cv_folds), bound);
    }
    case BandwidthSpec::Kind::LooLikelihood:
        break;
    }
    throw ConfigError("regression bandwidth cannot use log-likelihood tuning");
}

/// Regress `response` on `covariate` over the fit indices and estimate the
/// entropy of the residuals over the entropy indices.
ResidualEntropy residual_pipeline(const std::vector<double>& covariate, const std::vector<double>& response,
                                  const SplitPlan& plan, const InferenceConfig& config, std::uint64_t seed,
                                  ResidualKind kind)
{
    const RegressorSpec regressor{config.regressor, config.regression_kernel, config.ridge_lambda};
    const auto fit_x = gather(covariate, plan.fit_indices);
    const auto fit_y = gather(response, plan.fit_indices);
    if (sample_sd(fit_x) == 0.0)
        throw DegenerateSample("covariate is constant on the regression sample");

    const double bound = config.auto_truncation() ? auto_truncation_bound(fit_y) : config.truncation_bound;
    const double h = resolve_regression_bandwidth(config, regressor, fit_x, fit_y,
                                                  config.auto_truncation() ? 0.0 : bound, seed);
    const auto fit = fit_regressor(regressor, fit_x, fit_y, h, bound);

    const auto eval_x = gather(covariate, plan.entropy_indices);
    const auto eval_y = gather(response, plan.entropy_indices);
    const auto res = residuals(fit, eval_x, eval_y, kind);
    const auto est = estimate_entropy(res.values, config.entropy_bandwidth, config.entropy_kernel);
    return {est.value, h, est.sigma_used};
}

void check_schedules(const InferenceConfig& config, std::size_t n)
{
    const auto& reg = config.regression_bandwidth;
    const auto& ent = config.entropy_bandwidth;
    if (reg.kind == BandwidthSpec::Kind::TheorySchedule && ent.kind == BandwidthSpec::Kind::TheorySchedule)
        theory_bandwidths(n, reg.value, reg.exponent, ent.value, ent.exponent);
}

} // namespace

DirectionScore score_direction(const PairedSample& sample, const InferenceConfig& config)
{
    DirectionScore score;
    score.warnings = config.validate();
    const std::size_t n = sample.size();
    if (n < 8)
        throw SampleTooSmall("scoring needs at least 8 observations");
    check_schedules(config, n);

    const auto plan = make_split(n, config.mode, split_seed(config.seed));
    const auto& xs = sample.xs();
    const auto& ys = sample.ys();

    const auto fwd = residual_pipeline(xs, ys, plan, config, config.seed, ResidualKind::Forward);
    const auto bwd = residual_pipeline(ys, xs, plan, config, config.seed ^ 1ULL, ResidualKind::Backward);
    const auto hx = estimate_entropy(gather(xs, plan.marginal_indices), config.entropy_bandwidth,
                                     config.entropy_kernel);
    const auto hy = estimate_entropy(gather(ys, plan.marginal_indices), config.entropy_bandwidth,
                                     config.entropy_kernel);

    score.n = n;
    score.h_x = hx.value;
    score.h_y = hy.value;
    score.h_res_fwd = fwd.entropy;
    score.h_res_bwd = bwd.entropy;
    score.c_xy = score.h_x + score.h_res_fwd;
    score.c_yx = score.h_y + score.h_res_bwd;
    score.gap = score.c_yx - score.c_xy;
    score.tau = compute_tau(n, config.tau0, config.tau_exponent);
    score.decision = decide(score.c_xy, score.c_yx, score.tau);
    score.h_fwd = fwd.bandwidth;
    score.h_bwd = bwd.bandwidth;
    score.sigma_res_fwd = fwd.sigma;
    score.sigma_res_bwd = bwd.sigma;
    score.sigma_x = hx.sigma_used;
    score.sigma_y = hy.sigma_used;
    return score;
}

} // namespace anm
