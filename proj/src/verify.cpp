#include "anm/verify.hpp"

#include <cmath>
#include <numbers>

#include "anm/entropy.hpp"
#include "anm/oracle.hpp"
#include "anm/seed.hpp"
#include "anm/synth.hpp"

namespace anm {

namespace {

VerifyCheck check(std::string name, double observed, double expected, double tolerance)
{
    VerifyCheck c{std::move(name), observed, expected, tolerance, false};
    c.passed = std::abs(observed - expected) <= tolerance;
    return c;
}

/// Trapezoid mass of a KDE over its whole support.
double kde_mass(const DensityEstimate& kde)
{
    const double reach = kde.sigma() * support_radius(kde.kernel());
    const double lo = kde.centers().front() - reach;
    const double hi = kde.centers().back() + reach;
    const std::size_t points = 200001;
    const double dx = (hi - lo) / static_cast<double>(points - 1);
    double s = 0.5 * (kde(lo) + kde(hi));
    for (std::size_t i = 1; i + 1 < points; ++i)
        s += kde(lo + dx * static_cast<double>(i));
    return s * dx;
}

} // namespace

std::vector<VerifyCheck> verify_identity(std::uint64_t seed)
{
    std::vector<VerifyCheck> out;
    const double ln_2pie = std::log(2.0 * std::numbers::pi * std::numbers::e);

    for (const auto& [a, s] : {std::pair{1.0, 1.0}, std::pair{0.0, 1.0}, std::pair{2.5, 0.3}}) {
        const auto c = oracle::lemma1_check_linear_gaussian(a, s);
        out.push_back(check("closed-form sides a=" + std::to_string(a) + " s=" + std::to_string(s), c.left - c.right,
                            0.0, 1e-12));
    }
    out.push_back(check("closed-form left side a=1 s=1", oracle::lemma1_check_linear_gaussian(1.0, 1.0).left, ln_2pie,
                        1e-12));

    const std::size_t n_mc = 100000;
    {
        const auto c = oracle::lemma1_check_numeric(cubic_generator(1.0, 1.0), n_mc, seed);
        out.push_back(check("numeric cubic b=1 q=1 discrepancy", c.discrepancy, 0.0, 0.05));
    }
    {
        const auto c = oracle::lemma1_check_numeric(linear_gaussian_generator(1.0, 1.0), n_mc, seed);
        out.push_back(check("numeric linear-gaussian a=1 s=1 discrepancy", c.discrepancy, 0.0, 0.02));
    }
    {
        // b = 0 collapses the cubic mechanism to f(x) = x.
        const AnmSpec spec{CovariateDist::gaussian(1.0), MechanismSpec::cubic(0.0), NoiseSpec::powered_gaussian(1.0)};
        const auto c = oracle::lemma1_check_numeric(spec, n_mc, seed);
        const auto closed = oracle::lemma1_check_linear_gaussian(1.0, 1.0);
        out.push_back(check("numeric cubic b=0 left vs closed form", c.left, closed.left, 0.02));
        out.push_back(check("numeric cubic b=0 right vs closed form", c.right, closed.right, 0.02));
    }
    return out;
}

std::vector<VerifyCheck> verify_entropy(std::uint64_t seed)
{
    using oracle::AnalyticDist;
    std::vector<VerifyCheck> out;

    const std::pair<const char*, AnalyticDist> dists[] = {
        {"gaussian sd=1", AnalyticDist::gaussian(1.0)},
        {"uniform(-2.5,2.5)", AnalyticDist::uniform(-2.5, 2.5)},
        {"laplace scale=1", AnalyticDist::laplace(1.0)},
    };
    for (const auto& [name, d] : dists) {
        const auto [lo, hi] = d.support();
        const auto e = oracle::numeric_entropy([&](double t) { return d.density(t); }, lo, hi, 90001);
        out.push_back(check(std::string("quadrature entropy ") + name, e.value, oracle::analytic_entropy(d), 1e-5));
    }

    const auto normals = sample_noise(NoiseSpec::gaussian(1.0), 500, derive_seed(seed, 11));
    out.push_back(check("biweight KDE mass", kde_mass(DensityEstimate(normals, 0.3, Kernel::Biweight)), 1.0, 1e-6));
    out.push_back(
        check("epanechnikov KDE mass", kde_mass(DensityEstimate(normals, 0.3, Kernel::Epanechnikov)), 1.0, 1e-6));
    out.push_back(check("gaussian KDE mass", kde_mass(DensityEstimate(normals, 0.3, Kernel::Gaussian)), 1.0, 1e-4));

    const std::size_t n = 10000;
    const auto loo = BandwidthSpec::loo(default_entropy_grid(), true);
    const std::pair<const char*, std::vector<double>> samples[] = {
        {"uniform(-2.5,2.5)", sample_covariate(CovariateDist::uniform(-2.5, 2.5), n, derive_seed(seed, 21))},
        {"gaussian sd=1", sample_noise(NoiseSpec::gaussian(1.0), n, derive_seed(seed, 22))},
        {"laplace scale=1", sample_noise(NoiseSpec::laplace(1.0), n, derive_seed(seed, 23))},
    };
    const double truth[] = {std::log(5.0), oracle::analytic_entropy(AnalyticDist::gaussian(1.0)),
                            oracle::analytic_entropy(AnalyticDist::laplace(1.0))};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto e = estimate_entropy(samples[i].second, loo, Kernel::Biweight);
        out.push_back(check(std::string("resubstitution n=10000 ") + samples[i].first, e.value, truth[i], 0.05));
    }
    return out;
}

} // namespace anm
