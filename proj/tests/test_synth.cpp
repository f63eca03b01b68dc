#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "anm/errors.hpp"
#include "anm/seed.hpp"
#include "anm/stats.hpp"
#include "anm/synth.hpp"

using namespace anm;

namespace {

// E|N|^(2q) for a standard normal N, by trapezoid quadrature.
double even_moment(double q)
{
    const std::size_t points = 200001;
    const double lo = -12.0, hi = 12.0, dx = (hi - lo) / static_cast<double>(points - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double z = lo + dx * static_cast<double>(i);
        const double w = (i == 0 || i + 1 == points) ? 0.5 : 1.0;
        s += w * std::pow(std::abs(z), 2 * q) * std::exp(-0.5 * z * z);
    }
    return s * dx / std::sqrt(2 * std::numbers::pi);
}

} // namespace

TEST_CASE("powered gaussian noise")
{
    const auto q1 = sample_noise(NoiseSpec::powered_gaussian(1.0), 100000, 1);
    CHECK(std::abs(mean(q1)) < 0.02);

    const double target = even_moment(2.0);
    CHECK(target == doctest::Approx(3.0).epsilon(1e-9));
    const auto q2 = sample_noise(NoiseSpec::powered_gaussian(2.0), 100000, 2);
    CHECK(std::abs(sample_sd(q2) * sample_sd(q2) / target - 1.0) < 0.05);

    for (double q : {0.5, 1.0, 1.5, 2.0}) {
        const auto v = sample_noise(NoiseSpec::powered_gaussian(q), 100000, 3);
        CHECK(std::abs(skewness(v)) < 0.05);
    }
}

TEST_CASE("powered noise is a signed power of the unit draw")
{
    const auto base = sample_noise(NoiseSpec::powered_gaussian(1.0), 1000, 4);
    for (double q : {0.5, 1.5, 3.0}) {
        const auto v = sample_noise(NoiseSpec::powered_gaussian(q), 1000, 4);
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK(std::signbit(v[i]) == std::signbit(base[i]));
            CHECK(std::abs(v[i]) == doctest::Approx(std::pow(std::abs(base[i]), q)).epsilon(1e-12));
        }
    }
}

TEST_CASE("uniform covariate matches its law")
{
    auto v = sample_covariate(CovariateDist::uniform(-2.5, 2.5), 10000, 5);
    std::sort(v.begin(), v.end());
    CHECK(v.front() >= -2.5);
    CHECK(v.back() < 2.5);
    double ks = 0.0;
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double cdf = (v[i] + 2.5) / 5.0;
        ks = std::max({ks, std::abs(cdf - i / n), std::abs(cdf - (i + 1) / n)});
    }
    CHECK(ks < 0.02);
}

TEST_CASE("generated noise is independent of the covariate")
{
    const auto s = sample_anm(cubic_generator(1.0, 1.0), 100000, 6);
    std::vector<double> noise;
    for (std::size_t i = 0; i < s.size(); ++i)
        noise.push_back(s.ys()[i] - (s.xs()[i] * s.xs()[i] * s.xs()[i] + s.xs()[i]));
    CHECK(std::abs(correlation(s.xs(), noise)) < 0.01);
}

TEST_CASE("b = 0 with vanishing noise is the identity")
{
    const AnmSpec spec{CovariateDist::uniform(-2.5, 2.5), MechanismSpec::cubic(0.0), NoiseSpec::gaussian(1e-9)};
    const auto s = sample_anm(spec, 1000, 7);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::abs(s.ys()[i] - s.xs()[i]) < 1e-7);
}

TEST_CASE("the cubic generator follows the simulation protocol")
{
    const auto spec = cubic_generator(0.7, 1.3);
    CHECK(spec.x_dist.kind == CovariateDist::Kind::Uniform);
    CHECK(spec.x_dist.lo == -2.5);
    CHECK(spec.x_dist.hi == 2.5);
    CHECK(spec.f.kind == MechanismSpec::Kind::Cubic);
    CHECK(spec.f.coef == 0.7);
    CHECK(spec.noise.kind == NoiseSpec::Kind::PoweredGaussian);
    CHECK(spec.noise.param == 1.3);
    CHECK(spec.f(2.0) == doctest::Approx(0.7 * 8 + 2));
}

TEST_CASE("sampling is deterministic per seed")
{
    const auto a = sample_anm(cubic_generator(1.0, 1.0), 500, 8);
    const auto b = sample_anm(cubic_generator(1.0, 1.0), 500, 8);
    const auto c = sample_anm(cubic_generator(1.0, 1.0), 500, 9);
    CHECK(a.xs() == b.xs());
    CHECK(a.ys() == b.ys());
    CHECK(a.xs() != c.xs());
    CHECK(derive_seed(1, stream::noise) != derive_seed(1, stream::covariate));
    CHECK(derive_seed(1, stream::noise) == derive_seed(1, stream::noise));
}

TEST_CASE("generator specs parse")
{
    const auto g = parse_generator(parse_key_values("x_dist=gaussian:2\nf=linear:0.5\nnoise=laplace:1\n"));
    CHECK(g.x_dist.kind == CovariateDist::Kind::Gaussian);
    CHECK(g.x_dist.sd == 2.0);
    CHECK(g.f(4.0) == 2.0);
    CHECK(g.noise.kind == NoiseSpec::Kind::Laplace);

    const auto t = parse_generator(parse_key_values("x_dist=uniform:0,1\nf=table:0:0,1:2\nnoise=student:3\n"));
    CHECK(t.f(0.5) == doctest::Approx(1.0));
    CHECK(t.f(-1.0) == 0.0);
    CHECK(t.f(3.0) == 2.0);
    CHECK_THROWS_AS(parse_generator(parse_key_values("x_dist=cauchy:1\n")), ConfigError);
    CHECK_THROWS_AS(parse_generator(parse_key_values("f=cubic:1\nflavour=mint\n")), ConfigError);
}

TEST_CASE("tail diagnostics")
{
    const auto fr = default_tail_fractions();
    const auto t3 = sample_noise(NoiseSpec::student_t(3.0), 100000, 10);
    const auto d = tail_diagnostic(t3, fr);
    CHECK(d.exponent >= 2.5);
    CHECK(d.exponent <= 3.5);
    CHECK_FALSE(d.exponential_tail);
    CHECK(d.hill_estimates.size() == fr.size());

    const auto g = sample_noise(NoiseSpec::gaussian(1.0), 100000, 11);
    CHECK(tail_diagnostic(g, fr).exponential_tail);

    const std::vector<double> flat(2000, 1.5);
    CHECK(std::isinf(tail_diagnostic(flat, fr).exponent));

    const std::vector<double> few(999, 1.0);
    CHECK_THROWS_AS(tail_diagnostic(few, fr), SampleTooSmall);
}
