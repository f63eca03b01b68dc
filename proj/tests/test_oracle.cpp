#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anm/errors.hpp"
#include "anm/oracle.hpp"
#include "anm/synth.hpp"

using namespace anm;
using namespace anm::oracle;

TEST_CASE("closed-form entropies")
{
    CHECK(analytic_entropy(AnalyticDist::uniform(-2.5, 2.5)) == doctest::Approx(1.6094379124341003));
    CHECK(analytic_entropy(AnalyticDist::gaussian(1.0)) == doctest::Approx(1.4189385332046727));
    CHECK(analytic_entropy(AnalyticDist::laplace(1.0)) == doctest::Approx(1.6931471805599454));
    CHECK(analytic_entropy(AnalyticDist::gaussian(3.0)) ==
          doctest::Approx(1.4189385332046727 + std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("quadrature entropy")
{
    const auto u = numeric_entropy([](double) { return 0.2; }, -2.5, 2.5, 10000);
    CHECK(std::abs(u.value - std::log(5.0)) < 1e-6);
    CHECK(u.normalized);

    const auto g = AnalyticDist::gaussian(1.0);
    const auto e = numeric_entropy([&](double t) { return g.density(t); }, -8, 8, 10000);
    CHECK(std::abs(e.value - analytic_entropy(g)) < 1e-6);

    const auto zero = numeric_entropy([](double) { return 0.0; }, -1, 1, 100);
    CHECK(zero.value == 0.0);
    CHECK_FALSE(zero.normalized);

    for (const auto& d : {AnalyticDist::gaussian(0.5), AnalyticDist::uniform(0, 3), AnalyticDist::laplace(2.0)}) {
        const auto [lo, hi] = d.support();
        const auto n = numeric_entropy([&](double t) { return d.density(t); }, lo, hi, 90001);
        CHECK(std::abs(n.value - analytic_entropy(d)) < 1e-5);
    }
}

TEST_CASE("closed-form identity sides agree")
{
    const double two = std::log(2 * std::numbers::pi * std::numbers::e);
    const auto c = lemma1_check_linear_gaussian(1.0, 1.0);
    CHECK(std::abs(c.left - two) < 1e-12);
    CHECK(std::abs(c.right - two) < 1e-12);

    const auto ind = lemma1_check_linear_gaussian(0.0, 1.0);
    CHECK(std::abs(ind.left - two) < 1e-12);
    CHECK(std::abs(ind.right - two) < 1e-12);

    for (double a : {-3.0, -0.2, 0.5, 4.0})
        for (double s : {0.1, 1.0, 7.5}) {
            const auto k = lemma1_check_linear_gaussian(a, s);
            CHECK(std::abs(k.left - k.right) < 1e-12);
            CHECK(k.mi_fwd == 0.0);
            CHECK(k.mi_bwd == 0.0);
        }
}

TEST_CASE("histogram mutual information")
{
    const auto a = sample_noise(NoiseSpec::gaussian(1.0), 100000, 1);
    const auto b = sample_noise(NoiseSpec::gaussian(1.0), 100000, 2);
    CHECK(histogram_mutual_information(a, b, 47) < 0.02);
    // Correlated Gaussians: I = -0.5 ln(1 - rho^2).
    std::vector<double> c;
    for (std::size_t i = 0; i < a.size(); ++i)
        c.push_back(0.8 * a[i] + 0.6 * b[i]);
    CHECK(std::abs(histogram_mutual_information(a, c, 47) + 0.5 * std::log(1 - 0.64)) < 0.05);
}

TEST_CASE("numeric identity checks")
{
    const auto lin = lemma1_check_numeric(linear_gaussian_generator(1.0, 1.0), 100000, 1);
    CHECK(lin.discrepancy < 0.02);

    const auto cubic = lemma1_check_numeric(cubic_generator(1.0, 1.0), 100000, 1);
    CHECK(cubic.discrepancy < 0.05);
    CHECK(std::abs(cubic.h_x - std::log(5.0)) < 1e-6);
    CHECK(std::abs(cubic.h_res_fwd - 0.5 * std::log(2 * std::numbers::pi * std::numbers::e)) < 1e-5);

    const AnmSpec b0{CovariateDist::gaussian(1.0), MechanismSpec::cubic(0.0), NoiseSpec::powered_gaussian(1.0)};
    const auto deg = lemma1_check_numeric(b0, 100000, 1);
    const auto closed = lemma1_check_linear_gaussian(1.0, 1.0);
    CHECK(std::abs(deg.left - closed.left) < 0.02);
    CHECK(std::abs(deg.right - closed.right) < 0.02);

    const auto again = lemma1_check_numeric(cubic_generator(1.0, 1.0), 100000, 1);
    CHECK(again.discrepancy == cubic.discrepancy);
    CHECK_THROWS_AS(lemma1_check_numeric(cubic_generator(1.0, 1.0), 10, 1), SampleTooSmall);
}
