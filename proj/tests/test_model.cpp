#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "anm/errors.hpp"
#include "anm/infer.hpp"
#include "anm/model.hpp"

using namespace anm;

TEST_CASE("validate_sample keeps order")
{
    const std::vector<std::pair<double, double>> raw{{0, 1}, {1, 2}};
    const auto s = validate_sample(raw);
    CHECK(s.size() == 2);
    CHECK(s.xs() == std::vector<double>{0, 1});
    CHECK(s.ys() == std::vector<double>{1, 2});
}

TEST_CASE("validate_sample rejects bad input")
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::vector<std::pair<double, double>> bad{{0, nan}};
    try {
        validate_sample(bad);
        FAIL("expected NonFiniteValue");
    } catch (const NonFiniteValue& e) {
        CHECK(e.row() == 0);
    }
    CHECK_THROWS_AS(validate_sample(std::span<const std::pair<double, double>>{}), EmptySample);
    CHECK_THROWS_AS(validate_sample({1.0, 2.0}, {1.0}), LengthMismatch);

    const std::vector<std::pair<double, double>> inf_late{{0, 0}, {1, 1}, {std::numeric_limits<double>::infinity(), 2}};
    try {
        validate_sample(inf_late);
        FAIL("expected NonFiniteValue");
    } catch (const NonFiniteValue& e) {
        CHECK(e.row() == 2);
    }
}

TEST_CASE("validation outcome ignores row order")
{
    std::mt19937_64 rng(7);
    std::vector<std::pair<double, double>> raw{{0, 1}, {2, 3}, {4, std::nan("")}, {5, 6}};
    for (int i = 0; i < 10; ++i) {
        std::shuffle(raw.begin(), raw.end(), rng);
        CHECK_THROWS_AS(validate_sample(raw), NonFiniteValue);
    }
    raw[0].second = raw[1].second = raw[2].second = raw[3].second = 1.0;
    for (int i = 0; i < 10; ++i) {
        std::shuffle(raw.begin(), raw.end(), rng);
        CHECK(validate_sample(raw).size() == 4);
    }
}

TEST_CASE("compute_tau")
{
    CHECK(compute_tau(100, 0.0, 0.25) == 0.0);
    CHECK(compute_tau(1, 0.5, 0.25) == 0.5);
    CHECK(compute_tau(10000, 1.0, 0.25) == doctest::Approx(0.1).epsilon(1e-15));
    double prev = compute_tau(1, 0.5, 0.25);
    for (std::size_t n = 2; n < 5000; n = n * 3 / 2 + 1) {
        const double t = compute_tau(n, 0.5, 0.25);
        CHECK(t < prev);
        CHECK(t > 0.0);
        prev = t;
    }
    CHECK(compute_tau(std::size_t{1} << 60, 0.5, 0.25) < 1e-4);
}

TEST_CASE("decide follows the thresholded rule")
{
    CHECK(decide(1.0, 2.0, 0.0) == Direction::XtoY);
    CHECK(decide(2.0, 1.0, 0.0) == Direction::YtoX);
    CHECK(decide(1.0, 1.0, 0.0) == Direction::Abstain);
    CHECK(decide(1.0, 1.5, 0.5) == Direction::XtoY);
    CHECK(decide(1.0, 1.4, 0.5) == Direction::Abstain);
    CHECK(decide(1.6, 1.0, 0.5) == Direction::YtoX);
}

TEST_CASE("enlarging tau never turns Abstain into a decision")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = u(rng), b = u(rng), t = std::abs(u(rng));
        if (decide(a, b, t) == Direction::Abstain)
            CHECK(decide(a, b, t + std::abs(u(rng))) == Direction::Abstain);
    }
}

TEST_CASE("direction and mode names")
{
    CHECK(direction_name(Direction::XtoY) == "XtoY");
    CHECK(direction_name(Direction::YtoX) == "YtoX");
    CHECK(direction_name(Direction::Abstain) == "Abstain");
    CHECK(mode_name(EstimationMode::Coupled) == "coupled");
    CHECK(mode_name(EstimationMode::Decoupled) == "decoupled");
}

TEST_CASE("bandwidth spec validation")
{
    CHECK_NOTHROW(BandwidthSpec::fixed(0.3).validate());
    CHECK_THROWS_AS(BandwidthSpec::fixed(0.0).validate(), ConfigError);
    CHECK_THROWS_AS(BandwidthSpec::theory(1.0, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(BandwidthSpec::theory(-1.0, 0.5).validate(), ConfigError);
    CHECK_THROWS_AS(BandwidthSpec::cross_validation(1, {0.1}, false).validate(), ConfigError);
    CHECK_THROWS_AS(BandwidthSpec::loo({}, false).validate(), ConfigError);
    CHECK_THROWS_AS(BandwidthSpec::loo({0.2, 0.1}, false).validate(), ConfigError);
    CHECK_THROWS_AS(BandwidthSpec::loo({0.1, 0.1}, false).validate(), ConfigError);
    CHECK_THROWS_AS(BandwidthSpec::loo({-0.1, 0.1}, false).validate(), ConfigError);
}

TEST_CASE("geometric grid")
{
    const auto g = geometric_grid(0.01, 1.0, 3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(0.01));
    CHECK(g[1] == doctest::Approx(0.1));
    CHECK(g[2] == doctest::Approx(1.0));
    CHECK(default_regression_grid().size() == 20);
    CHECK(default_entropy_grid().size() == 30);
}

TEST_CASE("config validation and warnings")
{
    InferenceConfig c;
    CHECK(c.validate().empty());
    c.entropy_kernel = Kernel::Gaussian;
    CHECK(c.validate().size() == 1);
    c.mode = EstimationMode::Decoupled;
    CHECK(c.validate().empty());

    InferenceConfig bad;
    bad.regression_bandwidth = BandwidthSpec::loo({0.1}, false);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = InferenceConfig{};
    bad.entropy_bandwidth = BandwidthSpec::cross_validation(5, {0.1}, false);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = InferenceConfig{};
    bad.entropy_kernel = Kernel::Box;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = InferenceConfig{};
    bad.tau0 = -1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = InferenceConfig{};
    bad.tau_exponent = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.tau_exponent = 1.0;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("key=value parsing")
{
    const auto kv = parse_key_values("# comment\n mode = decoupled \n\nseed=5\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv[0].first == "mode");
    CHECK(kv[0].second == "decoupled");
    try {
        parse_key_values("seed=1\nnot a pair\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("bandwidth grammar")
{
    auto b = parse_bandwidth("fixed:0.5");
    CHECK(b.kind == BandwidthSpec::Kind::Fixed);
    CHECK(b.value == 0.5);
    CHECK_FALSE(b.relative);
    b = parse_bandwidth("fixed:0.5*sd");
    CHECK(b.relative);
    b = parse_bandwidth("theory:1.5:0.3");
    CHECK(b.kind == BandwidthSpec::Kind::TheorySchedule);
    CHECK(b.value == 1.5);
    CHECK(b.exponent == 0.3);
    b = parse_bandwidth("cv:3:0.1,0.2,0.4");
    CHECK(b.kind == BandwidthSpec::Kind::CrossValidation);
    CHECK(b.folds == 3);
    CHECK(b.grid == std::vector<double>{0.1, 0.2, 0.4});
    b = parse_bandwidth("loo");
    CHECK(b.kind == BandwidthSpec::Kind::LooLikelihood);
    CHECK(b.relative);
    CHECK(b.grid == default_entropy_grid());
    CHECK_THROWS_AS(parse_bandwidth("silverman"), ConfigError);
    CHECK_THROWS_AS(parse_bandwidth("cv:x"), ConfigError);

    for (const char* text : {"fixed:0.25", "fixed:2*sd", "theory:1:0.2", "cv:4:0.1,0.3*sd", "loo:0.5,1,2"}) {
        const auto spec = parse_bandwidth(text);
        const auto again = parse_bandwidth(format_bandwidth(spec));
        CHECK(again.kind == spec.kind);
        CHECK(again.value == spec.value);
        CHECK(again.grid == spec.grid);
        CHECK(again.relative == spec.relative);
    }
}

TEST_CASE("config files use exactly the documented keys")
{
    const auto c = parse_config(parse_key_values("mode=decoupled\nregressor=krr:0.5\nregression_bandwidth=fixed:0.2\n"
                                                 "entropy_bandwidth=loo:0.1,0.2\nentropy_kernel=epanechnikov\n"
                                                 "truncation_bound=7\ntau0=0.3\ntau_exponent=0.5\nseed=42\n"));
    CHECK(c.mode == EstimationMode::Decoupled);
    CHECK(c.regressor == RegressorKind::KernelRidge);
    CHECK(c.ridge_lambda == 0.5);
    CHECK(c.regression_bandwidth.value == 0.2);
    CHECK(c.entropy_kernel == Kernel::Epanechnikov);
    CHECK(c.truncation_bound == 7.0);
    CHECK(c.tau0 == 0.3);
    CHECK(c.tau_exponent == 0.5);
    CHECK(c.seed == 42);

    const auto round = parse_config(parse_key_values(format_config(c)));
    CHECK(format_config(round) == format_config(c));

    CHECK_THROWS_AS(parse_config(parse_key_values("colour=blue\n")), ConfigError);
    CHECK_THROWS_AS(parse_config(parse_key_values("mode=sideways\n")), ConfigError);
    CHECK_THROWS_AS(parse_config(parse_key_values("truncation_bound=-1\n")), ConfigError);
    CHECK(parse_config(parse_key_values("truncation_bound=auto\n")).auto_truncation());
    CHECK(parse_config(parse_key_values("regressor=nw:gaussian\n")).regression_kernel == Kernel::Gaussian);
}

TEST_CASE("cli defaults")
{
    const auto c = cli_default_config();
    CHECK(c.tau0 == 0.5);
    CHECK(c.tau_exponent == 0.25);
    CHECK(InferenceConfig{}.tau0 == 0.0);
}
