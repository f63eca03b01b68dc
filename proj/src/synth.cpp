#include "anm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "anm/errors.hpp"
#include "anm/seed.hpp"
#include "anm/text.hpp"

namespace anm {

void NoiseSpec::validate() const
{
    if (!(param > 0.0) || !std::isfinite(param))
        throw ConfigError("noise parameter must be positive");
    if (kind == Kind::StudentT && !(param > 2.0))
        throw ConfigError("student-t noise needs dof > 2 for finite variance");
}

void CovariateDist::validate() const
{
    if (kind == Kind::Uniform && !(lo < hi))
        throw ConfigError("uniform covariate needs lo < hi");
    if (kind == Kind::Gaussian && !(sd > 0.0))
        throw ConfigError("gaussian covariate needs sd > 0");
}

MechanismSpec MechanismSpec::table(std::vector<double> xs, std::vector<double> ys)
{
    MechanismSpec m{Kind::Table, 0.0, std::move(xs), std::move(ys)};
    m.validate();
    return m;
}

double MechanismSpec::operator()(double x) const
{
    switch (kind) {
    case Kind::Cubic:
        return coef * x * x * x + x;
    case Kind::Linear:
        return coef * x;
    case Kind::Table: {
        if (x <= knots_x.front())
            return knots_y.front();
        if (x >= knots_x.back())
            return knots_y.back();
        const auto it = std::upper_bound(knots_x.begin(), knots_x.end(), x);
        const auto i = static_cast<std::size_t>(it - knots_x.begin());
        const double t = (x - knots_x[i - 1]) / (knots_x[i] - knots_x[i - 1]);
        return knots_y[i - 1] + t * (knots_y[i] - knots_y[i - 1]);
    }
    }
    return 0.0;
}

void MechanismSpec::validate() const
{
    if (kind != Kind::Table)
        return;
    if (knots_x.empty() || knots_x.size() != knots_y.size())
        throw ConfigError("table mechanism needs matching, non-empty knot lists");
    for (std::size_t i = 1; i < knots_x.size(); ++i)
        if (!(knots_x[i] > knots_x[i - 1]))
            throw ConfigError("table knots must be strictly increasing");
}

void AnmSpec::validate() const
{
    x_dist.validate();
    f.validate();
    noise.validate();
}

AnmSpec cubic_generator(double b, double q)
{
    return {CovariateDist::uniform(-2.5, 2.5), MechanismSpec::cubic(b), NoiseSpec::powered_gaussian(q)};
}

AnmSpec linear_gaussian_generator(double a, double s)
{
    return {CovariateDist::gaussian(1.0), MechanismSpec::linear(a), NoiseSpec::gaussian(s)};
}

namespace {

double number(std::string_view what, std::string_view v)
{
    const auto d = text::parse_double(v);
    if (!d)
        throw ConfigError(std::string(what) + ": expected a number, got '" + std::string(v) + "'");
    return *d;
}

std::pair<std::string_view, std::string_view> head_tail(std::string_view v)
{
    const auto colon = v.find(':');
    if (colon == std::string_view::npos)
        return {v, {}};
    return {v.substr(0, colon), v.substr(colon + 1)};
}

} // namespace

CovariateDist parse_covariate_dist(std::string_view v)
{
    const auto [head, rest] = head_tail(text::trim(v));
    CovariateDist d;
    if (head == "uniform") {
        const auto parts = text::split(rest, ',');
        if (parts.size() != 2)
            throw ConfigError("x_dist=uniform:lo,hi");
        d = CovariateDist::uniform(number("x_dist", parts[0]), number("x_dist", parts[1]));
    } else if (head == "gaussian") {
        d = CovariateDist::gaussian(number("x_dist", rest));
    } else {
        throw ConfigError("unknown covariate distribution '" + std::string(v) + "'");
    }
    d.validate();
    return d;
}

MechanismSpec parse_mechanism(std::string_view v)
{
    const auto [head, rest] = head_tail(text::trim(v));
    if (head == "cubic")
        return MechanismSpec::cubic(number("f", rest));
    if (head == "linear")
        return MechanismSpec::linear(number("f", rest));
    if (head == "table") {
        std::vector<double> xs, ys;
        for (auto knot : text::split(rest, ',')) {
            const auto [kx, ky] = head_tail(knot);
            xs.push_back(number("table knot", kx));
            ys.push_back(number("table knot", ky));
        }
        return MechanismSpec::table(std::move(xs), std::move(ys));
    }
    throw ConfigError("unknown mechanism '" + std::string(v) + "'");
}

NoiseSpec parse_noise(std::string_view v)
{
    const auto [head, rest] = head_tail(text::trim(v));
    NoiseSpec s;
    if (head == "powered")
        s = NoiseSpec::powered_gaussian(number("noise", rest));
    else if (head == "gaussian")
        s = NoiseSpec::gaussian(number("noise", rest));
    else if (head == "laplace")
        s = NoiseSpec::laplace(number("noise", rest));
    else if (head == "student")
        s = NoiseSpec::student_t(number("noise", rest));
    else
        throw ConfigError("unknown noise '" + std::string(v) + "'");
    s.validate();
    return s;
}

AnmSpec parse_generator(const KeyValues& kv)
{
    AnmSpec spec = cubic_generator(1.0, 1.0);
    for (const auto& [k, v] : kv) {
        if (k == "x_dist")
            spec.x_dist = parse_covariate_dist(v);
        else if (k == "f")
            spec.f = parse_mechanism(v);
        else if (k == "noise")
            spec.noise = parse_noise(v);
        else
            throw ConfigError("unknown generator key '" + k + "'");
    }
    spec.validate();
    return spec;
}

std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed)
{
    spec.validate();
    Rng rng(seed);
    std::vector<double> out(n);
    switch (spec.kind) {
    case NoiseSpec::Kind::PoweredGaussian: {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (auto& v : out) {
            const double z = normal(rng);
            v = std::copysign(std::pow(std::abs(z), spec.param), z);
        }
        break;
    }
    case NoiseSpec::Kind::Gaussian: {
        std::normal_distribution<double> normal(0.0, spec.param);
        for (auto& v : out)
            v = normal(rng);
        break;
    }
    case NoiseSpec::Kind::Laplace: {
        std::exponential_distribution<double> expo(1.0 / spec.param);
        std::bernoulli_distribution coin(0.5);
        for (auto& v : out) {
            const double m = expo(rng);
            v = coin(rng) ? m : -m;
        }
        break;
    }
    case NoiseSpec::Kind::StudentT: {
        std::student_t_distribution<double> t(spec.param);
        for (auto& v : out)
            v = t(rng);
        break;
    }
    }
    return out;
}

std::vector<double> sample_covariate(const CovariateDist& dist, std::size_t n, std::uint64_t seed)
{
    dist.validate();
    Rng rng(seed);
    std::vector<double> out(n);
    if (dist.kind == CovariateDist::Kind::Uniform) {
        std::uniform_real_distribution<double> u(dist.lo, dist.hi);
        for (auto& v : out)
            v = u(rng);
    } else {
        std::normal_distribution<double> g(0.0, dist.sd);
        for (auto& v : out)
            v = g(rng);
    }
    return out;
}

PairedSample sample_anm(const AnmSpec& spec, std::size_t n, std::uint64_t seed)
{
    spec.validate();
    if (n == 0)
        throw EmptySample();
    auto xs = sample_covariate(spec.x_dist, n, derive_seed(seed, stream::covariate));
    auto eta = sample_noise(spec.noise, n, derive_seed(seed, stream::noise));
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i)
        ys[i] = spec.f(xs[i]) + eta[i];
    return PairedSample(std::move(xs), std::move(ys));
}

std::vector<double> default_tail_fractions()
{
    return {0.02, 0.01, 0.005, 0.002, 0.001};
}

TailDiagnostic tail_diagnostic(std::span<const double> values, std::span<const double> tail_fractions)
{
    if (values.size() < 1000)
        throw SampleTooSmall("tail diagnostics need at least 1000 values");
    if (tail_fractions.size() < 3)
        throw std::invalid_argument("tail diagnostics need at least 3 thresholds");

    std::vector<double> sorted(values.begin(), values.end());
    const std::size_t n = sorted.size();
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2), sorted.end());
    const double median = sorted[n / 2];
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i)
        dev[i] = std::abs(values[i] - median);
    std::sort(dev.begin(), dev.end(), std::greater<>());

    TailDiagnostic out;
    if (dev.front() == 0.0) {
        out.exponent = std::numeric_limits<double>::infinity();
        out.exponential_tail = true;
        return out;
    }

    std::vector<double> fractions(tail_fractions.begin(), tail_fractions.end());
    std::sort(fractions.begin(), fractions.end(), std::greater<>());

    std::vector<double> thresholds, neg_log_survival;
    for (double p : fractions) {
        const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(p * static_cast<double>(n))), 2,
                                               n - 1);
        const double threshold = dev[k];
        if (threshold > 0.0) {
            double acc = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                acc += std::log(dev[i] / threshold);
            if (acc > 0.0)
                out.hill_estimates.push_back(static_cast<double>(k) / acc);
        }
        thresholds.push_back(threshold);
        neg_log_survival.push_back(-std::log(static_cast<double>(k) / static_cast<double>(n)));
    }

    if (out.hill_estimates.empty()) {
        out.exponent = std::numeric_limits<double>::infinity();
    } else {
        auto h = out.hill_estimates;
        std::sort(h.begin(), h.end());
        const std::size_t m = h.size();
        out.exponent = m % 2 ? h[m / 2] : 0.5 * (h[m / 2 - 1] + h[m / 2]);
    }

    const std::size_t last = thresholds.size() - 1;
    const std::size_t mid = last / 2;
    const double dt_low = thresholds[mid] - thresholds[0];
    const double dt_high = thresholds[last] - thresholds[mid];
    if (dt_low <= 0.0 || dt_high <= 0.0) {
        out.exponential_tail = true;
    } else {
        const double slope_low = (neg_log_survival[mid] - neg_log_survival[0]) / dt_low;
        const double slope_high = (neg_log_survival[last] - neg_log_survival[mid]) / dt_high;
        out.exponential_tail = slope_high >= 0.8 * slope_low;
    }
    return out;
}

} // namespace anm
