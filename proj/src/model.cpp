#include "anm/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "anm/errors.hpp"
#include "anm/text.hpp"

namespace anm {

PairedSample::PairedSample(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys))
{
    if (xs_.size() != ys_.size())
        throw LengthMismatch(xs_.size(), ys_.size());
    if (xs_.empty())
        throw EmptySample();
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
            throw NonFiniteValue(i);
    }
}

PairedSample validate_sample(std::span<const std::pair<double, double>> raw)
{
    std::vector<double> xs, ys;
    xs.reserve(raw.size());
    ys.reserve(raw.size());
    for (const auto& [x, y] : raw) {
        xs.push_back(x);
        ys.push_back(y);
    }
    return PairedSample(std::move(xs), std::move(ys));
}

PairedSample validate_sample(std::vector<double> xs, std::vector<double> ys)
{
    return PairedSample(std::move(xs), std::move(ys));
}

std::string direction_name(Direction d)
{
    switch (d) {
    case Direction::XtoY: return "XtoY";
    case Direction::YtoX: return "YtoX";
    case Direction::Abstain: return "Abstain";
    }
    return "?";
}

std::string mode_name(EstimationMode m)
{
    return m == EstimationMode::Coupled ? "coupled" : "decoupled";
}

BandwidthSpec BandwidthSpec::fixed(double value, bool relative)
{
    BandwidthSpec s;
    s.kind = Kind::Fixed;
    s.value = value;
    s.relative = relative;
    return s;
}

BandwidthSpec BandwidthSpec::theory(double c, double exponent)
{
    BandwidthSpec s;
    s.kind = Kind::TheorySchedule;
    s.value = c;
    s.exponent = exponent;
    return s;
}

BandwidthSpec BandwidthSpec::cross_validation(int folds, std::vector<double> grid, bool relative)
{
    BandwidthSpec s;
    s.kind = Kind::CrossValidation;
    s.folds = folds;
    s.grid = std::move(grid);
    s.relative = relative;
    return s;
}

BandwidthSpec BandwidthSpec::loo(std::vector<double> grid, bool relative)
{
    BandwidthSpec s;
    s.kind = Kind::LooLikelihood;
    s.grid = std::move(grid);
    s.relative = relative;
    return s;
}

namespace {
void validate_grid(const std::vector<double>& grid)
{
    if (grid.empty())
        throw ConfigError("bandwidth grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
            throw ConfigError("bandwidth grid entries must be positive and finite");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ConfigError("bandwidth grid must be strictly increasing");
    }
}
} // namespace

void BandwidthSpec::validate() const
{
    switch (kind) {
    case Kind::Fixed:
        if (!(value > 0.0) || !std::isfinite(value))
            throw ConfigError("fixed bandwidth must be positive");
        break;
    case Kind::TheorySchedule:
        if (!(value > 0.0) || !std::isfinite(value))
            throw ConfigError("schedule constant must be positive");
        if (!(exponent > 0.0 && exponent < 1.0))
            throw ConfigError("schedule exponent must lie in (0, 1)");
        break;
    case Kind::CrossValidation:
        if (folds < 2)
            throw ConfigError("cross-validation needs at least 2 folds");
        validate_grid(grid);
        break;
    case Kind::LooLikelihood:
        validate_grid(grid);
        break;
    }
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count)
{
    std::vector<double> g;
    if (count == 0)
        return g;
    if (count == 1)
        return {lo};
    g.reserve(count);
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g.push_back(lo * std::exp(step * static_cast<double>(i)));
    g.back() = hi;
    return g;
}

std::vector<double> default_regression_grid()
{
    return geometric_grid(0.01, 1.0, 20);
}

std::vector<double> default_entropy_grid()
{
    return geometric_grid(1e-3, 10.0, 30);
}

std::vector<std::string> InferenceConfig::validate() const
{
    std::vector<std::string> warnings;
    regression_bandwidth.validate();
    entropy_bandwidth.validate();
    if (regression_bandwidth.kind == BandwidthSpec::Kind::LooLikelihood)
        throw ConfigError("regression bandwidth cannot use log-likelihood tuning");
    if (entropy_bandwidth.kind == BandwidthSpec::Kind::CrossValidation)
        throw ConfigError("entropy bandwidth cannot use regression cross-validation");
    if (entropy_kernel == Kernel::Box)
        throw ConfigError("the box kernel is not available for density estimation");
    if (regressor == RegressorKind::KernelRidge && !(ridge_lambda > 0.0))
        throw ConfigError("kernel ridge penalty must be positive");
    if (!std::isfinite(truncation_bound))
        throw ConfigError("truncation bound must be finite");
    if (!(tau0 >= 0.0) || !std::isfinite(tau0))
        throw ConfigError("tau0 must be non-negative");
    if (!(tau_exponent > 0.0 && tau_exponent <= 1.0))
        throw ConfigError("tau_exponent must lie in (0, 1]");
    if (entropy_kernel == Kernel::Gaussian && mode == EstimationMode::Coupled)
        warnings.emplace_back(
            "gaussian entropy kernel lacks compact support; coupled-mode consistency "
            "guarantees assume K(u)=0 for |u|>=1");
    return warnings;
}

InferenceConfig cli_default_config()
{
    InferenceConfig c;
    c.tau0 = 0.5;
    c.tau_exponent = 0.25;
    return c;
}

double compute_tau(std::size_t n, double tau0, double tau_exponent)
{
    return tau0 * std::pow(static_cast<double>(n), -tau_exponent);
}

// ---------------------------------------------------------------------------
// key=value files

KeyValues parse_key_values(std::string_view body)
{
    KeyValues kv;
    std::size_t line_no = 0;
    for (auto line : text::split(body, '\n')) {
        ++line_no;
        line = text::trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected key=value");
        const auto key = text::trim(line.substr(0, eq));
        if (key.empty())
            throw ParseError(line_no, "empty key");
        kv.emplace_back(std::string(key), std::string(text::trim(line.substr(eq + 1))));
    }
    return kv;
}

KeyValues read_key_values_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

namespace {

double require_double(std::string_view key, std::string_view v)
{
    const auto d = text::parse_double(v);
    if (!d)
        throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(v) + "'");
    return *d;
}

std::vector<double> parse_grid(std::string_view v, bool& relative)
{
    relative = false;
    if (v.size() > 3 && v.substr(v.size() - 3) == "*sd") {
        relative = true;
        v.remove_suffix(3);
    }
    std::vector<double> grid;
    for (auto item : text::split(v, ','))
        grid.push_back(require_double("bandwidth grid", item));
    return grid;
}

std::string format_grid(const std::vector<double>& grid, bool relative)
{
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i)
            out += ',';
        out += text::format_real(grid[i]);
    }
    if (relative)
        out += "*sd";
    return out;
}

} // namespace

BandwidthSpec parse_bandwidth(std::string_view t)
{
    t = text::trim(t);
    const auto parts = text::split(t, ':');
    const auto head = parts[0];
    if (head == "fixed" && parts.size() == 2) {
        auto v = parts[1];
        bool relative = false;
        if (v.size() > 3 && v.substr(v.size() - 3) == "*sd") {
            relative = true;
            v.remove_suffix(3);
        }
        auto spec = BandwidthSpec::fixed(require_double("fixed bandwidth", v), relative);
        spec.validate();
        return spec;
    }
    if (head == "theory" && parts.size() == 3) {
        auto spec = BandwidthSpec::theory(require_double("schedule constant", parts[1]),
                                          require_double("schedule exponent", parts[2]));
        spec.validate();
        return spec;
    }
    if (head == "cv" && parts.size() <= 3) {
        int folds = 5;
        if (parts.size() >= 2) {
            const auto f = text::parse_int(parts[1]);
            if (!f)
                throw ConfigError("cv: folds must be an integer");
            folds = static_cast<int>(*f);
        }
        auto spec = BandwidthSpec::cross_validation(folds, default_regression_grid(), true);
        if (parts.size() == 3)
            spec.grid = parse_grid(parts[2], spec.relative);
        spec.validate();
        return spec;
    }
    if (head == "loo" && parts.size() <= 2) {
        auto spec = BandwidthSpec::loo(default_entropy_grid(), true);
        if (parts.size() == 2)
            spec.grid = parse_grid(parts[1], spec.relative);
        spec.validate();
        return spec;
    }
    throw ConfigError("unrecognised bandwidth specification '" + std::string(t) + "'");
}

std::string format_bandwidth(const BandwidthSpec& s)
{
    switch (s.kind) {
    case BandwidthSpec::Kind::Fixed:
        return "fixed:" + text::format_real(s.value) + (s.relative ? "*sd" : "");
    case BandwidthSpec::Kind::TheorySchedule:
        return "theory:" + text::format_real(s.value) + ":" + text::format_real(s.exponent);
    case BandwidthSpec::Kind::CrossValidation:
        return "cv:" + std::to_string(s.folds) + ":" + format_grid(s.grid, s.relative);
    case BandwidthSpec::Kind::LooLikelihood:
        return "loo:" + format_grid(s.grid, s.relative);
    }
    return {};
}

namespace {

void apply_regressor(InferenceConfig& c, std::string_view v)
{
    const auto parts = text::split(v, ':');
    if (parts[0] == "box" && parts.size() == 1) {
        c.regressor = RegressorKind::BoxKernel;
    } else if (parts[0] == "nw" && parts.size() <= 2) {
        c.regressor = RegressorKind::NadarayaWatson;
        if (parts.size() == 2)
            c.regression_kernel = parse_kernel(parts[1]);
    } else if (parts[0] == "krr" && parts.size() <= 2) {
        c.regressor = RegressorKind::KernelRidge;
        if (parts.size() == 2)
            c.ridge_lambda = require_double("ridge penalty", parts[1]);
    } else {
        throw ConfigError("unknown regressor '" + std::string(v) + "'");
    }
}

std::string format_regressor(const InferenceConfig& c)
{
    switch (c.regressor) {
    case RegressorKind::BoxKernel: return "box";
    case RegressorKind::NadarayaWatson: return "nw:" + kernel_name(c.regression_kernel);
    case RegressorKind::KernelRidge: return "krr:" + text::format_real(c.ridge_lambda);
    }
    return {};
}

} // namespace

bool apply_config_key(InferenceConfig& c, std::string_view key, std::string_view v)
{
    if (key == "mode") {
        if (v == "coupled")
            c.mode = EstimationMode::Coupled;
        else if (v == "decoupled")
            c.mode = EstimationMode::Decoupled;
        else
            throw ConfigError("mode must be coupled or decoupled");
    } else if (key == "regressor") {
        apply_regressor(c, v);
    } else if (key == "regression_bandwidth") {
        c.regression_bandwidth = parse_bandwidth(v);
    } else if (key == "entropy_bandwidth") {
        c.entropy_bandwidth = parse_bandwidth(v);
    } else if (key == "entropy_kernel") {
        c.entropy_kernel = parse_kernel(v);
    } else if (key == "truncation_bound") {
        if (v == "auto") {
            c.truncation_bound = 0.0;
        } else {
            c.truncation_bound = require_double(key, v);
            if (!(c.truncation_bound > 0.0))
                throw ConfigError("truncation_bound must be positive or auto");
        }
    } else if (key == "tau0") {
        c.tau0 = require_double(key, v);
    } else if (key == "tau_exponent") {
        c.tau_exponent = require_double(key, v);
    } else if (key == "seed") {
        const auto s = text::parse_u64(v);
        if (!s)
            throw ConfigError("seed must be an unsigned 64-bit integer");
        c.seed = *s;
    } else {
        return false;
    }
    return true;
}

InferenceConfig parse_config(const KeyValues& kv, InferenceConfig base)
{
    for (const auto& [k, v] : kv) {
        if (!apply_config_key(base, k, v))
            throw ConfigError("unknown config key '" + k + "'");
    }
    base.validate();
    return base;
}

InferenceConfig read_config_file(const std::string& path, InferenceConfig base)
{
    return parse_config(read_key_values_file(path), std::move(base));
}

std::string format_config(const InferenceConfig& c)
{
    std::string out;
    auto line = [&](std::string_view k, const std::string& v) {
        out.append(k).append("=").append(v).append("\n");
    };
    line("mode", mode_name(c.mode));
    line("regressor", format_regressor(c));
    line("regression_bandwidth", format_bandwidth(c.regression_bandwidth));
    line("entropy_bandwidth", format_bandwidth(c.entropy_bandwidth));
    line("entropy_kernel", kernel_name(c.entropy_kernel));
    line("truncation_bound", c.auto_truncation() ? "auto" : text::format_real(c.truncation_bound));
    line("tau0", text::format_real(c.tau0));
    line("tau_exponent", text::format_real(c.tau_exponent));
    line("seed", std::to_string(c.seed));
    return out;
}

} // namespace anm
