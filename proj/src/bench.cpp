#include "anm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "anm/errors.hpp"
#include "anm/infer.hpp"
#include "anm/text.hpp"

namespace anm {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << body;
    if (!out)
        throw Error("write failed for '" + path.string() + "'");
}

double need_double(std::string_view key, std::string_view v)
{
    const auto d = text::parse_double(v);
    if (!d || !std::isfinite(*d))
        throw ConfigError(std::string(key) + ": expected a finite number");
    return *d;
}

std::int64_t need_int(std::string_view key, std::string_view v)
{
    const auto i = text::parse_int(v);
    if (!i)
        throw ConfigError(std::string(key) + ": expected an integer");
    return *i;
}

} // namespace

std::string axis_name(SweepAxis::Kind k)
{
    switch (k) {
    case SweepAxis::Kind::Bandwidth: return "bandwidth";
    case SweepAxis::Kind::SampleSize: return "n";
    case SweepAxis::Kind::NoisePower: return "q";
    case SweepAxis::Kind::Nonlinearity: return "b";
    }
    return "?";
}

std::vector<double> SweepAxis::points() const
{
    if (kind != Kind::Bandwidth)
        return values;
    std::vector<double> p;
    double h = start;
    for (int i = 0; i < steps; ++i) {
        p.push_back(h);
        h *= factor;
    }
    return p;
}

void SweepAxis::validate() const
{
    if (kind == Kind::Bandwidth) {
        if (!(start > 0.0) || !(factor > 0.0) || steps < 1)
            throw ConfigError("bandwidth axis needs start > 0, factor > 0, steps >= 1");
        return;
    }
    if (values.empty())
        throw ConfigError("sweep axis needs at least one value");
    for (double v : values) {
        if (kind == Kind::SampleSize && !(v >= 8.0 && v == std::floor(v)))
            throw ConfigError("sample sizes must be integers >= 8");
        if (kind == Kind::NoisePower && !(v > 0.0))
            throw ConfigError("noise powers must be positive");
    }
}

std::pair<AnmSpec, std::size_t> SweepSpec::cell(double v) const
{
    AnmSpec gen;
    switch (generator) {
    case Generator::Cubic:
        gen = cubic_generator(b, q);
        break;
    case Generator::LinearGaussian:
        gen = linear_gaussian_generator(a, s);
        break;
    case Generator::Custom:
        gen = custom;
        break;
    }
    std::size_t size = n;
    switch (axis.kind) {
    case SweepAxis::Kind::SampleSize:
        size = static_cast<std::size_t>(v);
        break;
    case SweepAxis::Kind::NoisePower:
        if (gen.noise.kind != NoiseSpec::Kind::PoweredGaussian)
            throw ConfigError("the q axis needs powered-gaussian noise");
        gen.noise.param = v;
        break;
    case SweepAxis::Kind::Nonlinearity:
        if (gen.f.kind != MechanismSpec::Kind::Cubic)
            throw ConfigError("the b axis needs a cubic mechanism");
        gen.f.coef = v;
        break;
    case SweepAxis::Kind::Bandwidth:
        break;
    }
    return {gen, size};
}

void SweepSpec::validate() const
{
    axis.validate();
    if (repetitions < 1)
        throw ConfigError("repetitions must be >= 1");
    if (n < 8)
        throw ConfigError("n must be >= 8");
    infer_config.validate();
    for (double v : axis.points())
        cell(v).first.validate();
}

SweepSpec parse_sweep_spec(const KeyValues& kv)
{
    SweepSpec spec;
    spec.infer_config = cli_default_config();
    bool have_axis_values = false;
    KeyValues custom;
    for (const auto& [k, v] : kv) {
        if (apply_config_key(spec.infer_config, k, v))
            continue;
        if (k == "axis") {
            if (v == "bandwidth")
                spec.axis.kind = SweepAxis::Kind::Bandwidth;
            else if (v == "n")
                spec.axis.kind = SweepAxis::Kind::SampleSize;
            else if (v == "q")
                spec.axis.kind = SweepAxis::Kind::NoisePower;
            else if (v == "b")
                spec.axis.kind = SweepAxis::Kind::Nonlinearity;
            else
                throw ConfigError("axis must be one of bandwidth, n, q, b");
        } else if (k == "axis_values") {
            spec.axis.values.clear();
            for (auto item : text::split(v, ','))
                spec.axis.values.push_back(need_double(k, item));
            have_axis_values = true;
        } else if (k == "generator") {
            if (v == "cubic")
                spec.generator = SweepSpec::Generator::Cubic;
            else if (v == "linear-gaussian")
                spec.generator = SweepSpec::Generator::LinearGaussian;
            else if (v == "custom")
                spec.generator = SweepSpec::Generator::Custom;
            else
                throw ConfigError("generator must be cubic, linear-gaussian or custom");
        } else if (k == "b") {
            spec.b = need_double(k, v);
        } else if (k == "q") {
            spec.q = need_double(k, v);
        } else if (k == "a") {
            spec.a = need_double(k, v);
        } else if (k == "s") {
            spec.s = need_double(k, v);
        } else if (k == "n") {
            const auto n = need_int(k, v);
            if (n < 8)
                throw ConfigError("n must be >= 8");
            spec.n = static_cast<std::size_t>(n);
        } else if (k == "repetitions") {
            spec.repetitions = static_cast<int>(need_int(k, v));
        } else if (k == "compare_modes") {
            if (v == "true" || v == "1")
                spec.compare_modes = true;
            else if (v == "false" || v == "0")
                spec.compare_modes = false;
            else
                throw ConfigError("compare_modes must be true or false");
        } else if (k == "out_dir") {
            spec.out_dir = v;
        } else if (k == "h0") {
            spec.axis.start = need_double(k, v);
        } else if (k == "factor") {
            spec.axis.factor = need_double(k, v);
        } else if (k == "steps") {
            spec.axis.steps = static_cast<int>(need_int(k, v));
        } else if (k == "x_dist" || k == "f" || k == "noise") {
            custom.emplace_back(k, v);
        } else {
            throw ConfigError("unknown sweep key '" + k + "'");
        }
    }
    if (!custom.empty()) {
        if (spec.generator != SweepSpec::Generator::Custom)
            throw ConfigError("x_dist, f and noise are only valid with generator=custom");
        spec.custom = parse_generator(custom);
    }
    if (spec.axis.kind == SweepAxis::Kind::Bandwidth && have_axis_values)
        throw ConfigError("the bandwidth axis is set with h0, factor and steps");
    spec.validate();
    return spec;
}

SweepSpec read_sweep_spec(const std::string& path)
{
    return parse_sweep_spec(read_key_values_file(path));
}

std::vector<SweepAggregate> aggregate(const std::vector<SweepRow>& rows)
{
    struct Group {
        double axis_value;
        EstimationMode mode;
        std::vector<const SweepRow*> rows;
    };
    std::vector<Group> groups;
    for (const auto& row : rows) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.axis_value == row.axis_value && g.mode == row.mode;
        });
        if (it == groups.end()) {
            groups.push_back({row.axis_value, row.mode, {}});
            it = groups.end() - 1;
        }
        if (row.ok())
            it->rows.push_back(&row);
    }

    std::vector<SweepAggregate> out;
    for (const auto& g : groups) {
        SweepAggregate a;
        a.axis_value = g.axis_value;
        a.mode = g.mode;
        a.n_rows = g.rows.size();
        if (g.rows.empty()) {
            a.mean_gap = a.sd_gap = a.frac_xtoy = nan_value;
            out.push_back(a);
            continue;
        }
        const auto k = static_cast<double>(g.rows.size());
        double sum = 0.0, xtoy = 0.0;
        for (const auto* r : g.rows) {
            sum += r->gap;
            if (*r->decision == Direction::XtoY)
                xtoy += 1.0;
        }
        a.mean_gap = sum / k;
        double ss = 0.0;
        for (const auto* r : g.rows)
            ss += (r->gap - a.mean_gap) * (r->gap - a.mean_gap);
        a.sd_gap = g.rows.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
        a.frac_xtoy = xtoy / k;
        out.push_back(a);
    }
    return out;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned jobs)
{
    spec.validate();
    std::vector<EstimationMode> modes;
    if (spec.compare_modes)
        modes = {EstimationMode::Coupled, EstimationMode::Decoupled};
    else
        modes = {spec.infer_config.mode};

    SweepResult result;
    for (double v : spec.axis.points()) {
        for (auto mode : modes) {
            for (int r = 0; r < spec.repetitions; ++r) {
                SweepRow row;
                row.axis_value = v;
                row.mode = mode;
                row.repetition = r;
                row.seed = spec.infer_config.seed + static_cast<std::uint64_t>(r);
                result.rows.push_back(row);
            }
        }
    }

    auto run_row = [&](SweepRow& row) {
        try {
            const auto [gen, size] = spec.cell(row.axis_value);
            InferenceConfig config = spec.infer_config;
            config.mode = row.mode;
            config.seed = row.seed;
            if (spec.axis.kind == SweepAxis::Kind::Bandwidth)
                config.regression_bandwidth = BandwidthSpec::fixed(row.axis_value, true);
            const auto sample = sample_anm(gen, size, row.seed);
            const auto score = score_direction(sample, config);
            row.c_xy = score.c_xy;
            row.c_yx = score.c_yx;
            row.gap = score.gap;
            row.decision = score.decision;
        } catch (const std::exception& e) {
            row.c_xy = row.c_yx = row.gap = nan_value;
            row.decision.reset();
            row.error = e.what();
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(result.rows.size())));
    if (jobs == 1) {
        for (auto& row : result.rows)
            run_row(row);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < result.rows.size(); i = next++)
                    run_row(result.rows[i]);
            });
        }
    }
    result.aggregates = aggregate(result.rows);
    return result;
}

std::string format_rows_csv(const std::vector<SweepRow>& rows)
{
    std::string out = "axis_value,mode,repetition,seed,c_xy,c_yx,gap,decision\n";
    for (const auto& r : rows) {
        out += text::format_real(r.axis_value) + ',' + mode_name(r.mode) + ',' + std::to_string(r.repetition) + ',' +
               std::to_string(r.seed) + ',' + text::format_real(r.c_xy) + ',' + text::format_real(r.c_yx) + ',' +
               text::format_real(r.gap) + ',' + (r.ok() ? direction_name(*r.decision) : std::string("error")) + '\n';
    }
    return out;
}

std::string format_aggregates_csv(const std::vector<SweepAggregate>& aggregates)
{
    std::string out = "axis_value,mode,mean_gap,sd_gap,frac_xtoy,n_rows\n";
    for (const auto& a : aggregates) {
        out += text::format_real(a.axis_value) + ',' + mode_name(a.mode) + ',' + text::format_real(a.mean_gap) + ',' +
               text::format_real(a.sd_gap) + ',' + text::format_real(a.frac_xtoy) + ',' + std::to_string(a.n_rows) +
               '\n';
    }
    return out;
}

std::pair<std::string, std::string> emit_results(const SweepResult& result, const std::string& out_dir)
{
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create '" + out_dir + "': " + ec.message());
    const auto rows = dir / "rows.csv";
    const auto aggs = dir / "aggregates.csv";
    write_file(rows, format_rows_csv(result.rows));
    write_file(aggs, format_aggregates_csv(result.aggregates));
    return {rows.string(), aggs.string()};
}

namespace {

EstimationMode parse_mode(std::size_t line, std::string_view v)
{
    if (v == "coupled")
        return EstimationMode::Coupled;
    if (v == "decoupled")
        return EstimationMode::Decoupled;
    throw ParseError(line, "unknown mode '" + std::string(v) + "'");
}

double csv_double(std::size_t line, std::string_view v)
{
    const auto d = text::parse_double(v);
    if (!d)
        throw ParseError(line, "expected a number, got '" + std::string(v) + "'");
    return *d;
}

template <typename Fn>
void for_each_record(const std::string& body, std::string_view header, std::size_t fields, Fn&& fn)
{
    std::size_t line_no = 0;
    for (auto line : text::split(body, '\n')) {
        ++line_no;
        line = text::trim(line);
        if (line.empty())
            continue;
        if (line_no == 1) {
            if (line != header)
                throw ParseError(1, "unexpected header");
            continue;
        }
        const auto cols = text::split(line, ',');
        if (cols.size() != fields)
            throw ParseError(line_no, "expected " + std::to_string(fields) + " columns");
        fn(line_no, cols);
    }
}

} // namespace

std::vector<SweepRow> parse_rows_csv(const std::string& body)
{
    std::vector<SweepRow> rows;
    for_each_record(body, "axis_value,mode,repetition,seed,c_xy,c_yx,gap,decision", 8,
                    [&](std::size_t ln, const std::vector<std::string_view>& c) {
                        SweepRow r;
                        r.axis_value = csv_double(ln, c[0]);
                        r.mode = parse_mode(ln, c[1]);
                        const auto rep = text::parse_int(c[2]);
                        const auto seed = text::parse_u64(c[3]);
                        if (!rep || !seed)
                            throw ParseError(ln, "bad repetition or seed");
                        r.repetition = static_cast<int>(*rep);
                        r.seed = *seed;
                        r.c_xy = csv_double(ln, c[4]);
                        r.c_yx = csv_double(ln, c[5]);
                        r.gap = csv_double(ln, c[6]);
                        if (c[7] == "XtoY")
                            r.decision = Direction::XtoY;
                        else if (c[7] == "YtoX")
                            r.decision = Direction::YtoX;
                        else if (c[7] == "Abstain")
                            r.decision = Direction::Abstain;
                        else if (c[7] != "error")
                            throw ParseError(ln, "unknown decision");
                        rows.push_back(r);
                    });
    return rows;
}

std::vector<SweepAggregate> parse_aggregates_csv(const std::string& body)
{
    std::vector<SweepAggregate> out;
    for_each_record(body, "axis_value,mode,mean_gap,sd_gap,frac_xtoy,n_rows", 6,
                    [&](std::size_t ln, const std::vector<std::string_view>& c) {
                        SweepAggregate a;
                        a.axis_value = csv_double(ln, c[0]);
                        a.mode = parse_mode(ln, c[1]);
                        a.mean_gap = csv_double(ln, c[2]);
                        a.sd_gap = csv_double(ln, c[3]);
                        a.frac_xtoy = csv_double(ln, c[4]);
                        const auto k = text::parse_u64(c[5]);
                        if (!k)
                            throw ParseError(ln, "bad row count");
                        a.n_rows = static_cast<std::size_t>(*k);
                        out.push_back(a);
                    });
    return out;
}

PairedSample parse_sample_csv(const std::string& body)
{
    std::vector<double> xs, ys;
    std::size_t line_no = 0;
    for (auto line : text::split(body, '\n')) {
        ++line_no;
        line = text::trim(line);
        if (line.empty())
            continue;
        if (line_no == 1 && line == "x,y")
            continue;
        const auto cols = text::split(line, ',');
        if (cols.size() != 2)
            throw ParseError(line_no, "expected two comma-separated columns");
        const auto x = text::parse_double(cols[0]);
        const auto y = text::parse_double(cols[1]);
        if (!x || !y)
            throw ParseError(line_no, "non-numeric field");
        xs.push_back(*x);
        ys.push_back(*y);
    }
    return validate_sample(std::move(xs), std::move(ys));
}

PairedSample ingest_csv(const std::string& path)
{
    return parse_sample_csv(read_file(path));
}

std::string format_sample_csv(const PairedSample& sample)
{
    std::string out = "x,y\n";
    for (std::size_t i = 0; i < sample.size(); ++i)
        out += text::format_real(sample.xs()[i]) + ',' + text::format_real(sample.ys()[i]) + '\n';
    return out;
}

} // namespace anm
