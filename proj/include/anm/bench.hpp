#ifndef ANM_BENCH_HPP
#define ANM_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anm/model.hpp"
#include "anm/synth.hpp"

namespace anm {

struct SweepAxis {
    enum class Kind { Bandwidth, SampleSize, NoisePower, Nonlinearity };
    Kind kind = Kind::SampleSize;
    // Bandwidth: geometric sequence of regression bandwidths, in multiples of
    // the covariate standard deviation.
    double start = 0.001;
    double factor = 1.5;
    int steps = 10;
    std::vector<double> values;   // the other axes

    std::vector<double> points() const;
    void validate() const;
};

std::string axis_name(SweepAxis::Kind k);

struct SweepSpec {
    enum class Generator { Cubic, LinearGaussian, Custom };

    SweepAxis axis;
    Generator generator = Generator::Cubic;
    double b = 1.0;
    double q = 1.0;
    double a = 1.0;
    double s = 1.0;
    AnmSpec custom = cubic_generator(1.0, 1.0);
    std::size_t n = 1000;
    InferenceConfig infer_config;   // its seed is the base seed
    int repetitions = 10;
    bool compare_modes = false;
    std::string out_dir;

    /// Generator and sample size for one axis value.
    std::pair<AnmSpec, std::size_t> cell(double axis_value) const;
    void validate() const;
};

/// Reads the key=value sweep description. Accepts every inference-config key
/// plus axis, axis_values, generator, b, q, a, s, n, repetitions,
/// compare_modes, out_dir, h0, factor, steps and, for the custom generator,
/// x_dist, f, noise.
SweepSpec parse_sweep_spec(const KeyValues& kv);
SweepSpec read_sweep_spec(const std::string& path);

struct SweepRow {
    double axis_value = 0.0;
    EstimationMode mode = EstimationMode::Coupled;
    int repetition = 0;
    std::uint64_t seed = 0;
    double c_xy = 0.0;
    double c_yx = 0.0;
    double gap = 0.0;
    std::optional<Direction> decision;   // empty for a failed replicate
    std::string error;

    bool ok() const noexcept { return decision.has_value(); }
};

struct SweepAggregate {
    double axis_value = 0.0;
    EstimationMode mode = EstimationMode::Coupled;
    double mean_gap = 0.0;
    double sd_gap = 0.0;
    double frac_xtoy = 0.0;
    std::size_t n_rows = 0;   // successful replicates
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepAggregate> aggregates;
};

/// Groups rows by (axis_value, mode) in order of first appearance. Failed
/// rows are excluded; sd uses the n-1 denominator and is 0 for one row.
std::vector<SweepAggregate> aggregate(const std::vector<SweepRow>& rows);

/// Replicate r of every cell uses data and inference seed base + r. Rows come
/// back ordered by axis value, mode, repetition whatever `jobs` is. A failing
/// replicate becomes a failed row.
SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = 1);

/// Writes rows.csv and aggregates.csv into out_dir (created if missing).
std::pair<std::string, std::string> emit_results(const SweepResult& result, const std::string& out_dir);

std::string format_rows_csv(const std::vector<SweepRow>& rows);
std::string format_aggregates_csv(const std::vector<SweepAggregate>& aggregates);
std::vector<SweepRow> parse_rows_csv(const std::string& body);
std::vector<SweepAggregate> parse_aggregates_csv(const std::string& body);

/// Two numeric columns, optional `x,y` header on the first line.
PairedSample parse_sample_csv(const std::string& body);
PairedSample ingest_csv(const std::string& path);
std::string format_sample_csv(const PairedSample& sample);

} // namespace anm

#endif
