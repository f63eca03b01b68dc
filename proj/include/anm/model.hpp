#ifndef ANM_MODEL_HPP
#define ANM_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anm/kernel.hpp"

namespace anm {

/// Ordered (x, y) observations. Both columns have the same length n >= 1 and
/// hold only finite values.
class PairedSample {
public:
    PairedSample(std::vector<double> xs, std::vector<double> ys);

    std::size_t size() const noexcept { return xs_.size(); }
    const std::vector<double>& xs() const noexcept { return xs_; }
    const std::vector<double>& ys() const noexcept { return ys_; }

    /// The same observations with the roles of x and y exchanged.
    PairedSample swapped() const { return PairedSample(ys_, xs_); }

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

PairedSample validate_sample(std::span<const std::pair<double, double>> raw);
PairedSample validate_sample(std::vector<double> xs, std::vector<double> ys);

enum class Direction { XtoY, YtoX, Abstain };

std::string direction_name(Direction d);

enum class EstimationMode { Coupled, Decoupled };

std::string mode_name(EstimationMode m);

/// How a bandwidth is chosen.
///
/// When `relative` is set, every value (the fixed value, the schedule constant,
/// or each grid entry) is a multiple of the sample standard deviation of the
/// variable being smoothed, which makes the choice scale-equivariant.
struct BandwidthSpec {
    enum class Kind { Fixed, TheorySchedule, CrossValidation, LooLikelihood };

    Kind kind = Kind::Fixed;
    double value = 1.0;          // Fixed value, or schedule constant c.
    double exponent = 0.2;       // TheorySchedule: bandwidth = c * n^-exponent.
    int folds = 5;               // CrossValidation.
    std::vector<double> grid;    // CrossValidation, LooLikelihood.
    bool relative = false;

    static BandwidthSpec fixed(double value, bool relative = false);
    static BandwidthSpec theory(double c, double exponent);
    static BandwidthSpec cross_validation(int folds, std::vector<double> grid, bool relative);
    static BandwidthSpec loo(std::vector<double> grid, bool relative);

    /// Throws ConfigError when an invariant is broken.
    void validate() const;
};

/// Geometric grid of `count` points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

/// 20 points over [0.01, 1] x sd, scaled by the covariate spread.
std::vector<double> default_regression_grid();
/// 30 points over [1e-3, 10] x sd, scaled by the sample spread.
std::vector<double> default_entropy_grid();

enum class RegressorKind { BoxKernel, NadarayaWatson, KernelRidge };

struct InferenceConfig {
    EstimationMode mode = EstimationMode::Coupled;
    RegressorKind regressor = RegressorKind::BoxKernel;
    Kernel regression_kernel = Kernel::Biweight;   // Nadaraya-Watson weights.
    double ridge_lambda = 0.1;                     // Kernel ridge penalty.
    BandwidthSpec regression_bandwidth =
        BandwidthSpec::cross_validation(5, default_regression_grid(), true);
    BandwidthSpec entropy_bandwidth = BandwidthSpec::loo(default_entropy_grid(), true);
    Kernel entropy_kernel = Kernel::Biweight;
    double truncation_bound = 0.0;   // <= 0 means auto.
    double tau0 = 0.0;
    double tau_exponent = 0.25;
    std::uint64_t seed = 0;

    bool auto_truncation() const noexcept { return truncation_bound <= 0.0; }

    /// Throws ConfigError on invalid settings; returns non-fatal warnings.
    std::vector<std::string> validate() const;
};

/// Defaults used by the command-line tool: a decaying abstention margin.
InferenceConfig cli_default_config();

/// tau0 * n^-tau_exponent.
double compute_tau(std::size_t n, double tau0, double tau_exponent);

struct DirectionScore {
    double h_x = 0.0;
    double h_y = 0.0;
    double h_res_fwd = 0.0;
    double h_res_bwd = 0.0;
    double c_xy = 0.0;
    double c_yx = 0.0;
    double gap = 0.0;
    double tau = 0.0;
    Direction decision = Direction::Abstain;
    std::size_t n = 0;
    // Bandwidths actually used, for diagnostics.
    double h_fwd = 0.0;
    double h_bwd = 0.0;
    double sigma_res_fwd = 0.0;
    double sigma_res_bwd = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
    std::vector<std::string> warnings;
};

// Flat key=value configuration files.

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses `key=value` lines. Blank lines and lines starting with '#' are
/// skipped; whitespace around keys and values is trimmed.
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values_file(const std::string& path);

BandwidthSpec parse_bandwidth(std::string_view text);
std::string format_bandwidth(const BandwidthSpec& spec);

/// Applies one config key to `config`. Returns false for keys that are not
/// inference-config keys.
bool apply_config_key(InferenceConfig& config, std::string_view key, std::string_view value);

/// Builds a config from key=value pairs starting from `base`. Unknown keys are
/// an error.
InferenceConfig parse_config(const KeyValues& kv, InferenceConfig base = InferenceConfig{});
InferenceConfig read_config_file(const std::string& path, InferenceConfig base = InferenceConfig{});

std::string format_config(const InferenceConfig& config);

} // namespace anm

#endif
