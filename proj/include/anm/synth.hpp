#ifndef ANM_SYNTH_HPP
#define ANM_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anm/model.hpp"

namespace anm {

struct NoiseSpec {
    enum class Kind { PoweredGaussian, Gaussian, Laplace, StudentT };
    Kind kind = Kind::PoweredGaussian;
    /// q for PoweredGaussian, sd for Gaussian, scale for Laplace, dof for StudentT.
    double param = 1.0;

    static NoiseSpec powered_gaussian(double q) { return {Kind::PoweredGaussian, q}; }
    static NoiseSpec gaussian(double sd) { return {Kind::Gaussian, sd}; }
    static NoiseSpec laplace(double scale) { return {Kind::Laplace, scale}; }
    static NoiseSpec student_t(double dof) { return {Kind::StudentT, dof}; }

    void validate() const;
};

struct CovariateDist {
    enum class Kind { Uniform, Gaussian };
    Kind kind = Kind::Uniform;
    double lo = -2.5;
    double hi = 2.5;
    double sd = 1.0;

    static CovariateDist uniform(double lo, double hi) { return {Kind::Uniform, lo, hi, 1.0}; }
    static CovariateDist gaussian(double sd) { return {Kind::Gaussian, 0.0, 0.0, sd}; }

    void validate() const;
};

/// The regression function of the generator.
struct MechanismSpec {
    enum class Kind { Cubic, Linear, Table };
    Kind kind = Kind::Cubic;
    double coef = 1.0;                 // b for Cubic (b x^3 + x), a for Linear (a x).
    std::vector<double> knots_x;       // Table: strictly increasing.
    std::vector<double> knots_y;

    static MechanismSpec cubic(double b) { return {Kind::Cubic, b, {}, {}}; }
    static MechanismSpec linear(double a) { return {Kind::Linear, a, {}, {}}; }
    static MechanismSpec table(std::vector<double> xs, std::vector<double> ys);

    /// Piecewise-linear tables extrapolate as constants.
    double operator()(double x) const;
    void validate() const;
};

struct AnmSpec {
    CovariateDist x_dist;
    MechanismSpec f;
    NoiseSpec noise;

    void validate() const;
};

/// X ~ Uniform(-2.5, 2.5), Y = b X^3 + X + |N|^q sign(N).
AnmSpec cubic_generator(double b, double q);
/// X ~ N(0, 1), Y = a X + N(0, s^2).
AnmSpec linear_gaussian_generator(double a, double s);

/// Parses a generator description with keys x_dist, f and noise, e.g.
///   x_dist=uniform:-2.5,2.5   f=table:-1:0,0:1,1:0   noise=laplace:1
/// Unknown keys are an error.
AnmSpec parse_generator(const KeyValues& kv);
CovariateDist parse_covariate_dist(std::string_view v);
MechanismSpec parse_mechanism(std::string_view v);
NoiseSpec parse_noise(std::string_view v);

std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed);
std::vector<double> sample_covariate(const CovariateDist& dist, std::size_t n, std::uint64_t seed);

/// Covariates and noise come from independent child streams of `seed`.
PairedSample sample_anm(const AnmSpec& spec, std::size_t n, std::uint64_t seed);

struct TailDiagnostic {
    /// Hill estimate of the survival-function exponent; +inf when the sample
    /// has no spread.
    double exponent = 0.0;
    /// Set when -log P(|Z - median| > t) grows at least linearly in t across
    /// the thresholds, as for exponentially decaying tails.
    bool exponential_tail = false;
    std::vector<double> hill_estimates;
};

/// Upper-tail fractions used by default: 2% down to 0.1%.
std::vector<double> default_tail_fractions();

/// Throws SampleTooSmall for n < 1000.
TailDiagnostic tail_diagnostic(std::span<const double> values, std::span<const double> tail_fractions);

} // namespace anm

#endif
