#ifndef ANM_ORACLE_HPP
#define ANM_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "anm/synth.hpp"

// Deterministic reference computations used to check the estimators. Nothing
// here is on the scoring path.

namespace anm::oracle {

struct AnalyticDist {
    enum class Kind { Gaussian, Uniform, Laplace };
    Kind kind = Kind::Gaussian;
    double a = 1.0;   // sd, lo, or scale
    double b = 0.0;   // hi for Uniform

    static AnalyticDist gaussian(double sd) { return {Kind::Gaussian, sd, 0.0}; }
    static AnalyticDist uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
    static AnalyticDist laplace(double scale) { return {Kind::Laplace, scale, 0.0}; }

    /// Uniform density is taken on the closed interval.
    double density(double t) const;
    /// Interval holding all but a negligible part of the mass.
    std::pair<double, double> support() const;
};

double analytic_entropy(const AnalyticDist& dist);

struct NumericEntropy {
    double value = 0.0;
    double mass = 0.0;   // trapezoid integral of the density on the same grid
    bool normalized = true;   // |mass - 1| <= 1e-3
};

/// Composite trapezoid integral of -p ln p over [lo, hi] (0 ln 0 = 0).
NumericEntropy numeric_entropy(const std::function<double(double)>& density, double lo, double hi,
                               std::size_t grid_points);

/// Same, for a density already tabulated on a uniform grid with spacing dx.
NumericEntropy numeric_entropy_tabulated(std::span<const double> density, double dx);

/// Plug-in mutual information (nats) of a 2-D histogram whose cells are
/// marginal quantile bins, `bins` per axis.
double histogram_mutual_information(std::span<const double> a, std::span<const double> b, std::size_t bins);

/// Terms of the entropy identity
///   H(X) + H(eta_f) = H(Y) + H(eta_g) - {I(eta_g, Y) - I(eta_f, X)}.
struct IdentityCheck {
    double h_x = 0.0;
    double h_y = 0.0;
    double h_res_fwd = 0.0;   // H(Y - f(X))
    double h_res_bwd = 0.0;   // H(X - g(Y))
    double mi_fwd = 0.0;      // I(eta_f, X)
    double mi_bwd = 0.0;      // I(eta_g, Y)
    double left = 0.0;
    double right = 0.0;
    double discrepancy = 0.0;   // |left - right|
    std::vector<std::string> warnings;
};

/// Closed form for X ~ N(0,1), Y = aX + N(0, s^2), f(x) = ax and
/// g(y) = ay / (a^2 + s^2). Both mutual-information terms vanish.
IdentityCheck lemma1_check_linear_gaussian(double a, double s);

struct NumericCheckOptions {
    std::size_t grid_points = 4001;       // 1-D density grids
    std::size_t quadrature_points = 4001; // inner integrals over x
    std::size_t residual_quadrature_points = 20001;   // inner integral over y for H(X - g(Y))
    std::size_t conditional_mean_points = 2001;
};

/// Numerical evaluation of every term for a generator with a bounded noise
/// density: entropies by quadrature of tabulated densities, g(y) = E[X|y] by
/// quadrature on a 2001-point grid over the central 99.9% of Y (linear
/// interpolation, constant beyond), mutual informations by histogram plug-in
/// on `n_mc` seeded draws with ceil(n_mc^(1/3)) bins per axis.
IdentityCheck lemma1_check_numeric(const AnmSpec& spec, std::size_t n_mc, std::uint64_t seed,
                                   const NumericCheckOptions& options = {});

} // namespace anm::oracle

#endif
