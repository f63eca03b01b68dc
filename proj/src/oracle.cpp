#include "anm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "anm/errors.hpp"
#include "anm/seed.hpp"

namespace anm::oracle {

namespace {

constexpr double inv_sqrt_2pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;

double normal_pdf(double z)
{
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

std::vector<double> linspace(double lo, double hi, std::size_t count)
{
    std::vector<double> g(count);
    const double dx = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + dx * static_cast<double>(i);
    g.back() = hi;
    return g;
}

/// Trapezoid weights on a uniform grid.
double trapezoid(std::span<const double> v, double dx)
{
    if (v.size() < 2)
        return 0.0;
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        s += v[i];
    return s * dx;
}

struct DensityOnLine {
    std::function<double(double)> pdf;
    double lo = 0.0;
    double hi = 0.0;
};

DensityOnLine covariate_density(const CovariateDist& d)
{
    if (d.kind == CovariateDist::Kind::Uniform) {
        const double lo = d.lo, hi = d.hi, p = 1.0 / (d.hi - d.lo);
        return {[=](double x) { return (x >= lo && x <= hi) ? p : 0.0; }, lo, hi};
    }
    const double sd = d.sd;
    return {[=](double x) { return normal_pdf(x / sd) / sd; }, -8.0 * sd, 8.0 * sd};
}

DensityOnLine noise_density(const NoiseSpec& spec)
{
    const double p = spec.param;
    switch (spec.kind) {
    case NoiseSpec::Kind::Gaussian:
        return {[=](double t) { return normal_pdf(t / p) / p; }, -12.0 * p, 12.0 * p};
    case NoiseSpec::Kind::Laplace:
        return {[=](double t) { return std::exp(-std::abs(t) / p) / (2.0 * p); }, -40.0 * p, 40.0 * p};
    case NoiseSpec::Kind::StudentT: {
        const double c = std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p)) / std::sqrt(p * std::numbers::pi);
        return {[=](double t) { return c * std::pow(1.0 + t * t / p, -0.5 * (p + 1.0)); }, -200.0, 200.0};
    }
    case NoiseSpec::Kind::PoweredGaussian: {
        if (p > 1.0)
            throw std::invalid_argument("powered-gaussian noise with q > 1 has an unbounded density");
        if (p == 1.0)
            return {normal_pdf, -12.0, 12.0};
        const double reach = std::pow(10.0, p);
        return {[=](double t) {
                    const double a = std::abs(t);
                    if (a == 0.0)
                        return 0.0;
                    const double z = std::pow(a, 1.0 / p);
                    return normal_pdf(z) * z / (p * a);
                },
                -reach, reach};
    }
    }
    throw std::invalid_argument("unknown noise");
}

/// Piecewise-linear table, constant outside its range.
struct Table {
    double lo = 0.0;
    double dx = 1.0;
    std::vector<double> values;

    double operator()(double t) const
    {
        const double pos = (t - lo) / dx;
        if (pos <= 0.0)
            return values.front();
        const double last = static_cast<double>(values.size() - 1);
        if (pos >= last)
            return values.back();
        const auto i = static_cast<std::size_t>(pos);
        const double w = pos - static_cast<double>(i);
        return values[i] + w * (values[i + 1] - values[i]);
    }
};

} // namespace

double AnalyticDist::density(double t) const
{
    switch (kind) {
    case Kind::Gaussian:
        return normal_pdf(t / a) / a;
    case Kind::Uniform:
        return (t >= a && t <= b) ? 1.0 / (b - a) : 0.0;
    case Kind::Laplace:
        return std::exp(-std::abs(t) / a) / (2.0 * a);
    }
    return 0.0;
}

std::pair<double, double> AnalyticDist::support() const
{
    switch (kind) {
    case Kind::Gaussian:
        return {-12.0 * a, 12.0 * a};
    case Kind::Uniform:
        return {a, b};
    case Kind::Laplace:
        return {-45.0 * a, 45.0 * a};
    }
    return {0.0, 0.0};
}

double analytic_entropy(const AnalyticDist& d)
{
    switch (d.kind) {
    case AnalyticDist::Kind::Gaussian:
        return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * d.a * d.a);
    case AnalyticDist::Kind::Uniform:
        if (!(d.a < d.b))
            throw std::invalid_argument("uniform needs lo < hi");
        return std::log(d.b - d.a);
    case AnalyticDist::Kind::Laplace:
        return 1.0 + std::log(2.0 * d.a);
    }
    return 0.0;
}

NumericEntropy numeric_entropy_tabulated(std::span<const double> density, double dx)
{
    std::vector<double> integrand(density.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double p = density[i];
        integrand[i] = p > 0.0 ? -p * std::log(p) : 0.0;
    }
    NumericEntropy out;
    out.value = trapezoid(integrand, dx);
    out.mass = trapezoid(density, dx);
    out.normalized = std::abs(out.mass - 1.0) <= 1e-3;
    return out;
}

NumericEntropy numeric_entropy(const std::function<double(double)>& density, double lo, double hi,
                               std::size_t grid_points)
{
    if (grid_points < 100)
        throw std::invalid_argument("numeric entropy needs at least 100 grid points");
    if (!(lo < hi))
        throw std::invalid_argument("numeric entropy needs lo < hi");
    const auto grid = linspace(lo, hi, grid_points);
    std::vector<double> p(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        p[i] = density(grid[i]);
    return numeric_entropy_tabulated(p, (hi - lo) / static_cast<double>(grid_points - 1));
}

namespace {

std::vector<std::size_t> quantile_bins(std::span<const double> v, std::size_t bins)
{
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<std::size_t> bin(n);
    for (std::size_t r = 0; r < n; ++r)
        bin[order[r]] = r * bins / n;
    return bin;
}

} // namespace

double histogram_mutual_information(std::span<const double> a, std::span<const double> b, std::size_t bins)
{
    if (a.size() != b.size())
        throw LengthMismatch(a.size(), b.size());
    if (a.empty())
        throw EmptySample();
    if (bins < 1)
        throw std::invalid_argument("need at least one bin");
    const auto ba = quantile_bins(a, bins);
    const auto bb = quantile_bins(b, bins);
    std::vector<double> joint(bins * bins, 0.0), ma(bins, 0.0), mb(bins, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[ba[i] * bins + bb[i]] += 1.0;
        ma[ba[i]] += 1.0;
        mb[bb[i]] += 1.0;
    }
    const auto n = static_cast<double>(a.size());
    double mi = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        for (std::size_t j = 0; j < bins; ++j) {
            const double c = joint[i * bins + j];
            if (c > 0.0)
                mi += (c / n) * std::log(c * n / (ma[i] * mb[j]));
        }
    }
    return mi;
}

IdentityCheck lemma1_check_linear_gaussian(double a, double s)
{
    if (!(s > 0.0))
        throw std::invalid_argument("noise sd must be positive");
    const double unit = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    const double var_y = a * a + s * s;
    IdentityCheck c;
    c.h_x = unit;
    c.h_res_fwd = unit + std::log(s);
    c.h_y = unit + 0.5 * std::log(var_y);
    c.h_res_bwd = unit + std::log(s) - 0.5 * std::log(var_y);
    c.mi_fwd = 0.0;
    c.mi_bwd = 0.0;
    c.left = c.h_x + c.h_res_fwd;
    c.right = c.h_y + c.h_res_bwd - (c.mi_bwd - c.mi_fwd);
    c.discrepancy = std::abs(c.left - c.right);
    return c;
}

IdentityCheck lemma1_check_numeric(const AnmSpec& spec, std::size_t n_mc, std::uint64_t seed,
                                   const NumericCheckOptions& opt)
{
    spec.validate();
    if (spec.f.kind == MechanismSpec::Kind::Table)
        throw std::invalid_argument("numeric identity check supports cubic and linear mechanisms");
    if (n_mc < 1000)
        throw SampleTooSmall("numeric identity check needs a Monte Carlo sample");

    const auto px = covariate_density(spec.x_dist);
    const auto pe = noise_density(spec.noise);
    const auto& f = spec.f;

    IdentityCheck out;
    auto note = [&](const NumericEntropy& e, const char* what) {
        if (!e.normalized)
            out.warnings.push_back(std::string("NonNormalized: ") + what + " mass " + std::to_string(e.mass));
    };

    // Quadrature nodes over the covariate.
    const auto xq = linspace(px.lo, px.hi, opt.quadrature_points);
    const double dxq = (px.hi - px.lo) / static_cast<double>(opt.quadrature_points - 1);
    std::vector<double> wx(xq.size()), fx(xq.size());
    for (std::size_t i = 0; i < xq.size(); ++i) {
        wx[i] = px.pdf(xq[i]) * dxq * ((i == 0 || i + 1 == xq.size()) ? 0.5 : 1.0);
        fx[i] = f(xq[i]);
    }
    const auto [fmin, fmax] = std::minmax_element(fx.begin(), fx.end());

    // p_Y(y) = int p_X(x) p_eta(y - f(x)) dx; numerator of E[X|y] alongside.
    auto joint_moments = [&](double y) {
        double p = 0.0, m = 0.0;
        for (std::size_t i = 0; i < xq.size(); ++i) {
            if (wx[i] == 0.0)
                continue;
            const double w = wx[i] * pe.pdf(y - fx[i]);
            p += w;
            m += w * xq[i];
        }
        return std::pair{p, m};
    };

    out.h_x = [&] {
        const auto e = numeric_entropy(px.pdf, px.lo, px.hi, opt.grid_points);
        note(e, "H(X)");
        return e.value;
    }();
    out.h_res_fwd = [&] {
        const auto e = numeric_entropy(pe.pdf, pe.lo, pe.hi, opt.grid_points);
        note(e, "H(eta_f)");
        return e.value;
    }();

    const double ylo = *fmin + pe.lo;
    const double yhi = *fmax + pe.hi;
    const auto yg = linspace(ylo, yhi, opt.grid_points);
    const double dy = (yhi - ylo) / static_cast<double>(opt.grid_points - 1);
    std::vector<double> py(yg.size());
    for (std::size_t i = 0; i < yg.size(); ++i)
        py[i] = joint_moments(yg[i]).first;
    {
        const auto e = numeric_entropy_tabulated(py, dy);
        note(e, "H(Y)");
        out.h_y = e.value;
    }

    // Central 99.9% of Y from the cumulative trapezoid of p_Y.
    std::vector<double> cdf(yg.size(), 0.0);
    for (std::size_t i = 1; i < yg.size(); ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (py[i] + py[i - 1]) * dy;
    const double total = cdf.back();
    auto quantile = [&](double level) {
        const double target = level * total;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
        if (it == cdf.begin())
            return yg.front();
        if (it == cdf.end())
            return yg.back();
        const auto i = static_cast<std::size_t>(it - cdf.begin());
        const double w = (target - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
        return yg[i - 1] + w * dy;
    };
    const double glo = quantile(0.0005);
    const double ghi = quantile(0.9995);

    Table g;
    g.lo = glo;
    g.dx = (ghi - glo) / static_cast<double>(opt.conditional_mean_points - 1);
    g.values.resize(opt.conditional_mean_points);
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const double y = glo + g.dx * static_cast<double>(i);
        const auto [p, m] = joint_moments(y);
        g.values[i] = p > 0.0 ? m / p : 0.0;
    }
    const auto [gmin, gmax] = std::minmax_element(g.values.begin(), g.values.end());

    // p_E(e) = int p_X(e + g(y)) p_eta(y - f(e + g(y))) dy for E = X - g(Y).
    {
        const auto yq = linspace(ylo, yhi, opt.residual_quadrature_points);
        const double dyq = (yhi - ylo) / static_cast<double>(opt.residual_quadrature_points - 1);
        std::vector<double> gy(yq.size());
        for (std::size_t j = 0; j < yq.size(); ++j)
            gy[j] = g(yq[j]);
        const double elo = px.lo - *gmax;
        const double ehi = px.hi - *gmin;
        const auto eg = linspace(elo, ehi, opt.grid_points);
        std::vector<double> pe_res(eg.size());
        for (std::size_t i = 0; i < eg.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < yq.size(); ++j) {
                const double x = eg[i] + gy[j];
                const double pxv = px.pdf(x);
                if (pxv == 0.0)
                    continue;
                const double w = (j == 0 || j + 1 == yq.size()) ? 0.5 : 1.0;
                s += w * pxv * pe.pdf(yq[j] - f(x));
            }
            pe_res[i] = s * dyq;
        }
        const auto e = numeric_entropy_tabulated(pe_res, (ehi - elo) / static_cast<double>(opt.grid_points - 1));
        note(e, "H(eta_g)");
        out.h_res_bwd = e.value;
    }

    // Mutual-information bracket from a seeded Monte Carlo sample.
    const auto mc = sample_anm(spec, n_mc, derive_seed(seed, stream::oracle_mc));
    const auto bins = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n_mc)) - 1e-9));
    std::vector<double> eta_f(n_mc), eta_g(n_mc);
    for (std::size_t i = 0; i < n_mc; ++i) {
        eta_f[i] = mc.ys()[i] - f(mc.xs()[i]);
        eta_g[i] = mc.xs()[i] - g(mc.ys()[i]);
    }
    out.mi_fwd = histogram_mutual_information(eta_f, mc.xs(), bins);
    out.mi_bwd = histogram_mutual_information(eta_g, mc.ys(), bins);

    out.left = out.h_x + out.h_res_fwd;
    out.right = out.h_y + out.h_res_bwd - (out.mi_bwd - out.mi_fwd);
    out.discrepancy = std::abs(out.left - out.right);
    return out;
}

} // namespace anm::oracle
