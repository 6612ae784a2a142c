#include "tropdeg/toriclimit.hpp"

#include "tropdeg/parallel.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tropdeg {

ToricDegeneration::ToricDegeneration(std::vector<int> b, std::vector<Rational> a, Density density)
    : b_(std::move(b)), a_(std::move(a)), density_(std::move(density))
{
    if (b_.empty()) {
        throw std::invalid_argument("toric degeneration needs at least one coordinate");
    }
    if (a_.size() != b_.size()) {
        throw std::invalid_argument("a and b must have the same length");
    }
    for (auto& x : a_) {
        x.canonicalize();
    }
    gcd_ = 0;
    for (int bi : b_) {
        if (bi < 1) {
            throw std::invalid_argument("multiplicities b_i must be positive");
        }
        gcd_ = std::gcd(gcd_, bi);
    }
}

WeightedSimplex ToricDegeneration::simplex() const
{
    std::vector<std::size_t> idx(b_.size());
    std::iota(idx.begin(), idx.end(), 0);
    return WeightedSimplex(idx, b_);
}

Rational ToricDegeneration::kappa() const
{
    Rational k = a_[0] / b_[0];
    for (std::size_t i = 1; i < b_.size(); ++i) {
        k = std::min<Rational>(k, a_[i] / b_[i]);
    }
    k.canonicalize();
    return k;
}

std::vector<std::size_t> ToricDegeneration::essential_indices() const
{
    const Rational k = kappa();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < b_.size(); ++i) {
        if (a_[i] / b_[i] == k) {
            out.push_back(i);
        }
    }
    return out;
}

namespace {

void require_positive_real(const ScaleFactor& s)
{
    if (s.t().imag() != 0.0 || s.t().real() <= 0.0) {
        throw std::invalid_argument("toric sampling takes t real and positive");
    }
}

// Angles theta with sum b_i theta_i = 0 mod 2pi: free angles uniform, the
// last one uniform among its b_last solutions (this is Haar measure on G).
void haar_angles(const std::vector<int>& b, std::mt19937_64& rng, std::vector<double>& theta)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t last = b.size() - 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < last; ++i) {
        theta[i] = 2.0 * std::numbers::pi * unit(rng);
        sum += b[i] * theta[i];
    }
    std::uniform_int_distribution<int> branch(0, b[last] - 1);
    theta[last] = (2.0 * std::numbers::pi * branch(rng) - sum) / b[last];
}

std::vector<double> kappas(const ToricDegeneration& d)
{
    std::vector<double> k;
    for (std::size_t i = 0; i < d.size(); ++i) {
        k.push_back(Rational(d.a()[i] / d.b()[i]).get_d());
    }
    return k;
}

double product_b(const ToricDegeneration& d)
{
    double p = 1.0;
    for (int bi : d.b()) {
        p *= bi;
    }
    return p;
}

} // namespace

std::vector<std::vector<Complex>> sample_fiber(const ToricDegeneration& d, const ScaleFactor& s, const RealVector& w,
                                               std::uint64_t seed, std::size_t count)
{
    require_positive_real(s);
    if (w.size() != d.size()) {
        throw std::invalid_argument("fiber point has the wrong dimension");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < -1e-12) {
            throw std::invalid_argument("fiber point lies outside the simplex (negative coordinate)");
        }
        total += d.b()[i] * w[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("fiber point lies outside the simplex (sum b_i w_i != 1)");
    }
    const double t = s.t().real();
    auto rng = stream_engine(seed, 0);
    std::vector<double> theta(d.size());
    std::vector<std::vector<Complex>> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        haar_angles(d.b(), rng, theta);
        std::vector<Complex> z(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            z[i] = std::polar(std::pow(t, w[i]), theta[i]);
        }
        out.push_back(std::move(z));
    }
    return out;
}

double omega_density(const ToricDegeneration& d, const std::vector<Complex>& z, std::size_t chart)
{
    double v = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != chart) {
            v /= std::norm(z[j]);
        }
    }
    const double bk = d.b().at(chart);
    return v / (bk * bk);
}

double weight_density(const ToricDegeneration& d, const std::vector<Complex>& z)
{
    double v = d.density(z);
    for (std::size_t i = 0; i < z.size(); ++i) {
        v *= std::pow(std::abs(z[i]), 2.0 * d.a()[i].get_d());
    }
    return v;
}

OmtCheck verify_omt(const ToricDegeneration& d, const ScaleFactor& s, std::size_t trials, std::uint64_t seed)
{
    const std::size_t p = d.fiber_dim();
    const double L = std::log(s.abs_t());
    const auto& b = d.b();
    const auto points = sample_uniform(d.simplex(), seed, std::max<std::size_t>(trials, 1));
    auto rng = stream_engine(seed, 1);
    std::uniform_int_distribution<std::size_t> pick(0, p);
    std::vector<double> theta(d.size());
    OmtCheck out;
    out.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const RealVector& w = points[trial];
        haar_angles(b, rng, theta);
        const std::size_t i0 = pick(rng);    // coordinate solved from the others
        const std::size_t chart = pick(rng); // coordinate dropped by the chart
        std::vector<Complex> z(d.size());
        for (std::size_t j = 0; j < d.size(); ++j) {
            z[j] = std::exp(Complex(L * w[j], theta[j]));
        }
        // d(w_j)/d(w_l) for free l != i0 (same matrix for the angles)
        auto partial = [&](std::size_t j, std::size_t l) -> double {
            if (j == i0) {
                return -static_cast<double>(b[l]) / b[i0];
            }
            return j == l ? 1.0 : 0.0;
        };
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * p), static_cast<Eigen::Index>(2 * p));
        Eigen::Index row = 0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (j == chart) {
                continue;
            }
            Eigen::Index col = 0;
            for (std::size_t l = 0; l < d.size(); ++l) {
                if (l == i0) {
                    continue;
                }
                const Complex dz_dw = z[j] * L * partial(j, l);
                const Complex dz_dtheta = z[j] * Complex(0.0, 1.0) * partial(j, l);
                jac(row, col) = dz_dw.real();
                jac(row + 1, col) = dz_dw.imag();
                jac(row, col + 1) = dz_dtheta.real();
                jac(row + 1, col + 1) = dz_dtheta.imag();
                col += 2;
            }
            row += 2;
        }
        const double det = p == 0 ? 1.0 : std::abs(jac.determinant());
        const double bi0 = b[i0];
        // b_{i0} sheets over the angle torus; sigma_H = dw' / b_{i0}
        const double ratio = bi0 * bi0 * std::pow(s.eps(), static_cast<double>(p)) * det * omega_density(d, z, chart);
        out.max_deviation = std::max(out.max_deviation, std::abs(ratio - 1.0));
    }
    return out;
}

double laplace_integral_quadrature(const ToricDegeneration& d, double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
    const auto k = kappas(d);
    const double kmin = *std::min_element(k.begin(), k.end());
    // eliminate an essential coordinate so every remaining rate is >= 0
    const std::size_t last = static_cast<std::size_t>(std::min_element(k.begin(), k.end()) - k.begin());
    std::vector<double> rates;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i != last) {
            rates.push_back(2.0 * (k[i] - kmin) / eps);
        }
    }
    using boost::math::quadrature::gauss_kronrod;
    // G(m, R) = integral over {u_m..u_{p-1} >= 0, sum <= R} of exp(-sum rate_i u_i).
    // The substitution y = (1 - exp(-rate u)) / (1 - exp(-rate R)) absorbs the
    // exponential factor, leaving a smooth integrand on [0, 1].
    auto segment = [](double rate, double r) { return rate > 0.0 ? -std::expm1(-rate * r) / rate : r; };
    std::function<double(std::size_t, double)> g = [&](std::size_t m, double r) -> double {
        if (m == rates.size()) {
            return 1.0;
        }
        if (r <= 0.0) {
            return 0.0;
        }
        const double rate = rates[m];
        const double scale = segment(rate, r);
        if (m + 1 == rates.size()) {
            return scale;
        }
        auto inner = [&](double y) {
            const double u = rate > 0.0 ? -std::log1p(y * std::expm1(-rate * r)) / rate : y * r;
            return g(m + 1, std::max(0.0, r - u));
        };
        return scale * gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 12, 1e-12);
    };
    return g(0, 1.0) / product_b(d);
}

double laplace_integral_scaled(const ToricDegeneration& d, double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
    const auto k = kappas(d);
    const double kmin = *std::min_element(k.begin(), k.end());
    const std::size_t p = d.fiber_dim();
    // after u_i = b_i w_i the integral is over the standard simplex, and
    // sigma_H(dw) = du' / prod b
    std::vector<double> distinct(k.begin(), k.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const double simplex_volume = 1.0 / std::tgamma(static_cast<double>(p) + 1.0) / product_b(d);
    if (distinct.size() == 1) {
        return simplex_volume;
    }
    if (distinct.size() == 2) {
        // S = sum of the non-essential u_i is Beta(s, r) under the uniform law
        const auto s = static_cast<double>(std::count(k.begin(), k.end(), distinct[1]));
        const double x = 2.0 * (distinct[1] - kmin) / eps;
        const double laplace = boost::math::hypergeometric_1F1(s, static_cast<double>(p) + 1.0, -x);
        return simplex_volume * laplace;
    }
    return laplace_integral_quadrature(d, eps);
}

double laplace_integral(const ToricDegeneration& d, double eps)
{
    const double kmin = d.kappa().get_d();
    return std::exp(-2.0 * kmin / eps) * laplace_integral_scaled(d, eps);
}

namespace {

struct MomentSums {
    double w = 0.0;  // sum W
    double w2 = 0.0; // sum W^2
    std::vector<double> f1, f1_w2, f1_w2f; // per coordinate: sum W f, sum W^2 f, sum W^2 f^2 for f = w_i
    std::vector<double> f2, f2_w2, f2_w2f; // same for f = w_i^2
    std::size_t accepted = 0;
    std::size_t drawn = 0;

    explicit MomentSums(std::size_t n) : f1(n), f1_w2(n), f1_w2f(n), f2(n), f2_w2(n), f2_w2f(n) {}

    void merge(const MomentSums& o)
    {
        w += o.w;
        w2 += o.w2;
        for (std::size_t i = 0; i < f1.size(); ++i) {
            f1[i] += o.f1[i];
            f1_w2[i] += o.f1_w2[i];
            f1_w2f[i] += o.f1_w2f[i];
            f2[i] += o.f2[i];
            f2_w2[i] += o.f2_w2[i];
            f2_w2f[i] += o.f2_w2f[i];
        }
        accepted += o.accepted;
        drawn += o.drawn;
    }
};

// Proposal for exp(-sum lambda_i u_i) on the standard simplex: truncated
// exponentials for the non-essential coordinates, the remainder R spread
// uniformly over the essential ones. Importance weight is R^(r-1) times rho.
MomentSums importance_sample(const ToricDegeneration& d, const ScaleFactor& s, const MonteCarloOptions& mc,
                             const std::vector<double>& lambda, const std::vector<bool>& essential)
{
    const std::size_t n = d.size();
    const std::size_t r = static_cast<std::size_t>(std::count(essential.begin(), essential.end(), true));
    const std::size_t chunk_size = kDefaultChunkSize;
    const std::size_t chunks = (mc.count + chunk_size - 1) / chunk_size;
    std::vector<MomentSums> sums(chunks, MomentSums(n));
    const bool use_density = d.has_density();
    if (use_density) {
        require_positive_real(s);
    }
    parallel_chunks(mc.count, chunk_size, mc.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto rng = stream_engine(mc.seed, chunk);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::exponential_distribution<double> exp1(1.0);
        MomentSums& acc = sums[chunk];
        std::vector<double> u(n);
        std::vector<double> theta(n);
        std::vector<Complex> z(n);
        for (std::size_t k = begin; k < end;) {
            ++acc.drawn;
            double used = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (essential[i]) {
                    continue;
                }
                // inverse CDF of Exp(lambda) truncated to [0, 1]
                const double q = unit(rng);
                u[i] = -std::log1p(-q * -std::expm1(-lambda[i])) / lambda[i];
                used += u[i];
            }
            if (used > 1.0) {
                continue;
            }
            const double rest = 1.0 - used;
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (essential[i]) {
                    u[i] = exp1(rng);
                    total += u[i];
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (essential[i]) {
                    u[i] = rest * u[i] / total;
                }
            }
            double weight = std::pow(rest, static_cast<double>(r) - 1.0);
            if (use_density) {
                haar_angles(d.b(), rng, theta);
                const double t = s.t().real();
                for (std::size_t i = 0; i < n; ++i) {
                    z[i] = std::polar(std::pow(t, u[i] / d.b()[i]), theta[i]);
                }
                weight *= d.density(z);
            }
            acc.w += weight;
            acc.w2 += weight * weight;
            for (std::size_t i = 0; i < n; ++i) {
                const double wi = u[i] / d.b()[i];
                const double sq = wi * wi;
                acc.f1[i] += weight * wi;
                acc.f1_w2[i] += weight * weight * wi;
                acc.f1_w2f[i] += weight * weight * sq;
                acc.f2[i] += weight * sq;
                acc.f2_w2[i] += weight * weight * sq;
                acc.f2_w2f[i] += weight * weight * sq * sq;
            }
            ++acc.accepted;
            ++k;
        }
    });
    MomentSums total(n);
    for (const auto& c : sums) {
        total.merge(c);
    }
    return total;
}

void proposal_setup(const ToricDegeneration& d, double eps, std::vector<double>& lambda, std::vector<bool>& essential)
{
    const auto k = kappas(d);
    const Rational kmin = d.kappa();
    lambda.assign(d.size(), 0.0);
    essential.assign(d.size(), false);
    for (std::size_t i = 0; i < d.size(); ++i) {
        essential[i] = d.a()[i] / d.b()[i] == kmin;
        if (!essential[i]) {
            lambda[i] = 2.0 * (k[i] - kmin.get_d()) / eps;
        }
    }
}

// Estimate of |t|^{-2 kappa} * integral of exp(-2 a.w/eps) rho over the
// simplex against sigma_H, with its relative standard error.
void weighted_mass(const ToricDegeneration& d, const ScaleFactor& s, const MomentSums& m,
                   const std::vector<double>& lambda, const std::vector<bool>& essential, double& value,
                   double& rel_se)
{
    const double n = static_cast<double>(m.accepted);
    const double mean = m.w / n;
    const double var = std::max(0.0, m.w2 / n - mean * mean);
    const double accept = static_cast<double>(m.accepted) / static_cast<double>(m.drawn);
    const std::size_t r = static_cast<std::size_t>(std::count(essential.begin(), essential.end(), true));
    double factor = 1.0 / std::tgamma(static_cast<double>(r));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!essential[i]) {
            factor *= -std::expm1(-lambda[i]) / lambda[i];
        }
    }
    value = accept * mean * factor / product_b(d);
    rel_se = std::sqrt(var / (n * mean * mean) + (1.0 - accept) / (accept * static_cast<double>(m.drawn)));
    (void)s;
}

} // namespace

PushforwardReport pushforward_limit(const ToricDegeneration& d, const ScaleFactor& s, const MonteCarloOptions& mc)
{
    if (mc.count < 10000) {
        throw std::invalid_argument("pushforward_limit needs at least 10^4 samples");
    }
    std::vector<double> lambda;
    std::vector<bool> essential;
    proposal_setup(d, s.eps(), lambda, essential);
    const MomentSums m = importance_sample(d, s, mc, lambda, essential);

    PushforwardReport report;
    report.samples = m.accepted;
    report.eps = s.eps();
    const double r = static_cast<double>(std::count(essential.begin(), essential.end(), true));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (essential[i]) {
            report.essential_face.push_back(i);
        }
    }
    auto self_normalized = [&](double sum_wf, double sum_w2f, double sum_w2ff, double& mean, double& se) {
        mean = sum_wf / m.w;
        const double num = sum_w2ff - 2.0 * mean * sum_w2f + mean * mean * m.w2;
        se = std::sqrt(std::max(0.0, num)) / m.w;
    };
    for (std::size_t i = 0; i < d.size(); ++i) {
        CoordinateMoments c;
        self_normalized(m.f1[i], m.f1_w2[i], m.f1_w2f[i], c.mean, c.mean_se);
        self_normalized(m.f2[i], m.f2_w2[i], m.f2_w2f[i], c.second, c.second_se);
        if (essential[i]) {
            const double bi = d.b()[i];
            c.expected_mean = 1.0 / (r * bi);
            c.expected_second = 2.0 / (r * (r + 1.0) * bi * bi);
        }
        report.coordinates.push_back(c);
    }
    double value = 0.0;
    double rel_se = 0.0;
    weighted_mass(d, s, m, lambda, essential, value, rel_se);
    const double exact = laplace_integral_scaled(d, s.eps());
    report.total_mass = value / exact;
    report.total_mass_se = rel_se * report.total_mass;
    return report;
}

MassAsymptotics mass_asymptotics(const ToricDegeneration& d, const std::vector<double>& ray, const MonteCarloOptions& mc)
{
    if (ray.size() < 4) {
        throw std::invalid_argument("mass asymptotics needs at least 4 values of |t|");
    }
    const bool decreasing = ray[1] < ray[0];
    for (std::size_t k = 1; k < ray.size(); ++k) {
        if ((ray[k] < ray[k - 1]) != decreasing || ray[k] == ray[k - 1]) {
            throw std::invalid_argument("ray of |t| values must be strictly monotone");
        }
    }
    const auto [lo, hi] = std::minmax_element(ray.begin(), ray.end());
    if (*hi / *lo < 1e3 * (1.0 - 1e-12)) {
        throw std::invalid_argument("ray must span at least 3 decades of |t|");
    }
    const std::size_t p = d.fiber_dim();
    MassAsymptotics out;
    out.monte_carlo = d.has_density();
    out.kappa_predicted = d.kappa();
    out.d_predicted = static_cast<int>(d.essential_indices().size()) - 1;

    // log M = p log(2 pi) - p log eps - 2 kappa / eps + log(scaled integral)
    for (double abs_t : ray) {
        ScaleFactor s{Complex(abs_t, 0.0)};
        const double eps = s.eps();
        double scaled = laplace_integral_scaled(d, eps);
        double se = 0.0;
        if (d.has_density()) {
            std::vector<double> lambda;
            std::vector<bool> essential;
            proposal_setup(d, eps, lambda, essential);
            const auto m = importance_sample(d, s, mc, lambda, essential);
            weighted_mass(d, s, m, lambda, essential, scaled, se);
        }
        const double lm = static_cast<double>(p) * (std::log(2.0 * std::numbers::pi) - std::log(eps)) -
                          2.0 * out.kappa_predicted.get_d() / eps + std::log(scaled);
        MassRow row;
        row.abs_t = abs_t;
        row.eps = eps;
        row.log_mass = lm;
        row.standard_error = se;
        out.rows.push_back(row);
    }

    std::vector<Rational> candidates;
    for (std::size_t i = 0; i < d.size(); ++i) {
        Rational k = d.a()[i] / d.b()[i];
        k.canonicalize();
        if (std::find(candidates.begin(), candidates.end(), k) == candidates.end()) {
            candidates.push_back(k);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& kc : candidates) {
        for (int dc = 0; dc <= static_cast<int>(p); ++dc) {
            // least-squares slope of log(M |t|^{-2k} eps^d) against log eps
            double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
            const double n = static_cast<double>(ray.size());
            for (const auto& row : out.rows) {
                const double x = std::log(row.eps);
                const double y = row.log_mass + 2.0 * kc.get_d() / row.eps + dc * x;
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            if (std::abs(slope) < best) {
                best = std::abs(slope);
                out.kappa_hat = kc;
                out.d_hat = dc;
                out.residual_slope = slope;
            }
        }
    }
    std::size_t smallest = 0;
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
        auto& row = out.rows[k];
        row.scaled_mass =
            std::exp(row.log_mass + 2.0 * out.kappa_hat.get_d() / row.eps + out.d_hat * std::log(row.eps));
        if (row.abs_t < out.rows[smallest].abs_t) {
            smallest = k;
        }
    }
    out.c_hat = out.rows[smallest].scaled_mass;
    out.kappa_agrees = out.kappa_hat == out.kappa_predicted;
    out.d_agrees = out.d_hat == out.d_predicted;
    return out;
}

} // namespace tropdeg
