#pragma once

// The local toric model Z_t = {prod z_i^{b_i} = t} in the closed unit
// polydisc, with weighted volume forms prod |z_i|^{2 a_i} rho |Omega_t|^2.
// |Omega_t|^2 uses the normalization (i/2) dz ^ dzbar = Lebesgue measure.

#include "tropdeg/amoeba.hpp"
#include "tropdeg/polyhedral.hpp"
#include "tropdeg/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace tropdeg {

class ToricDegeneration {
public:
    using Density = std::function<double(const std::vector<Complex>&)>;

    /// b_i >= 1; a_i rational; `density` defaults to the constant 1.
    ToricDegeneration(std::vector<int> b, std::vector<Rational> a, Density density = {});

    const std::vector<int>& b() const { return b_; }
    const std::vector<Rational>& a() const { return a_; }
    std::size_t size() const { return b_.size(); }
    std::size_t fiber_dim() const { return b_.size() - 1; }
    /// Number of connected components of Z_t, gcd(b_i).
    int components() const { return gcd_; }
    bool has_density() const { return static_cast<bool>(density_); }
    double density(const std::vector<Complex>& z) const { return density_ ? density_(z) : 1.0; }

    WeightedSimplex simplex() const;
    /// kappa = min a_i / b_i.
    Rational kappa() const;
    /// Indices with a_i / b_i = kappa.
    std::vector<std::size_t> essential_indices() const;

private:
    std::vector<int> b_;
    std::vector<Rational> a_;
    Density density_;
    int gcd_;
};

/// Haar-random points of the fiber Log_t^{-1}(w) inside Z_t: z_i = t^{w_i} e^{i theta_i}
/// with sum b_i theta_i = 0 mod 2pi. Requires real positive t.
std::vector<std::vector<Complex>> sample_fiber(const ToricDegeneration& d, const ScaleFactor& s, const RealVector& w,
                                               std::uint64_t seed, std::size_t count);

/// Density of |Omega_t|^2 against Lebesgue measure in the chart that drops
/// coordinate k: prod_{j != k} |z_j|^-2 / b_k^2.
double omega_density(const ToricDegeneration& d, const std::vector<Complex>& z, std::size_t chart);

/// prod |z_i|^{2 a_i} * rho(z).
double weight_density(const ToricDegeneration& d, const std::vector<Complex>& z);

struct OmtCheck {
    double max_deviation = 0.0;
    std::size_t trials = 0;
};

/// At random (w, theta) and random choices of parametrizing/chart coordinates,
/// compares eps^p * (pushforward density of |Omega_t|^2 along Log_t) with
/// (2pi)^p sigma_H, using the Jacobian of (w, theta) -> z. Returns the largest
/// relative deviation of the ratio from 1.
OmtCheck verify_omt(const ToricDegeneration& d, const ScaleFactor& s, std::size_t trials, std::uint64_t seed);

/// I(eps) = integral over the simplex of exp(-2 a.w / eps) d sigma_H.
double laplace_integral(const ToricDegeneration& d, double eps);
/// |t|^{-2 kappa} I(eps), which stays representable when kappa > 0.
double laplace_integral_scaled(const ToricDegeneration& d, double eps);
/// Same quantity by nested adaptive quadrature, without the closed form.
double laplace_integral_quadrature(const ToricDegeneration& d, double eps);

struct MassRow {
    double abs_t = 0.0;
    double eps = 0.0;
    double log_mass = 0.0;      // log M(t)
    double scaled_mass = 0.0;   // M(t) |t|^{-2 kappa_hat} eps^{d_hat}
    double standard_error = 0.0; // relative, Monte-Carlo only
};

struct MassAsymptotics {
    std::vector<MassRow> rows;
    Rational kappa_hat;
    int d_hat = 0;
    double c_hat = 0.0;
    double residual_slope = 0.0; // slope of log(scaled mass) against log eps
    Rational kappa_predicted;
    int d_predicted = 0;
    bool kappa_agrees = false;
    bool d_agrees = false;
    bool monte_carlo = false;
};

struct MonteCarloOptions {
    std::size_t count = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// M(t) = integral over Z_t of the weighted form, for each |t| of the ray
/// (>= 4 values, strictly monotone, spanning >= 3 decades). Candidates for kappa
/// are the a_i / b_i and d ranges over 0..p; the pair leaving the flattest
/// M |t|^{-2 kappa} eps^d wins. c_hat is that quantity at the smallest |t|.
MassAsymptotics mass_asymptotics(const ToricDegeneration& d, const std::vector<double>& ray,
                                 const MonteCarloOptions& mc = {});

struct CoordinateMoments {
    double mean = 0.0;
    double mean_se = 0.0;
    double second = 0.0;
    double second_se = 0.0;
    double expected_mean = 0.0;
    double expected_second = 0.0;
};

struct PushforwardReport {
    std::vector<CoordinateMoments> coordinates;
    double total_mass = 0.0; // estimated mass over the exact Laplace value
    double total_mass_se = 0.0;
    std::size_t samples = 0;
    double eps = 0.0;
    std::vector<std::size_t> essential_face;
};

/// Moments of (Log_t)_* of the normalized weighted measure, sampled by
/// importance sampling in (w, theta), against the normalized Lebesgue
/// measure on the essential face.
PushforwardReport pushforward_limit(const ToricDegeneration& d, const ScaleFactor& s, const MonteCarloOptions& mc);

} // namespace tropdeg
