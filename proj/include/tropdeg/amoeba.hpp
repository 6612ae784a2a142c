#pragma once

// Sampling Log_t(Z_t) for hypersurfaces Z_t = {f_t = 0} and measuring its
// distance to the tropical hypersurface.

#include "tropdeg/polyhedral.hpp"
#include "tropdeg/polynomial.hpp"
#include "tropdeg/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tropdeg {

/// t with 0 < |t| < e^-1 and eps = 1 / log(1/|t|), so eps lies in (0, 1).
class ScaleFactor {
public:
    explicit ScaleFactor(Complex t);
    Complex t() const { return t_; }
    double abs_t() const { return std::abs(t_); }
    double eps() const { return eps_; }

private:
    Complex t_;
    double eps_;
};

/// (log|x_i| / log|t|)_i; zero coordinates are rejected.
RealVector log_t(const std::vector<Complex>& x, const ScaleFactor& s);

/// Axis-aligned box lo <= w <= hi.
struct Window {
    RealVector lo;
    RealVector hi;
    bool contains(const RealVector& w) const;
    std::size_t dim() const { return lo.size(); }
};
Window make_window(std::size_t n, double lo, double hi);

struct PointCloud {
    std::vector<RealVector> points; // sorted lexicographically
    Complex t;
    std::string generator;          // text form of f
    Window window;
    std::uint64_t seed = 0;
    std::size_t samples = 0;        // requested draws
    std::size_t skipped_degenerate = 0;    // univariate degree 0 after specialization
    std::size_t skipped_nonconvergent = 0; // root finder failed (fallback included)
    std::size_t rejected_residual = 0;     // roots failing the residual check
    std::size_t fallback_used = 0;
};

struct SampleOptions {
    std::size_t count = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double residual_tolerance = 1e-8;
};

/// For each draw: the first n-1 log-coordinates uniform in the window, arguments
/// uniform in [0, 2pi), solve for the last coordinate and keep every nonzero
/// root passing the residual check |f_t(x)| <= tol * sum |a_alpha(t) x^alpha|.
PointCloud sample_hypersurface(const LaurentPolynomial& f, const ScaleFactor& s, const Window& window,
                               const SampleOptions& options);

/// max over cloud points inside `window` of the distance to the nearest cell.
double one_sided_hausdorff(const std::vector<RealVector>& points, const PolyhedralComplex& complex,
                           const Window& window);

struct ConvergenceRow {
    double abs_t = 0.0;
    double eps = 0.0;
    std::optional<double> distance; // empty when the row failed
    std::string error;
    std::size_t points = 0;
    std::size_t points_in_window = 0;
    std::size_t skipped_degenerate = 0;
    std::size_t skipped_nonconvergent = 0;
    std::size_t rejected_residual = 0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Rows for t_k = t0 * rho^k, k = 0..steps-1, all sampled with the same seed.
ConvergenceReport convergence_report(const LaurentPolynomial& f, Complex t0, double rho, std::size_t steps,
                                     const Window& window, const SampleOptions& options);

} // namespace tropdeg
