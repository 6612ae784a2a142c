#pragma once

// Real Monge-Ampere measures: exact Alexandrov measures of convex piecewise
// affine functions, a finite-difference density for smooth data, the p = 1
// comparison with the complex side on a toric fiber, and an Oliker-Prussner
// solver for the semi-discrete Dirichlet problem.
//
// Convex PL functions are maxima of affine forms. A concave min-plus
// polynomial f^trop corresponds to the convex function -f^trop.

#include "tropdeg/amoeba.hpp"
#include "tropdeg/polyhedron.hpp"
#include "tropdeg/rational.hpp"
#include "tropdeg/toriclimit.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropdeg {

struct AffinePiece {
    RationalVector gradient;
    Rational offset;

    friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

class ConvexPLFunction {
public:
    /// max_k (gradient_k . w + offset_k) on `domain`; at least one piece.
    ConvexPLFunction(std::vector<AffinePiece> pieces, HPolyhedron domain);

    /// The box lo <= w <= hi.
    static HPolyhedron box(const RationalVector& lo, const RationalVector& hi);

    std::size_t dim() const { return domain_.dim; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    const HPolyhedron& domain() const { return domain_; }

    Rational value(const RationalVector& w) const;
    double value(const RealVector& w) const;
    /// Indices of the pieces attaining the max at w.
    std::vector<std::size_t> active(const RationalVector& w) const;

    /// Pieces that are maximal only on a lower-dimensional part of the domain
    /// (or nowhere); dropping them does not change the function.
    std::vector<std::size_t> redundant_pieces() const;
    ConvexPLFunction without_redundant() const;

private:
    std::vector<AffinePiece> pieces_;
    HPolyhedron domain_;
};

struct Atom {
    RationalVector point;
    Rational mass;
};

class AtomicMeasure {
public:
    /// Distinct points, positive masses; atoms are kept sorted by point.
    explicit AtomicMeasure(std::vector<Atom> atoms = {});
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    Rational total_mass() const;

private:
    std::vector<Atom> atoms_;
};

/// Atoms at interior vertices v of the subdivision, with mass the volume of
/// conv{gradients active at v}. Exact.
AtomicMeasure ma_alexandrov(const ConvexPLFunction& f);

struct DensityGrid {
    std::vector<std::size_t> shape; // interior nodes per axis (input shape - 2)
    std::vector<double> values;     // row-major, last axis fastest
    std::size_t nonconvex = 0;      // nodes whose Hessian was not positive semidefinite
};

/// det of the centered finite-difference Hessian at interior nodes of a
/// row-major grid with spacing h; non-convex nodes are clamped to 0.
DensityGrid ma_smooth_grid(const std::vector<double>& values, const std::vector<std::size_t>& shape, double h);

struct MalogRow {
    double lo = 0.0;
    double hi = 0.0;
    double complex_mass = 0.0; // dd^c of f(Log_t) over the annulus, one component of Z_t
    double real_mass = 0.0;    // eps * sheet factor * MA_R(f)([lo, hi])
    double relative_error = 0.0;
};

struct MalogReport {
    std::vector<MalogRow> rows;
    double eps = 0.0;
    double sheet_factor = 1.0; // degree b_1 / gcd(b) of one component over the z_0-plane
};

struct MalogOptions {
    std::size_t angles = 64;   // quadrature nodes on each circle
    double relative_step = 1e-4; // finite-difference step / radius
};

/// p = 1 comparison. f is a function of w = the first coordinate of Log_t on
/// Z_t, given on [domain_lo, domain_hi]. The complex side is the boundary flux
/// of the Laplacian of f(Log_t(z)) through the two circles bounding the
/// annulus {lo <= w <= hi}; `real_mass(lo, hi)` supplies MA_R(f)([lo, hi]).
MalogReport verify_malog_dim1(const std::function<double(double)>& f,
                              const std::function<double(double, double)>& real_mass, double domain_lo,
                              double domain_hi, const ToricDegeneration& d, const ScaleFactor& s,
                              const std::vector<std::pair<double, double>>& intervals, const MalogOptions& options = {});

/// PL version: MA_R from ma_alexandrov. Intervals with a kink closer to an
/// endpoint than the finite-difference stencil are rejected.
MalogReport verify_malog_dim1(const ConvexPLFunction& f, const ToricDegeneration& d, const ScaleFactor& s,
                              const std::vector<std::pair<double, double>>& intervals, const MalogOptions& options = {});

/// Smooth version: MA_R from ma_smooth_grid on a grid of spacing h over the
/// domain; interval endpoints must be interior grid nodes.
MalogReport verify_malog_dim1_grid(const std::function<double(double)>& f, double domain_lo, double domain_hi,
                                   double h, const ToricDegeneration& d, const ScaleFactor& s,
                                   const std::vector<std::pair<double, double>>& intervals,
                                   const MalogOptions& options = {});

/// Values of a convex function at points of the boundary of a polytope
/// (the domain is the convex hull of the points).
struct BoundaryData {
    std::vector<RationalVector> points;
    std::vector<Rational> values;
};

/// Domain vertices plus every boundary point where the active piece changes,
/// so that the convex envelope of the returned data reproduces f on the
/// boundary. Supports dimension 1 and 2.
BoundaryData boundary_trace(const ConvexPLFunction& f);

struct RmaOptions {
    double relative_tolerance = 1e-9; // on max |mass - target| / total target
    std::size_t max_sweeps = 100000;
};

struct RmaSolution {
    ConvexPLFunction function;
    std::vector<RationalVector> nodes; // interior nodes, target order
    std::vector<double> heights;
    std::size_t sweeps = 0;
    double residual = 0.0; // max |mass - target|
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& message, double residual)
        : std::runtime_error(message), residual_(residual)
    {
    }
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Oliker-Prussner iteration for MA_R(u) = target with u = boundary data on
/// the boundary nodes: heights at the target atoms start at the convex
/// envelope of the boundary data and are lowered node by node until each
/// subdifferential area matches its mass (raises are damped by 1/2).
/// Dimension 1 or 2.
RmaSolution solve_rma(const AtomicMeasure& target, const BoundaryData& boundary, const RmaOptions& options = {});

} // namespace tropdeg
