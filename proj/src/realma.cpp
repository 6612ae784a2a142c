#include "tropdeg/realma.hpp"

#include "tropdeg/linalg.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace tropdeg {

// ---------------------------------------------------------------- functions

ConvexPLFunction::ConvexPLFunction(std::vector<AffinePiece> pieces, HPolyhedron domain)
    : pieces_(std::move(pieces)), domain_(std::move(domain))
{
    if (pieces_.empty()) {
        throw std::invalid_argument("convex PL function needs at least one affine piece");
    }
    for (auto& p : pieces_) {
        if (p.gradient.size() != domain_.dim) {
            throw std::invalid_argument("affine piece has the wrong dimension");
        }
        for (auto& g : p.gradient) {
            g.canonicalize();
        }
        p.offset.canonicalize();
    }
}

HPolyhedron ConvexPLFunction::box(const RationalVector& lo, const RationalVector& hi)
{
    if (lo.size() != hi.size()) {
        throw std::invalid_argument("box corners differ in dimension");
    }
    HPolyhedron h;
    h.dim = lo.size();
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) {
            throw std::invalid_argument("box needs lo < hi in every coordinate");
        }
        RationalVector up(lo.size(), Rational(0));
        up[i] = 1;
        h.add_inequality(up, hi[i]);
        RationalVector down(lo.size(), Rational(0));
        down[i] = -1;
        h.add_inequality(down, -lo[i]);
    }
    return h;
}

Rational ConvexPLFunction::value(const RationalVector& w) const
{
    Rational best;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        Rational v = dot(pieces_[k].gradient, w) + pieces_[k].offset;
        if (k == 0 || v > best) {
            best = v;
        }
    }
    return best;
}

double ConvexPLFunction::value(const RealVector& w) const
{
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : pieces_) {
        double v = p.offset.get_d();
        for (std::size_t i = 0; i < w.size(); ++i) {
            v += p.gradient[i].get_d() * w[i];
        }
        best = std::max(best, v);
    }
    return best;
}

std::vector<std::size_t> ConvexPLFunction::active(const RationalVector& w) const
{
    const Rational top = value(w);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (dot(pieces_[k].gradient, w) + pieces_[k].offset == top) {
            out.push_back(k);
        }
    }
    return out;
}

namespace {

// domain ∩ {piece k >= every other piece}
HPolyhedron region_of(const ConvexPLFunction& f, std::size_t k)
{
    HPolyhedron h = f.domain();
    const auto& pk = f.pieces()[k];
    for (std::size_t j = 0; j < f.pieces().size(); ++j) {
        if (j == k) {
            continue;
        }
        const auto& pj = f.pieces()[j];
        RationalVector row(f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i) {
            row[i] = pj.gradient[i] - pk.gradient[i];
        }
        h.add_inequality(std::move(row), pk.offset - pj.offset);
    }
    return h;
}

bool strictly_inside(const HPolyhedron& h, const RationalVector& x)
{
    for (std::size_t r = 0; r < h.ineq_a.size(); ++r) {
        if (!(dot(h.ineq_a[r], x) < h.ineq_b[r])) {
            return false;
        }
    }
    for (std::size_t r = 0; r < h.eq_a.size(); ++r) {
        if (dot(h.eq_a[r], x) != h.eq_b[r]) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<std::size_t> ConvexPLFunction::redundant_pieces() const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const auto gens = enumerate_generators(region_of(*this, k));
        if (affine_dimension(gens, dim()) < static_cast<int>(dim())) {
            out.push_back(k);
        }
    }
    return out;
}

ConvexPLFunction ConvexPLFunction::without_redundant() const
{
    const auto drop = redundant_pieces();
    std::vector<AffinePiece> kept;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (!std::binary_search(drop.begin(), drop.end(), k)) {
            kept.push_back(pieces_[k]);
        }
    }
    if (kept.empty()) {
        throw std::invalid_argument("function has no full-dimensional linearity region; is the domain degenerate?");
    }
    return ConvexPLFunction(std::move(kept), domain_);
}

// ------------------------------------------------------------------ measures

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms))
{
    for (auto& a : atoms_) {
        for (auto& x : a.point) {
            x.canonicalize();
        }
        a.mass.canonicalize();
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
        if (!(atoms_[k].mass > 0)) {
            throw std::invalid_argument("atom masses must be positive");
        }
        if (k > 0 && atoms_[k].point == atoms_[k - 1].point) {
            throw std::invalid_argument("atomic measure has two atoms at the same point");
        }
        if (atoms_[k].point.size() != atoms_.front().point.size()) {
            throw std::invalid_argument("atoms live in different dimensions");
        }
    }
}

Rational AtomicMeasure::total_mass() const
{
    Rational total = 0;
    for (const auto& a : atoms_) {
        total += a.mass;
    }
    return total;
}

AtomicMeasure ma_alexandrov(const ConvexPLFunction& f)
{
    const std::size_t n = f.dim();
    if (affine_dimension(enumerate_generators(f.domain()), n) != static_cast<int>(n)) {
        throw std::invalid_argument("Alexandrov measure needs a full-dimensional domain");
    }
    std::set<RationalVector> vertices;
    for (std::size_t k = 0; k < f.pieces().size(); ++k) {
        for (auto& v : enumerate_generators(region_of(f, k)).vertices) {
            vertices.insert(std::move(v));
        }
    }
    std::vector<Atom> atoms;
    for (const auto& v : vertices) {
        if (!strictly_inside(f.domain(), v)) {
            continue;
        }
        std::vector<RationalVector> grads;
        for (auto k : f.active(v)) {
            grads.push_back(f.pieces()[k].gradient);
        }
        Rational mass = hull_volume(grads, n);
        if (mass > 0) {
            atoms.push_back({v, mass});
        }
    }
    return AtomicMeasure(std::move(atoms));
}

DensityGrid ma_smooth_grid(const std::vector<double>& values, const std::vector<std::size_t>& shape, double h)
{
    if (shape.empty()) {
        throw std::invalid_argument("grid needs at least one axis");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("grid spacing must be positive");
    }
    std::size_t total = 1;
    for (auto s : shape) {
        if (s < 3) {
            throw std::invalid_argument("grid needs at least 3 points per axis");
        }
        total *= s;
    }
    if (values.size() != total) {
        throw std::invalid_argument("grid values do not match the shape");
    }
    const std::size_t n = shape.size();
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t i = n - 1; i > 0; --i) {
        stride[i - 1] = stride[i] * shape[i];
    }
    double scale = 0.0;
    for (double v : values) {
        scale = std::max(scale, std::abs(v));
    }
    const double negative_tol = 1e-10 * (scale + 1.0) / (h * h);

    DensityGrid out;
    std::size_t inner_total = 1;
    for (auto s : shape) {
        out.shape.push_back(s - 2);
        inner_total *= s - 2;
    }
    out.values.resize(inner_total);
    std::vector<std::size_t> idx(n);
    Eigen::MatrixXd hess(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t flat = 0; flat < inner_total; ++flat) {
        std::size_t rest = flat;
        std::size_t at = 0;
        for (std::size_t i = n; i-- > 0;) {
            idx[i] = rest % (shape[i] - 2) + 1;
            rest /= shape[i] - 2;
        }
        for (std::size_t i = 0; i < n; ++i) {
            at += idx[i] * stride[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            hess(ii, ii) = (values[at + stride[i]] - 2.0 * values[at] + values[at - stride[i]]) / (h * h);
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto jj = static_cast<Eigen::Index>(j);
                const double mixed = (values[at + stride[i] + stride[j]] - values[at + stride[i] - stride[j]] -
                                      values[at - stride[i] + stride[j]] + values[at - stride[i] - stride[j]]) /
                                     (4.0 * h * h);
                hess(ii, jj) = mixed;
                hess(jj, ii) = mixed;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess, Eigen::EigenvaluesOnly);
        const auto& lambda = eig.eigenvalues();
        if (lambda.minCoeff() < -negative_tol) {
            ++out.nonconvex;
            out.values[flat] = 0.0;
            continue;
        }
        double det = 1.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            det *= std::max(0.0, lambda(i));
        }
        out.values[flat] = det;
    }
    return out;
}

// ------------------------------------------------------------ MAlog at p = 1

namespace {

double pullback(const std::function<double(double)>& f, const ToricDegeneration& d, const ScaleFactor& s, Complex z0)
{
    // the point of Z_t over z0 on the principal branch of z1
    const Complex z1 = std::exp((std::log(s.t()) - static_cast<double>(d.b()[0]) * std::log(z0)) /
                                static_cast<double>(d.b()[1]));
    return f(log_t({z0, z1}, s)[0]);
}

// (1/2pi) * circle integral of the radial derivative times arc length
double flux(const std::function<double(double)>& f, const ToricDegeneration& d, const ScaleFactor& s, double radius,
            const MalogOptions& options)
{
    const double h = options.relative_step * radius;
    double sum = 0.0;
    for (std::size_t k = 0; k < options.angles; ++k) {
        const double phi = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(options.angles);
        const Complex z = std::polar(radius, phi);
        const double dx = (pullback(f, d, s, z + h) - pullback(f, d, s, z - h)) / (2.0 * h);
        const double dy =
            (pullback(f, d, s, z + Complex(0.0, h)) - pullback(f, d, s, z - Complex(0.0, h))) / (2.0 * h);
        sum += dx * std::cos(phi) + dy * std::sin(phi);
    }
    return sum * radius / static_cast<double>(options.angles);
}

void check_p1(const ToricDegeneration& d)
{
    if (d.fiber_dim() != 1) {
        throw std::invalid_argument("the Monge-Ampere comparison is implemented for p = 1 only");
    }
}

} // namespace

MalogReport verify_malog_dim1(const std::function<double(double)>& f,
                              const std::function<double(double, double)>& real_mass, double domain_lo,
                              double domain_hi, const ToricDegeneration& d, const ScaleFactor& s,
                              const std::vector<std::pair<double, double>>& intervals, const MalogOptions& options)
{
    check_p1(d);
    if (options.angles < 4 || !(options.relative_step > 0.0 && options.relative_step < 0.1)) {
        throw std::invalid_argument("MAlog grid needs >= 4 angles and a relative step in (0, 0.1)");
    }
    MalogReport report;
    report.eps = s.eps();
    report.sheet_factor = static_cast<double>(d.b()[1]) / d.components();
    // the stencil reaches this far in w around each circle
    const double reach = 2.0 * options.relative_step * s.eps();
    for (const auto& [lo, hi] : intervals) {
        if (!(lo < hi) || lo - reach < domain_lo || hi + reach > domain_hi) {
            std::ostringstream msg;
            msg << "interval [" << lo << ", " << hi << "] is not resolved inside the domain [" << domain_lo << ", "
                << domain_hi << "]";
            throw std::invalid_argument(msg.str());
        }
        const double outer = std::pow(s.abs_t(), lo);
        const double inner = std::pow(s.abs_t(), hi);
        MalogRow row;
        row.lo = lo;
        row.hi = hi;
        row.complex_mass = report.sheet_factor * (flux(f, d, s, outer, options) - flux(f, d, s, inner, options));
        row.real_mass = s.eps() * report.sheet_factor * real_mass(lo, hi);
        const double diff = std::abs(row.complex_mass - row.real_mass);
        row.relative_error = row.real_mass != 0.0 ? diff / std::abs(row.real_mass) : diff;
        report.rows.push_back(row);
    }
    return report;
}

MalogReport verify_malog_dim1(const ConvexPLFunction& f, const ToricDegeneration& d, const ScaleFactor& s,
                              const std::vector<std::pair<double, double>>& intervals, const MalogOptions& options)
{
    if (f.dim() != 1) {
        throw std::invalid_argument("expected a function of one variable");
    }
    const auto gens = enumerate_generators(f.domain());
    if (gens.vertices.size() != 2 || !gens.rays.empty() || !gens.lineality.empty()) {
        throw std::invalid_argument("expected a bounded interval as domain");
    }
    const double a = std::min(gens.vertices[0][0], gens.vertices[1][0]).get_d();
    const double b = std::max(gens.vertices[0][0], gens.vertices[1][0]).get_d();
    const AtomicMeasure ma = ma_alexandrov(f);
    const double reach = 4.0 * options.relative_step * s.eps();
    for (const auto& [lo, hi] : intervals) {
        for (const auto& atom : ma.atoms()) {
            const double x = atom.point[0].get_d();
            if (std::abs(x - lo) < reach || std::abs(x - hi) < reach) {
                std::ostringstream msg;
                msg << "interval [" << lo << ", " << hi << "] has a kink at " << x
                    << " within the finite-difference stencil of an endpoint";
                throw std::invalid_argument(msg.str());
            }
        }
    }
    auto eval = [&](double w) { return f.value(RealVector{w}); };
    auto real = [&](double lo, double hi) {
        double m = 0.0;
        for (const auto& atom : ma.atoms()) {
            const double x = atom.point[0].get_d();
            if (x > lo && x < hi) {
                m += atom.mass.get_d();
            }
        }
        return m;
    };
    return verify_malog_dim1(eval, real, a, b, d, s, intervals, options);
}

MalogReport verify_malog_dim1_grid(const std::function<double(double)>& f, double domain_lo, double domain_hi,
                                   double h, const ToricDegeneration& d, const ScaleFactor& s,
                                   const std::vector<std::pair<double, double>>& intervals,
                                   const MalogOptions& options)
{
    const double steps = (domain_hi - domain_lo) / h;
    if (!(h > 0.0) || std::abs(steps - std::round(steps)) > 1e-9 * steps) {
        throw std::invalid_argument("grid spacing must divide the domain length");
    }
    const auto count = static_cast<std::size_t>(std::llround(steps)) + 1;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = f(domain_lo + h * static_cast<double>(i));
    }
    const DensityGrid density = ma_smooth_grid(values, {count}, h);
    auto node = [&](double x) {
        const double r = (x - domain_lo) / h;
        const double k = std::round(r);
        if (std::abs(r - k) > 1e-9 || k < 1.0 || k > static_cast<double>(count - 2)) {
            std::ostringstream msg;
            msg << "interval endpoint " << x << " is not an interior grid node";
            throw std::invalid_argument(msg.str());
        }
        return static_cast<std::size_t>(k);
    };
    for (const auto& [lo, hi] : intervals) {
        node(lo);
        node(hi);
    }
    auto real = [&](double lo, double hi) {
        // trapezoid rule on the interior-node density (density index = node - 1)
        const std::size_t i = node(lo);
        const std::size_t j = node(hi);
        double m = 0.0;
        for (std::size_t k = i; k < j; ++k) {
            m += 0.5 * (density.values[k - 1] + density.values[k]) * h;
        }
        return m;
    };
    return verify_malog_dim1(f, real, domain_lo, domain_hi, d, s, intervals, options);
}

// ---------------------------------------------------------- boundary traces

namespace {

struct Point2 {
    Rational x;
    Rational y;
};

Rational cross(const RationalVector& o, const RationalVector& a, const RationalVector& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Counter-clockwise hull vertices without collinear points (Andrew's chain).
std::vector<RationalVector> convex_hull_2d(std::vector<RationalVector> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        return pts;
    }
    std::vector<RationalVector> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::vector<RationalVector> polygon_vertices(const HPolyhedron& domain)
{
    const auto gens = enumerate_generators(domain);
    if (gens.empty() || !gens.rays.empty() || !gens.lineality.empty()) {
        throw std::invalid_argument("domain must be a nonempty bounded polytope");
    }
    return convex_hull_2d(gens.vertices);
}

} // namespace

BoundaryData boundary_trace(const ConvexPLFunction& f)
{
    BoundaryData out;
    if (f.dim() == 1) {
        const auto gens = enumerate_generators(f.domain());
        if (gens.vertices.size() != 2 || !gens.rays.empty() || !gens.lineality.empty()) {
            throw std::invalid_argument("domain must be a bounded interval");
        }
        auto v = gens.vertices;
        std::sort(v.begin(), v.end());
        for (auto& p : v) {
            out.values.push_back(f.value(p));
            out.points.push_back(std::move(p));
        }
        return out;
    }
    if (f.dim() != 2) {
        throw std::invalid_argument("boundary traces are implemented in dimension 1 and 2");
    }
    const auto corners = polygon_vertices(f.domain());
    const auto& pieces = f.pieces();
    for (std::size_t e = 0; e < corners.size(); ++e) {
        const auto& a = corners[e];
        const auto& b = corners[(e + 1) % corners.size()];
        const RationalVector dir{b[0] - a[0], b[1] - a[1]};
        std::set<Rational> params;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            for (std::size_t j = i + 1; j < pieces.size(); ++j) {
                const Rational gi = dot(pieces[i].gradient, a) + pieces[i].offset;
                const Rational gj = dot(pieces[j].gradient, a) + pieces[j].offset;
                const Rational si = dot(pieces[i].gradient, dir);
                const Rational sj = dot(pieces[j].gradient, dir);
                if (si == sj) {
                    continue;
                }
                Rational s = (gj - gi) / (si - sj);
                if (s <= 0 || s >= 1) {
                    continue;
                }
                const RationalVector x{a[0] + s * dir[0], a[1] + s * dir[1]};
                const auto act = f.active(x);
                if (std::find(act.begin(), act.end(), i) != act.end() &&
                    std::find(act.begin(), act.end(), j) != act.end()) {
                    params.insert(s);
                }
            }
        }
        out.points.push_back(a);
        out.values.push_back(f.value(a));
        for (const auto& s : params) {
            RationalVector x{a[0] + s * dir[0], a[1] + s * dir[1]};
            out.values.push_back(f.value(x));
            out.points.push_back(std::move(x));
        }
    }
    return out;
}

// ------------------------------------------------------------ the OP solver

namespace {

struct Half {
    double a0;
    double a1;
    double c; // a . p <= c
};

// Area of {p : a_k . p <= c_k} by clipping the square |p|_inf <= r.
double clipped_area(const std::vector<Half>& halves, double r, bool& touches_box)
{
    std::vector<std::array<double, 2>> poly{{-r, -r}, {r, -r}, {r, r}, {-r, r}};
    std::vector<std::array<double, 2>> next;
    for (const auto& h : halves) {
        next.clear();
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const auto& p = poly[i];
            const auto& q = poly[(i + 1) % poly.size()];
            const double fp = h.a0 * p[0] + h.a1 * p[1] - h.c;
            const double fq = h.a0 * q[0] + h.a1 * q[1] - h.c;
            if (fp <= 0.0) {
                next.push_back(p);
            }
            if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
                const double t = fp / (fp - fq);
                next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
            }
        }
        poly.swap(next);
        if (poly.empty()) {
            touches_box = false;
            return 0.0;
        }
    }
    touches_box = false;
    double area = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        area += p[0] * q[1] - q[0] * p[1];
        if (std::abs(p[0]) >= r * (1.0 - 1e-12) || std::abs(p[1]) >= r * (1.0 - 1e-12)) {
            touches_box = true;
        }
    }
    return 0.5 * std::abs(area);
}

class DiscreteMA {
public:
    DiscreteMA(std::vector<RealVector> nodes, std::vector<double> heights, std::size_t first_free,
               std::vector<double> boundary_distance)
        : nodes_(std::move(nodes)), u_(std::move(heights)), first_free_(first_free),
          distance_(std::move(boundary_distance))
    {
    }

    std::vector<double>& heights() { return u_; }
    const std::vector<double>& heights() const { return u_; }

    /// Subdifferential volume at node j if its height were h.
    double mass(std::size_t j, double h) const
    {
        const RealVector& x = nodes_[j];
        if (x.size() == 1) {
            double lo = -std::numeric_limits<double>::infinity();
            double hi = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < nodes_.size(); ++k) {
                if (k == j) {
                    continue;
                }
                const double dx = nodes_[k][0] - x[0];
                const double slope = (u_[k] - h) / dx;
                if (dx > 0.0) {
                    hi = std::min(hi, slope);
                } else {
                    lo = std::max(lo, slope);
                }
            }
            return std::max(0.0, hi - lo);
        }
        halves_.clear();
        double spread = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            if (k == j) {
                continue;
            }
            halves_.push_back({nodes_[k][0] - x[0], nodes_[k][1] - x[1], u_[k] - h});
            spread = std::max(spread, std::abs(u_[k] - h));
        }
        // |p| <= spread / (distance to the boundary) for interior nodes
        double r = 2.0 * spread / distance_[j - first_free_] + 1.0;
        for (int attempt = 0; attempt < 60; ++attempt) {
            bool touches = false;
            const double area = clipped_area(halves_, r, touches);
            if (!touches) {
                return area;
            }
            r *= 2.0;
        }
        return std::numeric_limits<double>::infinity();
    }

    double mass(std::size_t j) const { return mass(j, u_[j]); }

    /// Height at which node j carries exactly `target`.
    double solve(std::size_t j, double target) const
    {
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < u_.size(); ++k) {
            if (k != j) {
                hi = std::max(hi, u_[k]);
            }
        }
        auto g = [&](double h) { return mass(j, h) - target; };
        double step = std::max(1.0, std::abs(hi));
        double lo = std::min(u_[j], hi) - step;
        while (g(lo) < 0.0) {
            step *= 2.0;
            lo = hi - step;
            if (!std::isfinite(lo)) {
                throw std::runtime_error("height search diverged");
            }
        }
        std::uintmax_t iterations = 200;
        const auto bracket = boost::math::tools::toms748_solve(g, lo, hi, g(lo), g(hi),
                                                               boost::math::tools::eps_tolerance<double>(52), iterations);
        return 0.5 * (bracket.first + bracket.second);
    }

private:
    std::vector<RealVector> nodes_;
    std::vector<double> u_;
    std::size_t first_free_;
    std::vector<double> distance_;
    mutable std::vector<Half> halves_;
};

std::string point_string(const RationalVector& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += (i ? ", " : "") + to_string(p[i]);
    }
    return s + ")";
}

// Lower convex envelope of (points, values) at x: min over simplices of
// points containing x of the interpolated value.
double envelope_at(const std::vector<RealVector>& pts, const std::vector<double>& vals, const RealVector& x)
{
    const std::size_t n = x.size();
    double best = std::numeric_limits<double>::infinity();
    for_each_subset(pts.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
        Matrix<double> a(n + 1, std::vector<double>(n + 1));
        std::vector<double> rhs(n + 1);
        for (std::size_t c = 0; c <= n; ++c) {
            for (std::size_t r = 0; r < n; ++r) {
                a[r][c] = pts[idx[c]][r];
            }
            a[n][c] = 1.0;
        }
        for (std::size_t r = 0; r < n; ++r) {
            rhs[r] = x[r];
        }
        rhs[n] = 1.0;
        if (matrix_rank(a, n + 1, 1e-12) != n + 1) {
            return;
        }
        auto lambda = solve_linear(a, rhs, n + 1, 1e-12);
        if (!lambda) {
            return;
        }
        double v = 0.0;
        for (std::size_t c = 0; c <= n; ++c) {
            if ((*lambda)[c] < -1e-12) {
                return;
            }
            v += (*lambda)[c] * vals[idx[c]];
        }
        best = std::min(best, v);
    });
    return best;
}

} // namespace

RmaSolution solve_rma(const AtomicMeasure& target, const BoundaryData& boundary, const RmaOptions& options)
{
    if (boundary.points.empty() || boundary.points.size() != boundary.values.size()) {
        throw std::invalid_argument("boundary data needs one value per point");
    }
    const std::size_t n = boundary.points.front().size();
    if (n != 1 && n != 2) {
        throw std::invalid_argument("the semi-discrete solver handles dimension 1 and 2");
    }
    for (const auto& p : boundary.points) {
        if (p.size() != n) {
            throw std::invalid_argument("boundary points differ in dimension");
        }
    }
    for (const auto& a : target.atoms()) {
        if (a.point.size() != n) {
            throw std::invalid_argument("target atoms and boundary points differ in dimension");
        }
    }

    // domain, boundary placement, and convexity of the boundary data
    HPolyhedron domain;
    domain.dim = n;
    std::vector<std::vector<std::size_t>> edges; // boundary point indices per edge, in order
    if (n == 1) {
        if (boundary.points.size() != 2 || boundary.points[0] == boundary.points[1]) {
            throw std::invalid_argument("in dimension 1 the boundary is exactly the two endpoints");
        }
        const Rational lo = std::min(boundary.points[0][0], boundary.points[1][0]);
        const Rational hi = std::max(boundary.points[0][0], boundary.points[1][0]);
        domain = ConvexPLFunction::box({lo}, {hi});
    } else {
        const auto hull = convex_hull_2d(boundary.points);
        if (hull.size() < 3) {
            throw std::invalid_argument("boundary points do not span a two-dimensional domain");
        }
        for (std::size_t e = 0; e < hull.size(); ++e) {
            const auto& a = hull[e];
            const auto& b = hull[(e + 1) % hull.size()];
            const Rational dx = b[0] - a[0];
            const Rational dy = b[1] - a[1];
            domain.add_inequality({dy, -dx}, dy * a[0] - dx * a[1]);
            std::vector<std::pair<Rational, std::size_t>> on_edge;
            for (std::size_t k = 0; k < boundary.points.size(); ++k) {
                const auto& p = boundary.points[k];
                if (cross(a, b, p) != 0) {
                    continue;
                }
                const Rational s = (dx != 0) ? (p[0] - a[0]) / dx : (p[1] - a[1]) / dy;
                if (s >= 0 && s <= 1) {
                    on_edge.emplace_back(s, k);
                }
            }
            std::sort(on_edge.begin(), on_edge.end());
            std::vector<std::size_t> ids;
            for (const auto& [s, k] : on_edge) {
                if (!ids.empty() && boundary.points[ids.back()] == boundary.points[k]) {
                    throw std::invalid_argument("boundary point " + point_string(boundary.points[k]) +
                                                " is listed twice");
                }
                ids.push_back(k);
            }
            edges.push_back(std::move(ids));
        }
        for (std::size_t k = 0; k < boundary.points.size(); ++k) {
            if (strictly_inside(domain, boundary.points[k])) {
                throw std::invalid_argument("boundary point " + point_string(boundary.points[k]) +
                                            " lies in the interior of the domain");
            }
        }
        for (const auto& ids : edges) {
            for (std::size_t m = 1; m + 1 < ids.size(); ++m) {
                const auto& p0 = boundary.points[ids[m - 1]];
                const auto& p1 = boundary.points[ids[m]];
                const auto& p2 = boundary.points[ids[m + 1]];
                const std::size_t axis = p0[0] != p2[0] ? 0 : 1;
                const Rational s01 = (boundary.values[ids[m]] - boundary.values[ids[m - 1]]) / (p1[axis] - p0[axis]);
                const Rational s12 = (boundary.values[ids[m + 1]] - boundary.values[ids[m]]) / (p2[axis] - p1[axis]);
                // slopes along the edge direction must not decrease
                const bool forward = p2[axis] > p0[axis];
                if (forward ? s12 < s01 : s12 > s01) {
                    throw InfeasibleError("boundary data is not convex along the boundary at " + point_string(p1) +
                                          ": no convex function takes these boundary values");
                }
            }
        }
    }
    for (const auto& a : target.atoms()) {
        if (!strictly_inside(domain, a.point)) {
            throw InfeasibleError("target atom " + point_string(a.point) +
                                  " is not in the interior of the domain: only interior nodes can carry mass");
        }
    }

    // floating model: boundary nodes first, then the free nodes
    std::vector<RealVector> nodes;
    std::vector<double> bvals;
    for (std::size_t k = 0; k < boundary.points.size(); ++k) {
        nodes.push_back(to_doubles(boundary.points[k]));
        bvals.push_back(boundary.values[k].get_d());
    }
    const std::size_t first_free = nodes.size();
    std::vector<double> heights = bvals;
    std::vector<double> distance;
    std::vector<double> goal;
    const auto dom = to_double_system(domain);
    double total = 0.0;
    for (const auto& a : target.atoms()) {
        RealVector x = to_doubles(a.point);
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < dom.ineq_a.size(); ++r) {
            double norm = 0.0;
            double lhs = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                norm += dom.ineq_a[r][c] * dom.ineq_a[r][c];
                lhs += dom.ineq_a[r][c] * x[c];
            }
            dist = std::min(dist, (dom.ineq_b[r] - lhs) / std::sqrt(norm));
        }
        heights.push_back(envelope_at(std::vector<RealVector>(nodes.begin(), nodes.begin() + first_free), bvals, x));
        nodes.push_back(std::move(x));
        distance.push_back(dist);
        goal.push_back(a.mass.get_d());
        total += goal.back();
    }
    DiscreteMA model(nodes, heights, first_free, distance);
    const double tol = options.relative_tolerance * std::max(total, std::numeric_limits<double>::min());

    auto residual = [&] {
        double r = 0.0;
        for (std::size_t j = 0; j < goal.size(); ++j) {
            r = std::max(r, std::abs(model.mass(first_free + j) - goal[j]));
        }
        return r;
    };
    RmaSolution sol{ConvexPLFunction({AffinePiece{RationalVector(n, Rational(0)), Rational(0)}}, domain), {}, {}, 0, 0.0};
    double res = residual();
    while (res > tol) {
        if (sol.sweeps >= options.max_sweeps) {
            std::ostringstream msg;
            msg << "Oliker-Prussner iteration did not converge in " << options.max_sweeps
                << " sweeps (residual " << res << ", tolerance " << tol << ")";
            throw NonConvergenceError(msg.str(), res);
        }
        for (std::size_t j = 0; j < goal.size(); ++j) {
            const std::size_t node = first_free + j;
            const double star = model.solve(node, goal[j]);
            double& u = model.heights()[node];
            u = star <= u ? star : u + 0.5 * (star - u);
        }
        ++sol.sweeps;
        res = residual();
    }
    sol.residual = res;
    sol.heights.assign(model.heights().begin() + static_cast<std::ptrdiff_t>(first_free), model.heights().end());
    for (const auto& a : target.atoms()) {
        sol.nodes.push_back(a.point);
    }

    // pieces: affine interpolants on (n+1)-subsets lying below every node
    const auto& u = model.heights();
    double scale = 1.0;
    for (double v : u) {
        scale = std::max(scale, std::abs(v));
    }
    std::vector<std::pair<RealVector, double>> planes;
    for_each_subset(nodes.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
        Matrix<double> a;
        std::vector<double> rhs;
        for (auto k : idx) {
            std::vector<double> row(nodes[k].begin(), nodes[k].end());
            row.push_back(1.0);
            a.push_back(std::move(row));
            rhs.push_back(u[k]);
        }
        if (matrix_rank(a, n + 1, 1e-12) != n + 1) {
            return;
        }
        auto coef = solve_linear(a, rhs, n + 1, 1e-12);
        if (!coef) {
            return;
        }
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            double v = (*coef)[n];
            for (std::size_t c = 0; c < n; ++c) {
                v += (*coef)[c] * nodes[k][c];
            }
            if (v > u[k] + 1e-9 * scale) {
                return;
            }
        }
        RealVector grad(coef->begin(), coef->begin() + static_cast<std::ptrdiff_t>(n));
        for (const auto& [g, c] : planes) {
            bool same = std::abs(c - (*coef)[n]) <= 1e-9 * scale;
            for (std::size_t i = 0; i < n && same; ++i) {
                same = std::abs(g[i] - grad[i]) <= 1e-9 * scale;
            }
            if (same) {
                return;
            }
        }
        planes.emplace_back(std::move(grad), (*coef)[n]);
    });
    std::vector<AffinePiece> pieces;
    for (const auto& [g, c] : planes) {
        AffinePiece p;
        for (double x : g) {
            p.gradient.push_back(from_double(x));
        }
        p.offset = from_double(c);
        pieces.push_back(std::move(p));
    }
    sol.function = ConvexPLFunction(std::move(pieces), domain);
    return sol;
}

} // namespace tropdeg
