#pragma once

// Small-dimensional polyhedra in H-representation with brute-force
// double-description: vertices, extreme rays, and lineality space are found by
// enumerating tight subsystems. Exact over Rational, tolerance-based over double.

#include "tropdeg/linalg.hpp"
#include "tropdeg/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

namespace tropdeg {

/// {x in R^dim : eq_a x = eq_b, ineq_a x <= ineq_b}.
template <class T>
struct HalfspaceSystem {
    std::size_t dim = 0;
    Matrix<T> eq_a;
    std::vector<T> eq_b;
    Matrix<T> ineq_a;
    std::vector<T> ineq_b;

    void add_equation(std::vector<T> row, T rhs)
    {
        canonicalize(row, rhs);
        eq_a.push_back(std::move(row));
        eq_b.push_back(std::move(rhs));
    }
    void add_inequality(std::vector<T> row, T rhs)
    {
        canonicalize(row, rhs);
        ineq_a.push_back(std::move(row));
        ineq_b.push_back(std::move(rhs));
    }

private:
    static void canonicalize(std::vector<T>& row, T& rhs)
    {
        if constexpr (std::is_same_v<T, Rational>) {
            for (auto& x : row) {
                x.canonicalize();
            }
            rhs.canonicalize();
        }
    }
};

using HPolyhedron = HalfspaceSystem<Rational>;

/// P = conv(vertices) + cone(rays) + span(lineality). Empty iff no vertices.
template <class T>
struct Generators {
    std::vector<std::vector<T>> vertices;
    std::vector<std::vector<T>> rays;
    std::vector<std::vector<T>> lineality;

    bool empty() const { return vertices.empty(); }
};

namespace detail {

inline bool same_point(const std::vector<Rational>& a, const std::vector<Rational>& b, double) { return a == b; }
inline bool same_point(const std::vector<double>& a, const std::vector<double>& b, double tol)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol * (1.0 + std::abs(a[i]))) {
            return false;
        }
    }
    return true;
}

inline std::vector<Rational> normalize_direction(const std::vector<Rational>& d) { return primitive_direction(d); }
inline std::vector<double> normalize_direction(const std::vector<double>& d)
{
    double norm = 0.0;
    for (double x : d) {
        norm += x * x;
    }
    norm = std::sqrt(norm);
    std::vector<double> out(d);
    for (double& x : out) {
        x /= norm;
    }
    return out;
}

template <class T>
bool leq(const T& a, const T& b, double tol)
{
    if constexpr (std::is_same_v<T, Rational>) {
        return a <= b;
    } else {
        return a <= b + tol * (1.0 + std::abs(b));
    }
}

template <class T>
void push_unique(std::vector<std::vector<T>>& list, std::vector<T> v, double tol)
{
    for (const auto& u : list) {
        if (same_point(u, v, tol)) {
            return;
        }
    }
    list.push_back(std::move(v));
}

} // namespace detail

template <class T>
Generators<T> enumerate_generators(const HalfspaceSystem<T>& sys, double tol = 1e-10)
{
    const std::size_t n = sys.dim;
    Generators<T> out;

    // 1. affine solution space of the equations: x = x0 + sum_i y_i N_i
    std::vector<T> x0(n, T(0));
    Matrix<T> basis_n;
    if (!sys.eq_a.empty()) {
        auto particular = solve_linear(sys.eq_a, sys.eq_b, n, tol);
        if (!particular) {
            return out;
        }
        x0 = *particular;
        basis_n = nullspace(sys.eq_a, n, tol);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<T> e(n, T(0));
            e[i] = 1;
            basis_n.push_back(std::move(e));
        }
    }
    const std::size_t k = basis_n.size();

    // inequalities in y
    Matrix<T> ay;
    std::vector<T> by;
    for (std::size_t r = 0; r < sys.ineq_a.size(); ++r) {
        std::vector<T> row(k, T(0));
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = dot_product(sys.ineq_a[r], basis_n[j]);
        }
        ay.push_back(std::move(row));
        by.push_back(sys.ineq_b[r] - dot_product(sys.ineq_a[r], x0));
    }

    // 2. lineality space L = ker(ay), pointed part in L^perp: y = sum_j z_j M_j
    Matrix<T> lin_y = ay.empty() ? Matrix<T>{} : nullspace(ay, k, tol);
    if (ay.empty()) {
        // no inequalities: the whole affine space is lineality
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<T> e(k, T(0));
            e[i] = 1;
            lin_y.push_back(std::move(e));
        }
    }
    Matrix<T> basis_m = lin_y.empty() ? Matrix<T>{} : nullspace(lin_y, k, tol);
    if (lin_y.empty()) {
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<T> e(k, T(0));
            e[i] = 1;
            basis_m.push_back(std::move(e));
        }
    }
    const std::size_t kp = basis_m.size();

    Matrix<T> az;
    for (const auto& row : ay) {
        std::vector<T> r(kp, T(0));
        for (std::size_t j = 0; j < kp; ++j) {
            r[j] = dot_product(row, basis_m[j]);
        }
        az.push_back(std::move(r));
    }

    auto lift = [&](const std::vector<T>& z, bool affine) {
        std::vector<T> y(k, T(0));
        for (std::size_t j = 0; j < kp; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                y[i] += z[j] * basis_m[j][i];
            }
        }
        std::vector<T> x = affine ? x0 : std::vector<T>(n, T(0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t c = 0; c < n; ++c) {
                x[c] += y[i] * basis_n[i][c];
            }
        }
        return x;
    };
    auto feasible = [&](const std::vector<T>& z) {
        for (std::size_t r = 0; r < az.size(); ++r) {
            if (!detail::leq(dot_product(az[r], z), by[r], tol)) {
                return false;
            }
        }
        return true;
    };

    // 3. vertices: kp linearly independent tight rows
    std::vector<std::vector<T>> vertices_z;
    if (kp == 0) {
        if (feasible({})) {
            vertices_z.push_back({});
        }
    } else {
        for_each_subset(az.size(), kp, [&](const std::vector<std::size_t>& rows) {
            Matrix<T> a;
            std::vector<T> b;
            for (auto r : rows) {
                a.push_back(az[r]);
                b.push_back(by[r]);
            }
            if (matrix_rank(a, kp, tol) != kp) {
                return;
            }
            auto z = solve_linear(a, b, kp, tol);
            if (z && feasible(*z)) {
                detail::push_unique(vertices_z, *z, tol);
            }
        });
    }
    if (vertices_z.empty()) {
        return out;
    }

    // 4. extreme rays of the pointed recession cone {az d <= 0}
    std::vector<std::vector<T>> rays_z;
    if (kp > 0) {
        for_each_subset(az.size(), kp - 1, [&](const std::vector<std::size_t>& rows) {
            Matrix<T> a;
            for (auto r : rows) {
                a.push_back(az[r]);
            }
            Matrix<T> ker;
            if (a.empty()) {
                if (kp != 1) {
                    return;
                }
                ker.push_back(std::vector<T>{T(1)});
            } else {
                if (matrix_rank(a, kp, tol) != kp - 1) {
                    return;
                }
                ker = nullspace(a, kp, tol);
            }
            const auto& d = ker.front();
            bool nonpos = true;
            bool nonneg = true;
            for (const auto& row : az) {
                T s = dot_product(row, d);
                if (!detail::leq(s, T(0), tol)) {
                    nonpos = false;
                }
                if (!detail::leq(T(-s), T(0), tol)) {
                    nonneg = false;
                }
            }
            if (nonpos) {
                detail::push_unique(rays_z, detail::normalize_direction(d), tol);
            }
            if (nonneg && !nonpos) {
                std::vector<T> neg = d;
                for (auto& x : neg) {
                    x = -x;
                }
                detail::push_unique(rays_z, detail::normalize_direction(neg), tol);
            }
        });
    }

    for (const auto& z : vertices_z) {
        out.vertices.push_back(lift(z, true));
    }
    for (const auto& d : rays_z) {
        out.rays.push_back(detail::normalize_direction(lift(d, false)));
    }
    for (const auto& l : lin_y) {
        std::vector<T> x(n, T(0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t c = 0; c < n; ++c) {
                x[c] += l[i] * basis_n[i][c];
            }
        }
        out.lineality.push_back(std::move(x));
    }
    return out;
}

/// Affine dimension of conv(V) + cone(R) + span(L); -1 when empty.
template <class T>
int affine_dimension(const Generators<T>& g, std::size_t dim, double tol = 1e-10)
{
    if (g.empty()) {
        return -1;
    }
    Matrix<T> rows;
    for (std::size_t i = 1; i < g.vertices.size(); ++i) {
        std::vector<T> d(dim);
        for (std::size_t c = 0; c < dim; ++c) {
            d[c] = g.vertices[i][c] - g.vertices[0][c];
        }
        rows.push_back(std::move(d));
    }
    for (const auto& r : g.rays) {
        rows.push_back(r);
    }
    for (const auto& l : g.lineality) {
        rows.push_back(l);
    }
    if (rows.empty()) {
        return 0;
    }
    return static_cast<int>(matrix_rank(rows, dim, tol));
}

template <class T>
std::vector<T> relative_interior_point(const Generators<T>& g, std::size_t dim)
{
    std::vector<T> x(dim, T(0));
    for (const auto& v : g.vertices) {
        for (std::size_t c = 0; c < dim; ++c) {
            x[c] += v[c];
        }
    }
    for (auto& c : x) {
        c /= T(static_cast<long>(g.vertices.size()));
    }
    for (const auto& r : g.rays) {
        for (std::size_t c = 0; c < dim; ++c) {
            x[c] += r[c];
        }
    }
    return x;
}

template <class T>
bool contains(const HalfspaceSystem<T>& sys, std::span<const T> x, double tol = 1e-10)
{
    for (std::size_t r = 0; r < sys.eq_a.size(); ++r) {
        T s = 0;
        for (std::size_t c = 0; c < sys.dim; ++c) {
            s += sys.eq_a[r][c] * x[c];
        }
        if (!detail::leq(s, sys.eq_b[r], tol) || !detail::leq(sys.eq_b[r], s, tol)) {
            return false;
        }
    }
    for (std::size_t r = 0; r < sys.ineq_a.size(); ++r) {
        T s = 0;
        for (std::size_t c = 0; c < sys.dim; ++c) {
            s += sys.ineq_a[r][c] * x[c];
        }
        if (!detail::leq(s, sys.ineq_b[r], tol)) {
            return false;
        }
    }
    return true;
}

/// n-dimensional volume of the convex hull of `points` in R^n (0 if the hull is
/// lower-dimensional). Facets are found by brute force and each contributes
/// (height x facet volume) / n, with facet volumes computed recursively in a
/// coordinate projection so that no square roots appear.
template <class T>
T hull_volume(const std::vector<std::vector<T>>& points, std::size_t n, double tol = 1e-12)
{
    if (n == 0) {
        return T(points.empty() ? 0 : 1);
    }
    if (points.size() < n + 1) {
        return T(0);
    }
    if (n == 1) {
        T lo = points[0][0];
        T hi = points[0][0];
        for (const auto& p : points) {
            lo = std::min<T>(lo, p[0]);
            hi = std::max<T>(hi, p[0]);
        }
        return hi - lo;
    }
    double scale = 1.0;
    for (const auto& p : points) {
        for (const auto& x : p) {
            scale = std::max(scale, magnitude(x));
        }
    }
    const double eps = tol * scale;
    {
        Matrix<T> diffs;
        for (std::size_t i = 1; i < points.size(); ++i) {
            std::vector<T> d(n);
            for (std::size_t c = 0; c < n; ++c) {
                d[c] = points[i][c] - points[0][c];
            }
            diffs.push_back(std::move(d));
        }
        if (matrix_rank(diffs, n, eps) < n) {
            return T(0);
        }
    }
    std::vector<T> centroid(n, T(0));
    for (const auto& p : points) {
        for (std::size_t c = 0; c < n; ++c) {
            centroid[c] += p[c];
        }
    }
    for (auto& c : centroid) {
        c /= T(static_cast<long>(points.size()));
    }

    std::vector<std::vector<std::size_t>> seen;
    T total = 0;
    for_each_subset(points.size(), n, [&](const std::vector<std::size_t>& idx) {
        Matrix<T> diffs;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            std::vector<T> d(n);
            for (std::size_t c = 0; c < n; ++c) {
                d[c] = points[idx[i]][c] - points[idx[0]][c];
            }
            diffs.push_back(std::move(d));
        }
        if (matrix_rank(diffs, n, eps) != n - 1) {
            return;
        }
        std::vector<T> normal = nullspace(diffs, n, eps).front();
        T beta = dot_product(normal, points[idx[0]]);
        if (dot_product(normal, centroid) > beta) {
            for (auto& x : normal) {
                x = -x;
            }
            beta = -beta;
        }
        double nscale = 0.0;
        for (const auto& x : normal) {
            nscale = std::max(nscale, magnitude(x));
        }
        const double side_tol = eps * nscale * 4.0;
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < points.size(); ++i) {
            T s = dot_product(normal, points[i]) - beta;
            if (negligible(s, side_tol)) {
                on.push_back(i);
            } else if (s > T(0)) {
                return; // not a supporting hyperplane
            }
        }
        for (const auto& f : seen) {
            if (f == on) {
                return;
            }
        }
        seen.push_back(on);
        std::size_t drop = 0;
        for (std::size_t c = 1; c < n; ++c) {
            if (magnitude(normal[c]) > magnitude(normal[drop])) {
                drop = c;
            }
        }
        std::vector<std::vector<T>> projected;
        for (auto i : on) {
            std::vector<T> q;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != drop) {
                    q.push_back(points[i][c]);
                }
            }
            projected.push_back(std::move(q));
        }
        T facet = hull_volume(projected, n - 1, tol);
        T height = beta - dot_product(normal, centroid);
        T denom = normal[drop] < T(0) ? T(-normal[drop]) : normal[drop];
        total += height * facet / denom;
    });
    return total / T(static_cast<long>(n));
}

/// Euclidean distance from p to a (nonempty) floating polyhedron, by
/// enumerating candidate active sets of at most `dim` constraints.
double distance_to_polyhedron(const HalfspaceSystem<double>& sys, std::span<const double> p);

HalfspaceSystem<double> to_double_system(const HPolyhedron& h);

} // namespace tropdeg
