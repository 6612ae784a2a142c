#pragma once
// Independent reference computations used by the tests. Nothing here calls
// into the code under test except for plain data types.
#include "tropdeg/rational.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

/// Ray directions of a planar min-plus polynomial, found by walking a large
/// circle around `center` and recording where the minimizing term changes.
/// Each direction is returned as an angle in [0, 2pi).
inline std::vector<double> tropical_ray_angles(const std::map<std::vector<int>, double>& terms, double cx, double cy,
                                               double radius = 1e3, int steps = 1 << 16)
{
    auto argmin = [&](double x, double y) {
        double best = INFINITY;
        std::vector<int> arg;
        for (const auto& [alpha, c] : terms) {
            const double v = alpha[0] * x + alpha[1] * y + c;
            if (v < best) {
                best = v;
                arg = alpha;
            }
        }
        return arg;
    };
    std::vector<double> angles;
    auto at = [&](int k) {
        const double phi = 2.0 * std::numbers::pi * k / steps;
        return argmin(cx + radius * std::cos(phi), cy + radius * std::sin(phi));
    };
    auto prev = at(0);
    for (int k = 1; k <= steps; ++k) {
        auto cur = at(k % steps);
        if (cur != prev) {
            // bisect for the switching angle
            double lo = 2.0 * std::numbers::pi * (k - 1) / steps;
            double hi = 2.0 * std::numbers::pi * k / steps;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (argmin(cx + radius * std::cos(mid), cy + radius * std::sin(mid)) == prev) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            angles.push_back(std::fmod(0.5 * (lo + hi), 2.0 * std::numbers::pi));
        }
        prev = cur;
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

/// Points of a regular grid where the minimum of a min-plus polynomial is
/// attained twice up to `slack` (the grid shadow of the corner locus).
inline std::vector<std::array<double, 2>> tropical_grid_points(const std::map<std::vector<int>, double>& terms,
                                                               double lo, double hi, int n, double slack)
{
    std::vector<std::array<double, 2>> out;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double x = lo + (hi - lo) * i / n;
            const double y = lo + (hi - lo) * j / n;
            std::vector<double> v;
            for (const auto& [alpha, c] : terms) {
                v.push_back(alpha[0] * x + alpha[1] * y + c);
            }
            std::sort(v.begin(), v.end());
            if (v.size() >= 2 && v[1] - v[0] <= slack) {
                out.push_back({x, y});
            }
        }
    }
    return out;
}

/// Integral of exp(-sum lambda_i u_i) over the standard simplex {u >= 0,
/// sum u = 1} (volume 1/p!), via Hermite-Genocchi: the divided difference
/// of exp at the nodes -lambda, read off the exponential of a bidiagonal
/// matrix (this handles repeated nodes).
inline double simplex_exponential_integral(const std::vector<double>& lambda)
{
    const auto r = static_cast<Eigen::Index>(lambda.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
        a(i, i) = -lambda[static_cast<std::size_t>(i)];
        if (i + 1 < r) {
            a(i, i + 1) = 1.0;
        }
    }
    Eigen::MatrixXd e = a.exp();
    return e(0, r - 1);
}

/// Exact moments of the normalized Lebesgue measure on {w >= 0, sum b_i w_i = 1}:
/// u_i = b_i w_i is Dirichlet(1,...,1) on r coordinates.
inline double simplex_mean(int b, std::size_t r)
{
    return 1.0 / (static_cast<double>(r) * b);
}

inline double simplex_second_moment(int b, std::size_t r)
{
    const double rr = static_cast<double>(r);
    return 2.0 / (rr * (rr + 1.0) * b * b);
}

/// Binomial coefficient, for face counts of simplex boundaries.
inline std::size_t choose(std::size_t n, std::size_t k)
{
    std::size_t c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c;
}

/// Area of the convex hull of planar points (gift wrapping in doubles).
inline double hull_area(std::vector<std::array<double, 2>> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        return 0.0;
    }
    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<double, 2>> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) {
            --k;
        }
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) {
            --k;
        }
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    double area = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& p = h[i];
        const auto& q = h[(i + 1) % h.size()];
        area += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::abs(area);
}

} // namespace oracle
