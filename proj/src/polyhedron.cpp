#include "tropdeg/polyhedron.hpp"

#include <cmath>

namespace tropdeg {

HalfspaceSystem<double> to_double_system(const HPolyhedron& h)
{
    HalfspaceSystem<double> out;
    out.dim = h.dim;
    for (std::size_t r = 0; r < h.eq_a.size(); ++r) {
        out.add_equation(to_doubles(h.eq_a[r]), h.eq_b[r].get_d());
    }
    for (std::size_t r = 0; r < h.ineq_a.size(); ++r) {
        out.add_inequality(to_doubles(h.ineq_a[r]), h.ineq_b[r].get_d());
    }
    return out;
}

namespace {

// Orthogonal projection of p onto {c x = d}; nullopt if c is rank deficient.
std::optional<std::vector<double>> project_affine(const Matrix<double>& c, const std::vector<double>& d,
                                                  std::span<const double> p)
{
    const std::size_t n = p.size();
    std::vector<double> x(p.begin(), p.end());
    if (c.empty()) {
        return x;
    }
    const std::size_t m = c.size();
    Matrix<double> gram(m, std::vector<double>(m, 0.0));
    std::vector<double> resid(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            gram[i][j] = dot_product(c[i], c[j]);
        }
        resid[i] = dot_product(c[i], x) - d[i];
    }
    if (matrix_rank(gram, m) != m) {
        return std::nullopt;
    }
    auto lambda = solve_linear(gram, resid, m);
    if (!lambda) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            x[k] -= (*lambda)[i] * c[i][k];
        }
    }
    return x;
}

} // namespace

double distance_to_polyhedron(const HalfspaceSystem<double>& sys, std::span<const double> p)
{
    const std::size_t n = sys.dim;
    Matrix<double> eq = sys.eq_a;
    std::vector<double> eq_rhs = sys.eq_b;
    // keep an independent subset of the equations
    {
        Matrix<double> kept;
        std::vector<double> kept_rhs;
        for (std::size_t r = 0; r < eq.size(); ++r) {
            Matrix<double> trial = kept;
            trial.push_back(eq[r]);
            if (matrix_rank(trial, n) == trial.size()) {
                kept = std::move(trial);
                kept_rhs.push_back(eq_rhs[r]);
            }
        }
        eq = std::move(kept);
        eq_rhs = std::move(kept_rhs);
    }
    const std::size_t free_dims = n - eq.size();
    double best = std::numeric_limits<double>::infinity();
    const double tol = 1e-9;
    for (std::size_t k = 0; k <= std::min(free_dims, sys.ineq_a.size()); ++k) {
        for_each_subset(sys.ineq_a.size(), k, [&](const std::vector<std::size_t>& active) {
            Matrix<double> c = eq;
            std::vector<double> d = eq_rhs;
            for (auto r : active) {
                c.push_back(sys.ineq_a[r]);
                d.push_back(sys.ineq_b[r]);
            }
            auto x = project_affine(c, d, p);
            if (!x) {
                return;
            }
            for (std::size_t r = 0; r < sys.ineq_a.size(); ++r) {
                const double s = dot_product(sys.ineq_a[r], *x);
                if (s > sys.ineq_b[r] + tol * (1.0 + std::abs(sys.ineq_b[r]))) {
                    return;
                }
            }
            double dist2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dist2 += ((*x)[i] - p[i]) * ((*x)[i] - p[i]);
            }
            best = std::min(best, std::sqrt(dist2));
        });
    }
    return best;
}

} // namespace tropdeg
