#pragma once

// Dense Gaussian elimination shared by the exact (Rational) and floating
// (double) geometry code. Dimensions here are tiny (n <= 4), so plain nested
// vectors are used throughout.

#include "tropdeg/rational.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace tropdeg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline bool negligible(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
inline bool negligible(double x, double tol) { return std::abs(x) <= tol; }

inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(double x) { return std::abs(x); }

/// Default zero threshold for a floating matrix; ignored for rationals.
template <class T>
double elimination_tolerance(const Matrix<T>& m)
{
    double scale = 1.0;
    for (const auto& row : m) {
        for (const auto& x : row) {
            scale = std::max(scale, magnitude(x));
        }
    }
    return 1e-11 * scale;
}

template <class T>
struct RowEchelon {
    Matrix<T> rows;                      // reduced rows, pivot entries equal to 1
    std::vector<std::size_t> pivot_cols; // one per nonzero row
};

/// Reduced row echelon form over the first `cols` columns (extra columns are
/// carried along, e.g. an augmented right-hand side).
template <class T>
RowEchelon<T> reduced_row_echelon(Matrix<T> m, std::size_t cols, double tol)
{
    RowEchelon<T> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t best = m.size();
        double best_mag = -1.0;
        for (std::size_t i = r; i < m.size(); ++i) {
            if (negligible(m[i][c], tol)) {
                continue;
            }
            double mag = magnitude(m[i][c]);
            if (mag > best_mag) {
                best = i;
                best_mag = mag;
                if constexpr (std::is_same_v<T, Rational>) {
                    break;
                }
            }
        }
        if (best == m.size()) {
            continue;
        }
        std::swap(m[r], m[best]);
        T pivot = m[r][c];
        for (auto& x : m[r]) {
            x /= pivot;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || negligible(m[i][c], 0.0)) {
                continue;
            }
            T factor = m[i][c];
            for (std::size_t k = 0; k < m[i].size(); ++k) {
                m[i][k] -= factor * m[r][k];
            }
            m[i][c] = 0;
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

template <class T>
std::size_t matrix_rank(const Matrix<T>& m, std::size_t cols, double tol)
{
    return reduced_row_echelon(m, cols, tol).pivot_cols.size();
}

template <class T>
std::size_t matrix_rank(const Matrix<T>& m, std::size_t cols)
{
    return matrix_rank(m, cols, elimination_tolerance(m));
}

/// Basis of {x : m x = 0}, x in T^cols.
template <class T>
Matrix<T> nullspace(const Matrix<T>& m, std::size_t cols, double tol)
{
    auto ech = reduced_row_echelon(m, cols, tol);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : ech.pivot_cols) {
        is_pivot[c] = true;
    }
    Matrix<T> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<T> v(cols, T(0));
        v[free] = 1;
        for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
            v[ech.pivot_cols[r]] = -ech.rows[r][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Matrix<T> nullspace(const Matrix<T>& m, std::size_t cols)
{
    return nullspace(m, cols, elimination_tolerance(m));
}

/// Some solution of a x = b, or nullopt when inconsistent. Free variables are 0.
template <class T>
std::optional<std::vector<T>> solve_linear(const Matrix<T>& a, const std::vector<T>& b, std::size_t cols, double tol)
{
    Matrix<T> aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        aug[i].push_back(b[i]);
    }
    auto ech = reduced_row_echelon(aug, cols, tol);
    // rows with zero coefficient part but nonzero rhs make the system inconsistent
    auto check = reduced_row_echelon(aug, cols + 1, tol);
    if (check.pivot_cols.size() > ech.pivot_cols.size()) {
        return std::nullopt;
    }
    std::vector<T> x(cols, T(0));
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
        x[ech.pivot_cols[r]] = ech.rows[r][cols];
    }
    return x;
}

template <class T>
std::optional<std::vector<T>> solve_linear(const Matrix<T>& a, const std::vector<T>& b, std::size_t cols)
{
    Matrix<T> aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        aug[i].push_back(b[i]);
    }
    return solve_linear(a, b, cols, elimination_tolerance(aug));
}

template <class T>
T dot_product(const std::vector<T>& a, const std::vector<T>& b)
{
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

/// Calls `fn(indices)` for every k-subset of {0, ..., n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn)
{
    if (k > n) {
        return;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        fn(static_cast<const std::vector<std::size_t>&>(idx));
        if (k == 0) {
            return;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

} // namespace tropdeg
