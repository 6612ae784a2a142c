#include "tropdeg/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tropdeg {

void horner(const std::vector<Complex>& coeffs, Complex z, Complex& p, Complex& dp)
{
    p = 0.0;
    dp = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + coeffs[k];
    }
}

namespace {

// Starting points on circles whose radii come from the upper convex hull of
// (k, log|c_k|), so that roots of very different magnitudes start close to
// their true moduli.
std::vector<Complex> initial_guesses(const std::vector<Complex>& c)
{
    const std::size_t d = c.size() - 1;
    std::vector<std::size_t> hull;
    std::vector<double> logs(c.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k <= d; ++k) {
        if (std::abs(c[k]) > 0.0) {
            logs[k] = std::log(std::abs(c[k]));
        }
    }
    for (std::size_t k = 0; k <= d; ++k) {
        if (!std::isfinite(logs[k])) {
            continue;
        }
        while (hull.size() >= 2) {
            const std::size_t i = hull[hull.size() - 2];
            const std::size_t j = hull.back();
            // pop j if it lies on or below the segment from i to k
            const double cross = (logs[j] - logs[i]) * double(k - i) - (logs[k] - logs[i]) * double(j - i);
            if (cross <= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(k);
    }
    std::vector<Complex> z;
    z.reserve(d);
    constexpr double offset = 0.4;
    for (std::size_t h = 1; h < hull.size(); ++h) {
        const std::size_t i = hull[h - 1];
        const std::size_t j = hull[h];
        const std::size_t count = j - i;
        const double radius = std::exp((logs[i] - logs[j]) / double(count));
        for (std::size_t r = 0; r < count; ++r) {
            const double angle = 2.0 * std::numbers::pi * double(r) / double(count) + offset + double(h);
            z.push_back(std::polar(radius, angle));
        }
    }
    return z;
}

bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z, const RootOptions& options, int& iterations)
{
    const std::size_t d = z.size();
    std::vector<bool> done(d, false);
    for (iterations = 0; iterations < options.max_iterations; ++iterations) {
        bool all_done = true;
        for (std::size_t k = 0; k < d; ++k) {
            if (done[k]) {
                continue;
            }
            Complex p;
            Complex dp;
            horner(c, z[k], p, dp);
            if (p == 0.0) {
                done[k] = true;
                continue;
            }
            const Complex ratio = p / dp;
            Complex sum = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j != k) {
                    sum += 1.0 / (z[k] - z[j]);
                }
            }
            const Complex step = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                return false;
            }
            z[k] -= step;
            if (std::abs(step) <= options.tolerance * std::abs(z[k])) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if (all_done) {
            return true;
        }
    }
    return false;
}

bool companion(const std::vector<Complex>& c, std::vector<Complex>& z)
{
    const auto d = static_cast<Eigen::Index>(c.size() - 1);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) {
        m(i, i - 1) = 1.0;
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        m(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) {
        return false;
    }
    z.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
    return std::all_of(z.begin(), z.end(), [](Complex x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

void polish(const std::vector<Complex>& c, std::vector<Complex>& z)
{
    for (auto& x : z) {
        for (int it = 0; it < 3; ++it) {
            Complex p;
            Complex dp;
            horner(c, x, p, dp);
            if (dp == 0.0) {
                break;
            }
            const Complex next = x - p / dp;
            Complex pn;
            Complex dpn;
            horner(c, next, pn, dpn);
            if (!(std::abs(pn) < std::abs(p))) {
                break;
            }
            x = next;
        }
    }
}

} // namespace

RootResult find_roots(std::vector<Complex> coeffs, const RootOptions& options)
{
    RootResult out;
    while (!coeffs.empty() && coeffs.back() == 0.0) {
        coeffs.pop_back();
    }
    std::size_t zeros = 0;
    while (zeros + 1 < coeffs.size() && coeffs[zeros] == 0.0) {
        ++zeros;
    }
    out.roots.assign(zeros, Complex(0.0));
    std::vector<Complex> c(coeffs.begin() + static_cast<std::ptrdiff_t>(zeros), coeffs.end());
    if (c.size() <= 1) {
        out.converged = true;
        return out;
    }
    if (c.size() == 2) {
        out.roots.push_back(-c[0] / c[1]);
        out.converged = true;
        return out;
    }
    std::vector<Complex> z = initial_guesses(c);
    if (aberth(c, z, options, out.iterations)) {
        out.converged = true;
    } else {
        out.used_fallback = true;
        out.converged = companion(c, z);
        if (out.converged) {
            polish(c, z);
        }
    }
    out.roots.insert(out.roots.end(), z.begin(), z.end());
    return out;
}

} // namespace tropdeg
