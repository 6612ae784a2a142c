#include "tropdeg/amoeba.hpp"

#include "tropdeg/parallel.hpp"
#include "tropdeg/roots.hpp"
#include "tropdeg/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tropdeg {

ScaleFactor::ScaleFactor(Complex t) : t_(t)
{
    const double r = std::abs(t);
    if (!(r > 0.0) || !(r < std::exp(-1.0))) {
        throw std::invalid_argument("|t| must lie in (0, e^-1)");
    }
    eps_ = 1.0 / std::log(1.0 / r);
}

RealVector log_t(const std::vector<Complex>& x, const ScaleFactor& s)
{
    RealVector w(x.size());
    const double log_abs_t = std::log(s.abs_t());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::abs(x[i]);
        if (r == 0.0) {
            throw std::invalid_argument("log_t: coordinate " + std::to_string(i + 1) + " is zero");
        }
        w[i] = std::log(r) / log_abs_t;
    }
    return w;
}

bool Window::contains(const RealVector& w) const
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < lo[i] || w[i] > hi[i]) {
            return false;
        }
    }
    return true;
}

Window make_window(std::size_t n, double lo, double hi)
{
    if (!(lo < hi)) {
        throw std::invalid_argument("window needs lo < hi");
    }
    return Window{RealVector(n, lo), RealVector(n, hi)};
}

namespace {

bool depends_on_last(const LaurentPolynomial& f)
{
    for (const auto& [alpha, c] : f.terms()) {
        if (!alpha.empty() && alpha.back() != 0) {
            return true;
        }
    }
    return false;
}

struct ChunkResult {
    std::vector<RealVector> points;
    std::size_t degenerate = 0;
    std::size_t nonconvergent = 0;
    std::size_t residual = 0;
    std::size_t fallback = 0;
};

} // namespace

PointCloud sample_hypersurface(const LaurentPolynomial& f, const ScaleFactor& s, const Window& window,
                               const SampleOptions& options)
{
    const std::size_t n = f.num_vars();
    if (n == 0) {
        throw std::invalid_argument("polynomial has no variables");
    }
    if (!depends_on_last(f)) {
        throw std::invalid_argument("polynomial does not depend on the last variable z" + std::to_string(n));
    }
    if (options.count < 1) {
        throw std::invalid_argument("sample count must be >= 1");
    }
    if (window.dim() != n) {
        throw std::invalid_argument("window dimension differs from the number of variables");
    }
    const std::size_t chunk_size = 1024;
    const std::size_t chunks = (options.count + chunk_size - 1) / chunk_size;
    std::vector<ChunkResult> results(chunks);
    const double abs_t = s.abs_t();

    parallel_chunks(options.count, chunk_size, options.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto rng = stream_engine(options.seed, chunk);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        ChunkResult& out = results[chunk];
        std::vector<Complex> x(n);
        for (std::size_t draw = begin; draw < end; ++draw) {
            std::vector<Complex> leading(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double w = window.lo[i] + (window.hi[i] - window.lo[i]) * unit(rng);
                const double theta = 2.0 * std::numbers::pi * unit(rng);
                leading[i] = std::polar(std::pow(abs_t, w), theta);
            }
            int shift = 0;
            auto coeffs = f.specialize_last(s.t(), leading, shift);
            while (!coeffs.empty() && coeffs.back() == 0.0) {
                coeffs.pop_back();
            }
            std::size_t low = 0;
            while (low < coeffs.size() && coeffs[low] == 0.0) {
                ++low;
            }
            if (coeffs.size() <= low + 1) {
                ++out.degenerate;
                continue;
            }
            auto roots = find_roots(coeffs);
            if (!roots.converged) {
                ++out.nonconvergent;
                continue;
            }
            if (roots.used_fallback) {
                ++out.fallback;
            }
            for (const auto& z : roots.roots) {
                if (z == 0.0) {
                    continue;
                }
                std::copy(leading.begin(), leading.end(), x.begin());
                x.back() = z;
                const auto ev = f.evaluate(s.t(), x);
                if (!(std::abs(ev.value) <= options.residual_tolerance * ev.scale)) {
                    ++out.residual;
                    continue;
                }
                out.points.push_back(log_t(x, s));
            }
        }
    });

    PointCloud cloud;
    cloud.t = s.t();
    cloud.generator = to_string(f);
    cloud.window = window;
    cloud.seed = options.seed;
    cloud.samples = options.count;
    for (auto& r : results) {
        cloud.points.insert(cloud.points.end(), std::make_move_iterator(r.points.begin()),
                            std::make_move_iterator(r.points.end()));
        cloud.skipped_degenerate += r.degenerate;
        cloud.skipped_nonconvergent += r.nonconvergent;
        cloud.rejected_residual += r.residual;
        cloud.fallback_used += r.fallback;
    }
    std::sort(cloud.points.begin(), cloud.points.end());
    return cloud;
}

double one_sided_hausdorff(const std::vector<RealVector>& points, const PolyhedralComplex& complex,
                           const Window& window)
{
    if (complex.cells.empty()) {
        throw std::invalid_argument("distance to an empty complex is undefined");
    }
    std::vector<HalfspaceSystem<double>> cells;
    for (const auto& c : complex.cells) {
        cells.push_back(to_double_system(c.polyhedron));
    }
    double worst = -1.0;
    for (const auto& p : points) {
        if (!window.contains(p)) {
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : cells) {
            best = std::min(best, distance_to_polyhedron(c, p));
            if (best == 0.0) {
                break;
            }
        }
        worst = std::max(worst, best);
    }
    if (worst < 0.0) {
        throw std::invalid_argument("no cloud point lies inside the window");
    }
    return worst;
}

ConvergenceReport convergence_report(const LaurentPolynomial& f, Complex t0, double rho, std::size_t steps,
                                     const Window& window, const SampleOptions& options)
{
    if (!(rho > 0.0 && rho < 1.0)) {
        throw std::invalid_argument("ray ratio must lie in (0, 1)");
    }
    if (steps < 1) {
        throw std::invalid_argument("ray needs at least one step");
    }
    ScaleFactor first(t0); // validates |t0|
    (void)first;
    const auto complex = tropical_hypersurface(TropicalPolynomial::from_laurent(f));
    ConvergenceReport report;
    report.samples = options.count;
    report.seed = options.seed;
    Complex t = t0;
    for (std::size_t k = 0; k < steps; ++k, t *= rho) {
        ScaleFactor s(t);
        ConvergenceRow row;
        row.abs_t = s.abs_t();
        row.eps = s.eps();
        const auto cloud = sample_hypersurface(f, s, window, options);
        row.points = cloud.points.size();
        row.points_in_window = static_cast<std::size_t>(
            std::count_if(cloud.points.begin(), cloud.points.end(), [&](const RealVector& p) { return window.contains(p); }));
        row.skipped_degenerate = cloud.skipped_degenerate;
        row.skipped_nonconvergent = cloud.skipped_nonconvergent;
        row.rejected_residual = cloud.rejected_residual;
        try {
            row.distance = one_sided_hausdorff(cloud.points, complex, window);
        } catch (const std::invalid_argument& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace tropdeg
