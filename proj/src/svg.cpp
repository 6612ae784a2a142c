#include "tropdeg/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tropdeg {

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Segment {
    double x0, y0, x1, y1;
};

// Liang-Barsky clipping of p + s (q - p), s in [s0, s1], to the window.
std::optional<Segment> clip(double px, double py, double dx, double dy, double s0, double s1, const Window& w)
{
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {px - w.lo[0], w.hi[0] - px, py - w.lo[1], w.hi[1] - py};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) {
                return std::nullopt;
            }
            continue;
        }
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
            s0 = std::max(s0, r);
        } else {
            s1 = std::min(s1, r);
        }
    }
    if (s0 > s1) {
        return std::nullopt;
    }
    return Segment{px + s0 * dx, py + s0 * dy, px + s1 * dx, py + s1 * dy};
}

} // namespace

std::string render_svg(const std::vector<RealVector>& points, const PolyhedralComplex& complex,
                       const Window& window, const SvgOptions& options)
{
    if (window.dim() != 2) {
        throw std::invalid_argument("SVG output is available for two-dimensional windows only");
    }
    if (!complex.empty() && complex.ambient_dim != 2) {
        throw std::invalid_argument("SVG output needs a complex in the plane");
    }
    const double size = options.size;
    const double sx = size / (window.hi[0] - window.lo[0]);
    const double sy = size / (window.hi[1] - window.lo[1]);
    auto X = [&](double x) { return num((x - window.lo[0]) * sx); };
    auto Y = [&](double y) { return num((window.hi[1] - y) * sy); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
        << "\" viewBox=\"0 0 " << options.size << ' ' << options.size << "\">\n";
    if (!options.title.empty()) {
        svg << "<title>" << escape(options.title) << "</title>\n";
    }
    if (!options.metadata.empty()) {
        svg << "<metadata>" << escape(options.metadata) << "</metadata>\n";
    }
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\" stroke=\"black\"/>\n";
    // axes through the origin when visible
    if (window.lo[0] < 0.0 && window.hi[0] > 0.0) {
        svg << "<line x1=\"" << X(0) << "\" y1=\"0\" x2=\"" << X(0) << "\" y2=\"" << options.size
            << "\" stroke=\"#ccc\"/>\n";
    }
    if (window.lo[1] < 0.0 && window.hi[1] > 0.0) {
        svg << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << options.size << "\" y2=\"" << Y(0)
            << "\" stroke=\"#ccc\"/>\n";
    }
    svg << "<g fill=\"steelblue\" fill-opacity=\"0.5\">\n";
    for (const auto& p : points) {
        if (p.size() == 2 && window.contains(p)) {
            svg << "<circle cx=\"" << X(p[0]) << "\" cy=\"" << Y(p[1]) << "\" r=\"1.2\"/>\n";
        }
    }
    svg << "</g>\n<g stroke=\"crimson\" stroke-width=\"2\" fill=\"crimson\">\n";
    const double far = 1e6;
    for (const auto& cell : complex.cells) {
        const auto& g = cell.generators;
        std::vector<RealVector> vs;
        for (const auto& v : g.vertices) {
            vs.push_back(to_doubles(v));
        }
        std::optional<Segment> seg;
        if (cell.dimension == 0 && vs.size() == 1) {
            if (window.contains(vs[0])) {
                svg << "<circle cx=\"" << X(vs[0][0]) << "\" cy=\"" << Y(vs[0][1]) << "\" r=\"3\"/>\n";
            }
            continue;
        }
        if (cell.dimension != 1 || vs.empty()) {
            continue; // two-dimensional cells are left unfilled
        }
        if (vs.size() == 2) {
            seg = clip(vs[0][0], vs[0][1], vs[1][0] - vs[0][0], vs[1][1] - vs[0][1], 0.0, 1.0, window);
        } else if (g.rays.size() == 1) {
            const auto r = to_doubles(g.rays[0]);
            seg = clip(vs[0][0], vs[0][1], r[0], r[1], 0.0, far, window);
        } else if (g.lineality.size() == 1) {
            const auto l = to_doubles(g.lineality[0]);
            seg = clip(vs[0][0], vs[0][1], l[0], l[1], -far, far, window);
        }
        if (seg) {
            svg << "<line x1=\"" << X(seg->x0) << "\" y1=\"" << Y(seg->y0) << "\" x2=\"" << X(seg->x1)
                << "\" y2=\"" << Y(seg->y1) << "\"/>\n";
        }
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

} // namespace tropdeg
