#pragma once
// Fixed-viewport SVG scatter plots of two-dimensional point clouds with a
// polyhedral complex drawn on top. No timestamps, so output is reproducible.
#include "tropdeg/amoeba.hpp"
#include "tropdeg/polyhedral.hpp"

#include <string>
#include <vector>

namespace tropdeg {

struct SvgOptions {
    int size = 600; // pixels per side
    std::string title;
    std::string metadata; // written verbatim (escaped) into <metadata>
};

/// Points outside the window are dropped; complex cells are clipped to it.
std::string render_svg(const std::vector<RealVector>& points, const PolyhedralComplex& complex,
                       const Window& window, const SvgOptions& options = {});

} // namespace tropdeg
