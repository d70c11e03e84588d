#pragma once

#include <string>
#include <vector>

#include "lorenzn/integrate.hpp"

namespace lorenzn {

/// Fixed branch-color palette (hex), cycled for n > 8. Keeping it frozen
/// makes colored figures comparable across runs.
const std::vector<std::string>& branch_palette();

struct RenderOptions {
    std::string projection = "x,z";  // two of x|y|z (or radius|angle for polar)
    int width = 800;
    int height = 600;
    bool color_by_branch = true;  // use the color channel when present
    std::string caption;          // extra caption line; metadata is always shown
};

/// Render a trajectory projection as a static SVG 1.1 document. Pure
/// function of its inputs: identical trajectory and options yield
/// byte-identical output. Throws ConfigError on an empty trajectory or a
/// malformed projection.
std::string render_svg(const Trajectory& traj, const RenderOptions& opts);

void render_svg_file(const Trajectory& traj, const RenderOptions& opts,
                     const std::string& path);

}  // namespace lorenzn
