#pragma once

#include <string>
#include <vector>

#include "helix/vec3.hpp"

namespace helix {

enum class ViewPlane { XY, XZ, YZ };

struct RenderObject {
    std::string name; // used as path id and to pick a stroke color
    std::vector<Vec3> points;
};

/// Orthographic projection of the objects onto the view plane as a stroke-only
/// SVG: fixed 800x800 viewBox, unit sphere mapped to radius 380 px, no
/// external assets. Output is byte-deterministic.
std::string render_svg(const std::vector<RenderObject>& objects, ViewPlane view);

const char* view_name(ViewPlane view);

} // namespace helix
