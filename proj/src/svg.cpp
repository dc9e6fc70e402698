#include "helix/svg.hpp"

#include <array>
#include <cstdio>

namespace helix {

namespace {

constexpr int kSize = 800;
constexpr double kScale = 380.0;

std::array<double, 2> to_px(const Vec3& p, ViewPlane view) {
    double u = 0.0, v = 0.0;
    switch (view) {
        case ViewPlane::XY: u = p.x; v = p.y; break;
        case ViewPlane::XZ: u = p.x; v = p.z; break;
        case ViewPlane::YZ: u = p.y; v = p.z; break;
    }
    return {kSize / 2.0 + kScale * u, kSize / 2.0 - kScale * v};
}

const char* color_for(const std::string& name) {
    if (name == "T") return "#d62728";
    if (name == "N") return "#2ca02c";
    if (name == "B") return "#1f77b4";
    if (name == "Y") return "#9467bd";
    return "#111111"; // the curve itself
}

void append_px(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    out += buf;
}

} // namespace

const char* view_name(ViewPlane view) {
    switch (view) {
        case ViewPlane::XY: return "xy";
        case ViewPlane::XZ: return "xz";
        default: return "yz";
    }
}

std::string render_svg(const std::vector<RenderObject>& objects, ViewPlane view) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\">\n";
    out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    out += "<circle cx=\"400\" cy=\"400\" r=\"380\" fill=\"none\" stroke=\"#cccccc\" "
           "stroke-width=\"1\"/>\n";
    for (const auto& obj : objects) {
        if (obj.points.empty()) continue;
        out += "<path id=\"";
        out += obj.name;
        out += "\" fill=\"none\" stroke=\"";
        out += color_for(obj.name);
        out += "\" stroke-width=\"1.5\" d=\"";
        bool first = true;
        for (const Vec3& p : obj.points) {
            const auto [u, v] = to_px(p, view);
            out += first ? "M" : " L";
            first = false;
            append_px(out, u);
            out += ",";
            append_px(out, v);
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace helix
