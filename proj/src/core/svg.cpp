#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace switchcert::svg {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Box {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    bool any = false;

    void add(Vec2 p) {
        if (!any) {
            min_x = max_x = p.x1;
            min_y = max_y = p.x2;
            any = true;
            return;
        }
        min_x = std::min(min_x, p.x1);
        max_x = std::max(max_x, p.x1);
        min_y = std::min(min_y, p.x2);
        max_y = std::max(max_y, p.x2);
    }
};

constexpr int kEllipsePoints = 128;
constexpr std::size_t kMaxPolylinePoints = 4000;

}  // namespace

std::string render(const sim::Trajectory& traj, const std::vector<EllipseSpec>& ellipses,
                   std::optional<double> v_th) {
    // Thinned copy of the trajectory for display.
    std::vector<Vec2> path;
    const std::size_t n = traj.samples.size();
    if (n > 0) {
        const std::size_t stride = (n + kMaxPolylinePoints - 1) / kMaxPolylinePoints;
        for (std::size_t i = 0; i < n; i += stride) path.push_back(traj.samples[i].x);
        if (path.back().x1 != traj.samples.back().x.x1 ||
            path.back().x2 != traj.samples.back().x.x2)
            path.push_back(traj.samples.back().x);
    }

    Box box;
    for (const Vec2& p : path) box.add(p);
    std::vector<std::vector<Vec2>> rings;
    for (const EllipseSpec& e : ellipses) {
        std::vector<Vec2> ring;
        for (int j = 0; j < kEllipsePoints; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / kEllipsePoints;
            const Vec2 p = e.lyapunov.boundary_point(e.k, phi);
            ring.push_back(p);
            box.add(p);
        }
        rings.push_back(std::move(ring));
    }
    if (v_th) box.add({*v_th, box.any ? box.min_y : 0.0});
    if (!box.any) box.add({0.0, 0.0});

    const double pad_x = std::max(0.1 * (box.max_x - box.min_x), 1e-3);
    const double pad_y = std::max(0.1 * (box.max_y - box.min_y), 1e-3);
    box.min_x -= pad_x;
    box.max_x += pad_x;
    box.min_y -= pad_y;
    box.max_y += pad_y;

    const double width = box.max_x - box.min_x;
    const double height = box.max_y - box.min_y;
    const double stroke = 0.004 * std::max(width, height);
    const double font = 0.035 * std::max(width, height);

    // World x2 grows upward; SVG y grows downward, so y = -x2 throughout.
    auto sy = [](double x2) { return -x2; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(box.min_x) + " " +
           fmt(sy(box.max_y)) + " " + fmt(width) + " " + fmt(height) + "\">\n";
    out += "<rect x=\"" + fmt(box.min_x) + "\" y=\"" + fmt(sy(box.max_y)) + "\" width=\"" +
           fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"white\"/>\n";

    for (std::size_t i = 0; i < rings.size(); ++i) {
        const EllipseSpec& e = ellipses[i];
        out += "<polygon fill=\"none\" stroke=\"" + e.color + "\" stroke-width=\"" +
               fmt(stroke) + "\" points=\"";
        for (const Vec2& p : rings[i]) out += fmt(p.x1) + "," + fmt(sy(p.x2)) + " ";
        out += "\"/>\n";
        if (!e.label.empty()) {
            const Vec2 top = e.lyapunov.boundary_point(e.k, 0.5 * std::numbers::pi);
            out += "<text x=\"" + fmt(top.x1) + "\" y=\"" + fmt(sy(top.x2) - 0.5 * font) +
                   "\" font-family=\"sans-serif\" font-size=\"" + fmt(font) + "\" fill=\"" +
                   e.color + "\">" + e.label + "</text>\n";
        }
    }

    if (v_th) {
        out += "<line x1=\"" + fmt(*v_th) + "\" y1=\"" + fmt(sy(box.max_y)) + "\" x2=\"" +
               fmt(*v_th) + "\" y2=\"" + fmt(sy(box.min_y)) + "\" stroke=\"#b02a2a\"" +
               " stroke-width=\"" + fmt(stroke) + "\" stroke-dasharray=\"" + fmt(4.0 * stroke) +
               "\"/>\n";
    }

    if (!path.empty()) {
        out += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"" + fmt(stroke) +
               "\" points=\"";
        for (const Vec2& p : path) out += fmt(p.x1) + "," + fmt(sy(p.x2)) + " ";
        out += "\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace switchcert::svg
