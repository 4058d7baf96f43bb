#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/planar.hpp"
#include "core/sim.hpp"

namespace switchcert::svg {

/// One level-set boundary to draw, with its legend label and stroke color.
struct EllipseSpec {
    planar::Lyapunov lyapunov;
    double k = 0.0;
    std::string label;
    std::string color;
};

/// Self-contained SVG (inline styles, no external references) showing the
/// trajectory polyline in the (x1, x2) plane, each level-set boundary as a
/// 128-point polygon, and an optional vertical line x1 = v_th. The viewBox
/// is fitted to the drawn geometry with a 10% margin; x2 increases upward.
/// Long trajectories are thinned to at most 4000 polyline points (display
/// only; data exports are never thinned).
std::string render(const sim::Trajectory& traj, const std::vector<EllipseSpec>& ellipses,
                   std::optional<double> v_th);

}  // namespace switchcert::svg
