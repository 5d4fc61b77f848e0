#pragma once

#include <string>
#include <utility>
#include <vector>

namespace psched_cli {

// One plotted series in objective space.
struct Series {
    std::string label;
    std::string color;
    bool connect = false; // polyline through the points (used for the front)
    std::vector<std::pair<double, double>> points; // (energy, makespan)
};

// Self-contained SVG scatter with axes, ticks and a legend.
std::string render_scatter_svg(const std::string& title, const std::string& x_label,
                               const std::string& y_label, const std::vector<Series>& series);

// Stable 12-entry palette keyed by algorithm id.
std::string algorithm_color(int alg_id);

} // namespace psched_cli
