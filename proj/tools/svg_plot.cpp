#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace psched_cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace

std::string algorithm_color(int alg_id) {
    static const char* kPalette[12] = {"#1f77b4", "#aec7e8", "#4c9ed9", "#ff7f0e",
                                       "#ffbb78", "#d62728", "#2ca02c", "#98df8a",
                                       "#17becf", "#9467bd", "#8c564b", "#e377c2"};
    if (alg_id < 0) return "#000000";
    return kPalette[alg_id % 12];
}

std::string render_scatter_svg(const std::string& title, const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<Series>& series) {
    const double width = 860.0;
    const double height = 600.0;
    const double ml = 90.0, mr = 180.0, mt = 50.0, mb = 60.0;

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
    for (const Series& s : series) {
        for (const auto& [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_lo < x_hi)) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if (!(y_lo < y_hi)) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    const double x_pad = 0.04 * (x_hi - x_lo);
    const double y_pad = 0.04 * (y_hi - y_lo);
    x_lo -= x_pad;
    x_hi += x_pad;
    y_lo -= y_pad;
    y_hi += y_pad;

    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
    };

    std::string svg;
    svg += "<svg xmlns='http://www.w3.org/2000/svg' width='" + fmt(width) + "' height='" +
           fmt(height) + "' viewBox='0 0 " + fmt(width) + " " + fmt(height) + "'>\n";
    svg += "<rect width='100%' height='100%' fill='white'/>\n";
    svg += "<text x='" + fmt(width / 2) + "' y='26' text-anchor='middle' font-size='16' "
           "font-family='sans-serif'>" + title + "</text>\n";

    // axes
    svg += "<line x1='" + fmt(ml) + "' y1='" + fmt(height - mb) + "' x2='" + fmt(width - mr) +
           "' y2='" + fmt(height - mb) + "' stroke='black'/>\n";
    svg += "<line x1='" + fmt(ml) + "' y1='" + fmt(mt) + "' x2='" + fmt(ml) + "' y2='" +
           fmt(height - mb) + "' stroke='black'/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = x_lo + (x_hi - x_lo) * k / 4.0;
        const double fy = y_lo + (y_hi - y_lo) * k / 4.0;
        svg += "<text x='" + fmt(px(fx)) + "' y='" + fmt(height - mb + 18) +
               "' text-anchor='middle' font-size='11' font-family='sans-serif'>" + fmt(fx) +
               "</text>\n";
        svg += "<text x='" + fmt(ml - 8) + "' y='" + fmt(py(fy) + 4) +
               "' text-anchor='end' font-size='11' font-family='sans-serif'>" + fmt(fy) +
               "</text>\n";
    }
    svg += "<text x='" + fmt((ml + width - mr) / 2) + "' y='" + fmt(height - 14) +
           "' text-anchor='middle' font-size='13' font-family='sans-serif'>" + x_label +
           "</text>\n";
    svg += "<text x='20' y='" + fmt((mt + height - mb) / 2) +
           "' text-anchor='middle' font-size='13' font-family='sans-serif' transform='rotate(-90 "
           "20 " + fmt((mt + height - mb) / 2) + ")'>" + y_label + "</text>\n";

    double legend_y = mt + 10;
    for (const Series& s : series) {
        if (s.connect && s.points.size() > 1) {
            std::string path = "M";
            for (const auto& [x, y] : s.points)
                path += " " + fmt(px(x)) + " " + fmt(py(y));
            svg += "<path d='" + path + "' fill='none' stroke='" + s.color +
                   "' stroke-width='1.5'/>\n";
        }
        for (const auto& [x, y] : s.points)
            svg += "<circle cx='" + fmt(px(x)) + "' cy='" + fmt(py(y)) + "' r='2.5' fill='" +
                   s.color + "' fill-opacity='0.7'/>\n";
        svg += "<circle cx='" + fmt(width - mr + 16) + "' cy='" + fmt(legend_y) +
               "' r='4' fill='" + s.color + "'/>\n";
        svg += "<text x='" + fmt(width - mr + 26) + "' y='" + fmt(legend_y + 4) +
               "' font-size='12' font-family='sans-serif'>" + s.label + "</text>\n";
        legend_y += 18;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace psched_cli
