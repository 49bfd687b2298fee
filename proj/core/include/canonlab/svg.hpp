#pragma once

#include <string>
#include <utility>
#include <vector>

namespace canonlab {

struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<std::pair<double, double>> points;
};

/// Minimal self-contained line chart. log_y switches the y axis to log10;
/// non-positive y values are clamped to the smallest positive value present.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<SvgSeries>& series,
                              bool log_y);

void save_svg(const std::string& path, const std::string& svg);

}  // namespace canonlab
