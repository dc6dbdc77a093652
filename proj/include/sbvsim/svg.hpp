#pragma once

#include <string>
#include <vector>

namespace sbvsim {

struct ChartSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
};

/// Standalone SVG with axes, one polyline per series and a legend.
/// Deterministic for identical input. Throws domain_error when no series
/// has data.
std::string render_line_chart(const ChartSpec& spec);

} // namespace sbvsim
