#include "sbvsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "sbvsim/errors.hpp"

namespace sbvsim {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 170.0;
constexpr double kMarginT = 46.0;
constexpr double kMarginB = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

// round tick step to 1/2/5 * 10^k
double nice_step(double span, int target_ticks) {
    if (span <= 0.0)
        return 1.0;
    const double raw = span / std::max(1, target_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step;
    if (frac <= 1.0) step = 1.0;
    else if (frac <= 2.0) step = 2.0;
    else if (frac <= 5.0) step = 5.0;
    else step = 10.0;
    return step * mag;
}

} // namespace

std::string render_line_chart(const ChartSpec& spec) {
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min, y_min = x_min, y_max = -x_min;
    bool any = false;
    for (const auto& s : spec.series) {
        if (s.x.size() != s.y.size())
            throw domain_error("chart series '" + s.label + "': x/y size mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            any = true;
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (!any)
        throw domain_error("chart has no data points");
    if (x_max == x_min) { x_max += 1.0; x_min -= 1.0; }
    if (y_max == y_min) { y_max += 1.0; y_min -= 1.0; }
    y_min = std::min(y_min, 0.0);

    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    const auto map_x = [&](double x) {
        return kMarginL + (x - x_min) / (x_max - x_min) * plot_w;
    };
    const auto map_y = [&](double y) {
        return kMarginT + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(spec.title) << "</text>\n";

    // grid + ticks
    const double xs = nice_step(x_max - x_min, 8);
    const double ys = nice_step(y_max - y_min, 8);
    svg << "  <g stroke=\"#dddddd\" stroke-width=\"1\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\"black\">\n";
    for (double x = std::ceil(x_min / xs) * xs; x <= x_max + 1e-9 * xs; x += xs) {
        const double px = map_x(x);
        svg << "    <line x1=\"" << num(px) << "\" y1=\"" << kMarginT
            << "\" x2=\"" << num(px) << "\" y2=\"" << kMarginT + plot_h << "\"/>\n";
        svg << "    <text x=\"" << num(px) << "\" y=\"" << kMarginT + plot_h + 16
            << "\" text-anchor=\"middle\" stroke=\"none\">" << num(x) << "</text>\n";
    }
    for (double y = std::ceil(y_min / ys) * ys; y <= y_max + 1e-9 * ys; y += ys) {
        const double py = map_y(y);
        svg << "    <line x1=\"" << kMarginL << "\" y1=\"" << num(py)
            << "\" x2=\"" << kMarginL + plot_w << "\" y2=\"" << num(py) << "\"/>\n";
        svg << "    <text x=\"" << kMarginL - 8 << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" stroke=\"none\">" << num(y) << "</text>\n";
    }
    svg << "  </g>\n";

    // axes
    svg << "  <g stroke=\"black\" stroke-width=\"1.5\">\n";
    svg << "    <line x1=\"" << kMarginL << "\" y1=\"" << kMarginT + plot_h
        << "\" x2=\"" << kMarginL + plot_w << "\" y2=\"" << kMarginT + plot_h << "\"/>\n";
    svg << "    <line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\""
        << kMarginL << "\" y2=\"" << kMarginT + plot_h << "\"/>\n";
    svg << "  </g>\n";
    svg << "  <text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(spec.x_label) << "</text>\n";
    svg << "  <text x=\"18\" y=\"" << kMarginT + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " << kMarginT + plot_h / 2 << ")\">"
        << xml_escape(spec.y_label) << "</text>\n";

    // series + legend
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        if (s.x.empty())
            continue;
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "  <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i)
                svg << ' ';
            svg << num(map_x(s.x[i])) << ',' << num(map_y(s.y[i]));
        }
        svg << "\"/>\n";
        const double ly = kMarginT + 12 + 18.0 * static_cast<double>(si);
        svg << "  <line x1=\"" << kMarginL + plot_w + 12 << "\" y1=\"" << num(ly)
            << "\" x2=\"" << kMarginL + plot_w + 34 << "\" y2=\"" << num(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "  <text x=\"" << kMarginL + plot_w + 40 << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace sbvsim
