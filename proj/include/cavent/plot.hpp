#pragma once

// Minimal static SVG line plots for sweep and spectrum tables.

#include <optional>
#include <string>
#include <vector>

namespace cavent {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;  // non-finite values break the line
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
    std::optional<double> hline;  // dashed reference line
};

std::string render_svg(const PlotSpec& spec);

}  // namespace cavent
