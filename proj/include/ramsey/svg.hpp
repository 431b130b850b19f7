#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramsey {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;  // NaN entries break the polyline
};

// Self-contained poly-line plot: axes, ticks, legend, nothing else.
void write_svg_plot(std::ostream& out, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series, int width = 900,
                    int height = 560);

void write_svg_plot_file(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<SvgSeries>& series, int width = 900,
                         int height = 560);

}  // namespace ramsey
