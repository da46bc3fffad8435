#pragma once

#include <string>
#include <vector>

namespace rlab {

// Minimal line/scatter chart writer so CSV outputs can be eyeballed without
// any plotting dependency.
struct SvgSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
    bool line = true;  // false draws markers only
};

std::string render_svg_chart(const std::vector<SvgSeries>& series,
                             const std::string& x_label, const std::string& y_label);

}  // namespace rlab
