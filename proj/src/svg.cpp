#include "rlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

std::string render_svg_chart(const std::vector<SvgSeries>& series,
                             const std::string& x_label, const std::string& y_label) {
    if (series.empty()) throw UsageError("render_svg_chart: no series");
    const double width = 640, height = 420;
    const double left = 60, right = 20, top = 20, bottom = 50;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        if (s.xs.size() != s.ys.size())
            throw UsageError("render_svg_chart: series length mismatch");
        for (double x : s.xs) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
        for (double y : s.ys) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmin > xmax) throw UsageError("render_svg_chart: empty series");
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    ymin = std::min(ymin, 0.0);

    auto px = [&](double x) {
        return left + (x - xmin) / (xmax - xmin) * (width - left - right);
    };
    auto py = [&](double y) {
        return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom);
    };

    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << left << "\" y1=\"" << py(ymin) << "\" x2=\"" << width - right
        << "\" y2=\"" << py(ymin) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << py(ymin) << "\" stroke=\"black\"/>\n";
    // tick labels at the extremes
    out << "<text x=\"" << left << "\" y=\"" << height - bottom + 18
        << "\" font-size=\"11\">" << xmin << "</text>\n";
    out << "<text x=\"" << width - right - 30 << "\" y=\"" << height - bottom + 18
        << "\" font-size=\"11\">" << xmax << "</text>\n";
    out << "<text x=\"8\" y=\"" << py(ymax) << "\" font-size=\"11\">" << ymax
        << "</text>\n";
    out << "<text x=\"8\" y=\"" << py(ymin) << "\" font-size=\"11\">" << ymin
        << "</text>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"14\" y=\"" << height / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << height / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 5];
        if (s.line && s.xs.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.xs.size(); ++i)
                out << px(s.xs[i]) << ',' << py(s.ys[i]) << ' ';
            out << "\"/>\n";
        }
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            out << "<circle cx=\"" << px(s.xs[i]) << "\" cy=\"" << py(s.ys[i])
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << width - right - 150 << "\" y=\"" << top + 16 + 14 * k
            << "\" font-size=\"12\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace rlab
