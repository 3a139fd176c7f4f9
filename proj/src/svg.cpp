#include <algorithm>

#include <fmt/format.h>

#include "circlepack/io.hpp"

namespace circlepack {

std::string render_svg(const SolutionFile& s) {
    constexpr double kView = 1000.0;
    const double scale = kView / s.L;
    const double half = 0.5 * s.L;
    const double stroke = 0.002 * kView;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {0:.0f} {0:.0f}\" width=\"{0:.0f}\" height=\"{0:.0f}\">\n",
        kView);
    out += fmt::format("<title>n={} L={:.11f}</title>\n", s.n, s.L);
    out += fmt::format(
        "<rect x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{0:.0f}\" fill=\"white\" stroke=\"black\" "
        "stroke-width=\"{1:.4f}\"/>\n",
        kView, 2.0 * stroke);
    for (const auto& row : s.rows) {
        const double cx = (row.x + half) * scale;
        const double cy = (half - row.y) * scale;  // SVG y grows downwards
        const double r = row.r * scale;
        out += fmt::format(
            "<circle cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\" fill=\"#cfe3f5\" stroke=\"#1f4e79\" "
            "stroke-width=\"{:.4f}\"/>\n",
            cx, cy, r, stroke);
        const double font = std::max(0.8 * r, 4.0);
        out += fmt::format(
            "<text x=\"{:.4f}\" y=\"{:.4f}\" font-family=\"sans-serif\" font-size=\"{:.4f}\" "
            "text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>\n",
            cx, cy, font, row.index);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace circlepack
