#include "qsdome/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace qsdome::svg {

namespace {

void header(std::ostream& os, double canvas) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\"" << canvas
       << "\" viewBox=\"0 0 " << canvas << ' ' << canvas << "\">\n";
}

}  // namespace

void write_paths(std::ostream& os, const std::vector<Path>& paths, double canvas) {
    BBox box;
    for (const auto& p : paths)
        for (auto q : p.points) box.add(q);
    double ext = std::max(box.width(), box.height());
    if (!(ext > 0)) ext = 1.0;
    double margin = 0.05 * canvas;
    double s = (canvas - 2 * margin) / ext;
    auto X = [&](Vec2 p) { return margin + (p.x - box.lo.x) * s; };
    auto Y = [&](Vec2 p) { return canvas - margin - (p.y - box.lo.y) * s; };
    os.precision(6);
    header(os, canvas);
    for (const auto& p : paths) {
        if (p.points.empty()) continue;
        os << "<path fill=\"none\" stroke=\"" << p.stroke << "\" stroke-width=\"" << p.width << "\" d=\"";
        for (size_t i = 0; i < p.points.size(); ++i)
            os << (i ? " L" : "M") << X(p.points[i]) << ' ' << Y(p.points[i]);
        if (p.closed) os << " Z";
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

void write_loglog(std::ostream& os, const std::vector<Series>& series, const std::string& xlabel,
                  const std::string& ylabel, double canvas) {
    double inf = std::numeric_limits<double>::infinity();
    double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
    for (const auto& s : series)
        for (auto p : s.points) {
            if (!(p.x > 0 && p.y > 0) || !std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            x0 = std::min(x0, std::log10(p.x));
            x1 = std::max(x1, std::log10(p.x));
            y0 = std::min(y0, std::log10(p.y));
            y1 = std::max(y1, std::log10(p.y));
        }
    if (!(x0 <= x1)) x0 = 0, x1 = 1;
    if (!(y0 <= y1)) y0 = 0, y1 = 1;
    x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
    y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);
    double m = 0.1 * canvas, w = canvas - 2 * m;
    auto X = [&](double v) { return m + (std::log10(v) - x0) / (x1 - x0) * w; };
    auto Y = [&](double v) { return canvas - m - (std::log10(v) - y0) / (y1 - y0) * w; };
    os.precision(6);
    header(os, canvas);
    os << "<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << w << "\" height=\"" << w
       << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (double e = x0; e <= x1; e += 1)
        os << "<path fill=\"none\" stroke=\"#888\" d=\"M" << X(std::pow(10.0, e)) << ' ' << canvas - m << " l0 6\"/>\n";
    for (double e = y0; e <= y1; e += 1)
        os << "<path fill=\"none\" stroke=\"#888\" d=\"M" << m << ' ' << Y(std::pow(10.0, e)) << " l-6 0\"/>\n";
    os << "<text x=\"" << canvas / 2 << "\" y=\"" << canvas - m / 3 << "\" text-anchor=\"middle\">" << xlabel
       << " (1e" << x0 << " .. 1e" << x1 << ")</text>\n";
    os << "<text x=\"" << m / 3 << "\" y=\"" << canvas / 2 << "\" transform=\"rotate(-90 " << m / 3 << ' ' << canvas / 2
       << ")\" text-anchor=\"middle\">" << ylabel << " (1e" << y0 << " .. 1e" << y1 << ")</text>\n";
    for (const auto& s : series)
        for (auto p : s.points) {
            if (!(p.x > 0 && p.y > 0) || !std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            double cx = X(p.x), cy = Y(p.y);
            os << "<path fill=\"none\" stroke=\"" << s.stroke << "\" d=\"M" << cx - 3 << ' ' << cy - 3 << " l6 6 M"
               << cx - 3 << ' ' << cy + 3 << " l6 -6\"/>\n";
        }
    os << "</svg>\n";
}

}  // namespace qsdome::svg
