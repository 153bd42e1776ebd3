#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "entri/balance.hpp"

namespace entri {

/// Axis colors, fixed across every rendering.
inline constexpr const char* kAxisDeltaColor = "#d4a017";  // delta', golden yellow
inline constexpr const char* kAxisInfoColor = "#2e8b57";   // information, green
inline constexpr const char* kAxisViColor = "#c0392b";     // VI', red
inline constexpr const char* kGridColor = "#cccccc";

inline constexpr double kSqrt3 = 1.7320508075688772;

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

/// De Finetti projection of a composition (delta', info', vi') onto the
/// plane: delta' vertex at (1,0), information apex at (0.5, sqrt(3)/2), VI'
/// vertex at the origin. Affine in the composition.
inline PlanePoint project(const TriangleCoord& c) {
    const double parts[3] = {c.delta_prime, c.info_prime, c.vi_prime};
    double sum = 0.0;
    for (double p : parts) {
        if (p < -1e-9 || p > 1.0 + 1e-9)
            throw ArgumentError("not a composition: part " + std::to_string(p) +
                                " outside [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ArgumentError("not a composition: parts sum to " + std::to_string(sum));
    return {c.info_prime / 2.0 + c.delta_prime, c.info_prime * kSqrt3 / 2.0};
}

enum class Glyph { Cross, Circle, FilledCircle, FilledTriangle };

struct PlotPoint {
    TriangleCoord coord;
    std::string label;
    Glyph glyph = Glyph::FilledCircle;
    std::string color = "#222222";
};

struct PlotSpec {
    std::string title;
    std::vector<PlotPoint> points;
    double grid_step = 0.2;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

inline std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

/// Renders the spec as a standalone SVG document. Output is byte-identical
/// for identical specs: no timestamps, ids, or locale-dependent formatting.
inline std::string render_svg(const PlotSpec& spec) {
    if (spec.grid_step != 0.1 && spec.grid_step != 0.2 && spec.grid_step != 0.25)
        throw ArgumentError("grid step must be one of 0.1, 0.2, 0.25");

    constexpr double kWidth = 800.0, kHeight = 720.0, kMargin = 40.0;
    constexpr double kScale = 720.0;  // pixels per unit simplex coordinate

    const auto px = [&](const PlanePoint& p) -> PlanePoint {
        return {kMargin + kScale * p.x, kHeight - kMargin - kScale * p.y};
    };
    const auto line = [&](std::ostringstream& os, PlanePoint a, PlanePoint b,
                          const char* color, const char* width) {
        const PlanePoint pa = px(a), pb = px(b);
        os << "  <line x1=\"" << detail::fixed2(pa.x) << "\" y1=\"" << detail::fixed2(pa.y)
           << "\" x2=\"" << detail::fixed2(pb.x) << "\" y2=\"" << detail::fixed2(pb.y)
           << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
    };

    const PlanePoint vertex_vi{0.0, 0.0};
    const PlanePoint vertex_delta{1.0, 0.0};
    const PlanePoint apex{0.5, kSqrt3 / 2.0};

    bool any_aggregate = false, any_split = false;
    for (const PlotPoint& p : spec.points)
        (p.coord.kind == CoordKind::Aggregate ? any_aggregate : any_split) = true;
    const std::string info_label = any_aggregate && any_split ? "I' | 2I'"
                                   : any_aggregate            ? "2I'"
                                                              : "I'";

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"720\" "
          "viewBox=\"0 0 800 720\">\n";
    os << "<rect width=\"800\" height=\"720\" fill=\"#ffffff\"/>\n";
    if (!spec.title.empty())
        os << "<text x=\"40\" y=\"26\" font-family=\"sans-serif\" font-size=\"18\" "
              "fill=\"#222222\">"
           << detail::xml_escape(spec.title) << "</text>\n";

    os << "<g id=\"grid\">\n";
    const int steps = static_cast<int>(std::lround(1.0 / spec.grid_step));
    for (int s = 1; s < steps; ++s) {
        const double f = spec.grid_step * s;
        // Level sets of each coordinate: delta' = f, info' = f, vi' = f.
        line(os, project({f, 0.0, 1.0 - f}), project({f, 1.0 - f, 0.0}), kGridColor, "1");
        line(os, project({0.0, f, 1.0 - f}), project({1.0 - f, f, 0.0}), kGridColor, "1");
        line(os, project({0.0, 1.0 - f, f}), project({1.0 - f, 0.0, f}), kGridColor, "1");
    }
    os << "</g>\n";

    os << "<g id=\"axes\">\n";
    line(os, vertex_vi, vertex_delta, kAxisDeltaColor, "2");
    line(os, vertex_delta, apex, kAxisInfoColor, "2");
    line(os, apex, vertex_vi, kAxisViColor, "2");
    const auto axis_label = [&](PlanePoint unit, const char* anchor, double dy,
                                const std::string& text, const char* color) {
        const PlanePoint p = px(unit);
        os << "  <text x=\"" << detail::fixed2(p.x) << "\" y=\"" << detail::fixed2(p.y + dy)
           << "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"" << anchor
           << "\" fill=\"" << color << "\">" << detail::xml_escape(text) << "</text>\n";
    };
    axis_label({0.5, 0.0}, "middle", 24.0, "ΔH'", kAxisDeltaColor);
    axis_label({0.77, kSqrt3 / 4.0}, "start", 0.0, info_label, kAxisInfoColor);
    axis_label({0.23, kSqrt3 / 4.0}, "end", 0.0, "VI'", kAxisViColor);
    os << "</g>\n";

    os << "<g id=\"points\">\n";
    for (const PlotPoint& p : spec.points) {
        const PlanePoint c = px(project(p.coord));
        const std::string x = detail::fixed2(c.x), y = detail::fixed2(c.y);
        switch (p.glyph) {
            case Glyph::Cross:
                os << "  <path d=\"M " << detail::fixed2(c.x - 5) << ' '
                   << detail::fixed2(c.y - 5) << " L " << detail::fixed2(c.x + 5) << ' '
                   << detail::fixed2(c.y + 5) << " M " << detail::fixed2(c.x - 5) << ' '
                   << detail::fixed2(c.y + 5) << " L " << detail::fixed2(c.x + 5) << ' '
                   << detail::fixed2(c.y - 5) << "\" stroke=\"" << p.color
                   << "\" stroke-width=\"2\" fill=\"none\"/>\n";
                break;
            case Glyph::Circle:
                os << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" stroke=\""
                   << p.color << "\" stroke-width=\"2\" fill=\"none\"/>\n";
                break;
            case Glyph::FilledCircle:
                os << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\""
                   << p.color << "\"/>\n";
                break;
            case Glyph::FilledTriangle:
                os << "  <path d=\"M " << detail::fixed2(c.x - 6) << ' '
                   << detail::fixed2(c.y - 5) << " L " << detail::fixed2(c.x + 6) << ' '
                   << detail::fixed2(c.y - 5) << " L " << x << ' ' << detail::fixed2(c.y + 6)
                   << " Z\" fill=\"" << p.color << "\"/>\n";
                break;
        }
        if (!p.label.empty())
            os << "  <text x=\"" << detail::fixed2(c.x + 8) << "\" y=\""
               << detail::fixed2(c.y + 4)
               << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">"
               << detail::xml_escape(p.label) << "</text>\n";
    }
    os << "</g>\n";

    os << "<g id=\"legend\">\n";
    bool present[4] = {false, false, false, false};
    for (const PlotPoint& p : spec.points) present[static_cast<int>(p.glyph)] = true;
    const char* names[4] = {"X block", "Y block", "aggregate", "series"};
    double ly = 50.0;
    for (int g = 0; g < 4; ++g) {
        if (!present[g]) continue;
        const double lx = 640.0;
        switch (static_cast<Glyph>(g)) {
            case Glyph::Cross:
                os << "  <path d=\"M " << detail::fixed2(lx - 5) << ' ' << detail::fixed2(ly - 5)
                   << " L " << detail::fixed2(lx + 5) << ' ' << detail::fixed2(ly + 5) << " M "
                   << detail::fixed2(lx - 5) << ' ' << detail::fixed2(ly + 5) << " L "
                   << detail::fixed2(lx + 5) << ' ' << detail::fixed2(ly - 5)
                   << "\" stroke=\"#222222\" stroke-width=\"2\" fill=\"none\"/>\n";
                break;
            case Glyph::Circle:
                os << "  <circle cx=\"" << detail::fixed2(lx) << "\" cy=\"" << detail::fixed2(ly)
                   << "\" r=\"5\" stroke=\"#222222\" stroke-width=\"2\" fill=\"none\"/>\n";
                break;
            case Glyph::FilledCircle:
                os << "  <circle cx=\"" << detail::fixed2(lx) << "\" cy=\"" << detail::fixed2(ly)
                   << "\" r=\"5\" fill=\"#222222\"/>\n";
                break;
            case Glyph::FilledTriangle:
                os << "  <path d=\"M " << detail::fixed2(lx - 6) << ' ' << detail::fixed2(ly - 5)
                   << " L " << detail::fixed2(lx + 6) << ' ' << detail::fixed2(ly - 5) << " L "
                   << detail::fixed2(lx) << ' ' << detail::fixed2(ly + 6)
                   << " Z\" fill=\"#222222\"/>\n";
                break;
        }
        os << "  <text x=\"" << detail::fixed2(lx + 12) << "\" y=\"" << detail::fixed2(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\">" << names[g]
           << "</text>\n";
        ly += 22.0;
    }
    os << "</g>\n";

    os << "</svg>\n";
    return os.str();
}

}  // namespace entri
