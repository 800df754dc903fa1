#pragma once

// Planar SVG rendering.  Doubles are used for pixel layout only; the verdict
// itself stays exact.  Output is deterministic: fixed canvas, fixed element
// order (frame, witness geometry, voters, winner), coordinates printed with
// two decimals.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "euclidvote/geometry.hpp"
#include "euclidvote/solver.hpp"

namespace euclidvote {

namespace detail {

struct SvgFrame {
    double min_x, min_y, scale;
    double width, height, margin;

    double px(double wx) const { return margin + (wx - min_x) * scale; }
    // SVG y grows downward; flip so the plot reads like a plane.
    double py(double wy) const { return height - margin - (wy - min_y) * scale; }
};

inline std::string svg_num(double v) {
    if (std::abs(v) < 0.005) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline void svg_line(std::string& out, const SvgFrame& f, double x1, double y1, double x2,
                     double y2, const char* style) {
    out += "  <line x1=\"" + svg_num(f.px(x1)) + "\" y1=\"" + svg_num(f.py(y1)) + "\" x2=\"" +
           svg_num(f.px(x2)) + "\" y2=\"" + svg_num(f.py(y2)) + "\" " + style + "/>\n";
}

inline void svg_circle(std::string& out, const SvgFrame& f, double x, double y, double r,
                       const char* style) {
    out += "  <circle cx=\"" + svg_num(f.px(x)) + "\" cy=\"" + svg_num(f.py(y)) + "\" r=\"" +
           svg_num(r) + "\" " + style + "/>\n";
}

}  // namespace detail

// Renders voters (and, when a verdict is given, the winner or the refuting
// witness geometry) for two-dimensional instances.
inline std::string render_svg(const VoterSet& s, const Verdict* v = nullptr) {
    if (s.dim() != 2) throw std::invalid_argument("render_svg: only dimension 2 is drawable");

    const double width = 640, height = 640, margin = 48;

    std::vector<std::pair<double, double>> world;
    for (const Point& p : s) world.emplace_back(p[0].to_double(), p[1].to_double());
    if (v) {
        if (v->winning_point)
            world.emplace_back((*v->winning_point)[0].to_double(),
                               (*v->winning_point)[1].to_double());
        if (v->winning_segment) {
            world.emplace_back(v->winning_segment->first[0].to_double(),
                               v->winning_segment->first[1].to_double());
            world.emplace_back(v->winning_segment->second[0].to_double(),
                               v->winning_segment->second[1].to_double());
        }
        if (v->witness)
            world.emplace_back(v->witness->candidate[0].to_double(),
                               v->witness->candidate[1].to_double());
    }

    double min_x = world[0].first, max_x = world[0].first;
    double min_y = world[0].second, max_y = world[0].second;
    for (auto [x, y] : world) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    // Pad degenerate extents so a lone point or axis-aligned set still frames.
    if (max_x - min_x < 1e-9) { min_x -= 1.0; max_x += 1.0; }
    if (max_y - min_y < 1e-9) { min_y -= 1.0; max_y += 1.0; }
    const double scale =
        std::min((width - 2 * margin) / (max_x - min_x), (height - 2 * margin) / (max_y - min_y));
    // Center the shorter axis.
    const double off_x = (width - 2 * margin - (max_x - min_x) * scale) / (2 * scale);
    const double off_y = (height - 2 * margin - (max_y - min_y) * scale) / (2 * scale);
    detail::SvgFrame f{min_x - off_x, min_y - off_y, scale, width, height, margin};

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    out += "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";

    // Witness geometry first so markers draw on top.  Infinite lines are
    // drawn long and clipped by the viewport.
    const double span = (max_x - min_x + max_y - min_y + 2.0) * 4.0;
    if (v && v->witness) {
        const auto& w = *v->witness;
        if (w.hyperplane) {
            const auto& h = *w.hyperplane;
            double nx = h.normal[0].to_double(), ny = h.normal[1].to_double();
            double nn = nx * nx + ny * ny;
            double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
            double t = (h.offset.to_double() - (cx * nx + cy * ny)) / nn;
            double bx = cx + t * nx, by = cy + t * ny;
            double len = std::sqrt(nn);
            double dx = -ny / len, dy = nx / len;
            detail::svg_line(out, f, bx - dx * span, by - dy * span, bx + dx * span,
                             by + dy * span,
                             "stroke=\"#b8860b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
        }
        if (w.line) {
            double bx = w.line->base[0].to_double(), by = w.line->base[1].to_double();
            double dx = w.line->dir[0].to_double(), dy = w.line->dir[1].to_double();
            double len = std::sqrt(dx * dx + dy * dy);
            dx /= len;
            dy /= len;
            detail::svg_line(out, f, bx - dx * span, by - dy * span, bx + dx * span,
                             by + dy * span, "stroke=\"#b22222\" stroke-width=\"1.5\"");
        }
        double wx = w.candidate[0].to_double(), wy = w.candidate[1].to_double();
        detail::svg_circle(out, f, wx, wy, 7,
                           "fill=\"none\" stroke=\"#b22222\" stroke-width=\"1.5\"");
    }

    for (const Point& p : s)
        detail::svg_circle(out, f, p[0].to_double(), p[1].to_double(), 4, "fill=\"#35608d\"");

    if (v && v->winning_segment) {
        double x1 = v->winning_segment->first[0].to_double();
        double y1 = v->winning_segment->first[1].to_double();
        double x2 = v->winning_segment->second[0].to_double();
        double y2 = v->winning_segment->second[1].to_double();
        detail::svg_line(out, f, x1, y1, x2, y2, "stroke=\"#1f8a4c\" stroke-width=\"3\"");
    }
    if (v && v->winning_point) {
        double wx = (*v->winning_point)[0].to_double(), wy = (*v->winning_point)[1].to_double();
        detail::svg_circle(out, f, wx, wy, 8,
                           "fill=\"none\" stroke=\"#1f8a4c\" stroke-width=\"2.5\"");
    }

    out += "</svg>\n";
    return out;
}

}  // namespace euclidvote
