#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "curvebeam/config.hpp"
#include "curvebeam/prediction.hpp"

namespace curvebeam {
namespace detail {

struct SvgCanvas {
    double min_x = 0.0, max_x = 0.0, min_z = 0.0, max_z = 0.0;
    double scale = 2000.0;

    double px(double x) const { return (x - min_x) * scale; }
    double py(double z) const { return (max_z - z) * scale; }  // SVG y grows downward
    double width() const { return (max_x - min_x) * scale; }
    double height() const { return (max_z - min_z) * scale; }
};

inline void svg_num(std::string& out, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    out += buf;
}

inline void svg_polyline(std::string& out, const SvgCanvas& c, const std::vector<Point2>& pts,
                         const char* style) {
    if (pts.size() < 2) return;
    out += "<polyline fill=\"none\" ";
    out += style;
    out += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        svg_num(out, c.px(pts[i].x));
        out += ',';
        svg_num(out, c.py(pts[i].z));
    }
    out += "\"/>\n";
}

inline void svg_line(std::string& out, const SvgCanvas& c, Point2 a, Point2 b, const char* style) {
    out += "<line ";
    out += style;
    out += " x1=\"";
    svg_num(out, c.px(a.x));
    out += "\" y1=\"";
    svg_num(out, c.py(a.z));
    out += "\" x2=\"";
    svg_num(out, c.px(b.x));
    out += "\" y2=\"";
    svg_num(out, c.py(b.z));
    out += "\"/>\n";
}

// Point where a ray leaving p along d crosses the canvas border.
inline Point2 ray_to_border(const SvgCanvas& c, Point2 p, Direction2 d) {
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](double t) {
        if (t > 0.0 && t < best) best = t;
    };
    if (d.dx > 0.0) consider((c.max_x - p.x) / d.dx);
    if (d.dx < 0.0) consider((c.min_x - p.x) / d.dx);
    if (d.dz > 0.0) consider((c.max_z - p.z) / d.dz);
    if (d.dz < 0.0) consider((c.min_z - p.z) / d.dz);
    if (!std::isfinite(best)) return p;
    return {p.x + best * d.dx, p.z + best * d.dz};
}

}  // namespace detail

// Deterministic scene rendering: reflector, incident trajectories, optional
// tangent fan, and either the reflected envelope (curving) or the two edge
// rays (directional). Byte-identical output for identical inputs.
inline std::string emit_scene_svg(const Scenario& sc, const std::vector<TangentFamily>& families,
                                  const std::vector<Prediction>& preds, const SvgOptions& opt) {
    using detail::SvgCanvas;

    // Scene extent from everything that will be drawn.
    double min_x = 0.0, max_x = 0.0, min_z = 0.0, max_z = 0.0;
    bool first = true;
    auto grow = [&](Point2 p) {
        if (first) {
            min_x = max_x = p.x;
            min_z = max_z = p.z;
            first = false;
            return;
        }
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_z = std::min(min_z, p.z);
        max_z = std::max(max_z, p.z);
    };
    for (const auto& fam : families)
        for (const auto& r : fam.rays) {
            grow({r.launch_x, 0.0});
            grow(r.contact);
        }
    for (const auto& pred : preds)
        for (const auto& p : pred.points) grow(p);
    if (const auto* pl = std::get_if<PlanarSegment>(&sc.profile)) {
        if (pl->x_extent) {
            grow({pl->x_extent->first, pl->slope * pl->x_extent->first + pl->intercept});
            grow({pl->x_extent->second, pl->slope * pl->x_extent->second + pl->intercept});
        }
    } else if (const auto* ci = std::get_if<CircularArc>(&sc.profile)) {
        grow({ci->center.x - ci->radius, ci->center.z - ci->radius});
        grow({ci->center.x + ci->radius, ci->center.z + ci->radius});
    } else if (const auto* sp = std::get_if<SampledProfile>(&sc.profile)) {
        for (std::size_t i = 0; i < sp->xs.size(); ++i) grow({sp->xs[i], sp->zs[i]});
    }
    for (const auto& pred : preds)
        if (pred.directional) {
            grow(pred.directional->first_edge.hit.point);
            grow(pred.directional->last_edge.hit.point);
        }
    if (first) grow({0.0, 0.0});

    double pad = 0.08 * std::max(max_x - min_x, max_z - min_z) + 1e-3;
    SvgCanvas canvas{min_x - pad, max_x + pad, min_z - pad, max_z + pad, opt.scale_px_per_m};

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    detail::svg_num(out, canvas.width());
    out += "\" height=\"";
    detail::svg_num(out, canvas.height());
    out += "\" viewBox=\"0 0 ";
    detail::svg_num(out, canvas.width());
    out += ' ';
    detail::svg_num(out, canvas.height());
    out += "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // Reflector.
    const char* refl_style = "stroke=\"#555555\" stroke-width=\"3\"";
    if (const auto* pl = std::get_if<PlanarSegment>(&sc.profile)) {
        double xa = pl->x_extent ? pl->x_extent->first : canvas.min_x;
        double xb = pl->x_extent ? pl->x_extent->second : canvas.max_x;
        detail::svg_line(out, canvas, {xa, pl->slope * xa + pl->intercept},
                         {xb, pl->slope * xb + pl->intercept}, refl_style);
    } else if (const auto* ci = std::get_if<CircularArc>(&sc.profile)) {
        out += "<circle fill=\"none\" ";
        out += refl_style;
        out += " cx=\"";
        detail::svg_num(out, canvas.px(ci->center.x));
        out += "\" cy=\"";
        detail::svg_num(out, canvas.py(ci->center.z));
        out += "\" r=\"";
        detail::svg_num(out, ci->radius * canvas.scale);
        out += "\"/>\n";
    } else if (const auto* sp = std::get_if<SampledProfile>(&sc.profile)) {
        std::vector<Point2> pts;
        pts.reserve(sp->xs.size());
        for (std::size_t i = 0; i < sp->xs.size(); ++i) pts.push_back({sp->xs[i], sp->zs[i]});
        detail::svg_polyline(out, canvas, pts, refl_style);
    }

    // Incident trajectories over their decomposed contact span.
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const auto& fam = families[fi];
        if (fam.rays.empty() || fi >= sc.beam.size()) continue;
        const auto& traj = sc.beam[fi];
        double a = fam.rays.front().contact.x, b = fam.rays.back().contact.x;
        std::vector<Point2> pts;
        pts.reserve(129);
        for (int i = 0; i <= 128; ++i) {
            double x = a + (b - a) * i / 128.0;
            pts.push_back({x, traj.value(x)});
        }
        detail::svg_polyline(out, canvas, pts, "stroke=\"#1f77b4\" stroke-width=\"2\"");
    }

    // Tangent fan: launch point toward the contact and onward to the border.
    if (opt.tangents) {
        for (const auto& fam : families)
            for (const auto& r : fam.rays)
                detail::svg_line(out, canvas, {r.launch_x, 0.0},
                                 detail::ray_to_border(canvas, {r.launch_x, 0.0}, r.dir),
                                 "stroke=\"#aec7e8\" stroke-width=\"0.6\"");
    }

    // Reflected content per prediction.
    for (const auto& pred : preds) {
        if (pred.kind == Prediction::Kind::curving && pred.envelope) {
            std::vector<Point2> pts;
            pts.reserve(65);
            for (int i = 0; i <= 64; ++i) {
                double x =
                    pred.envelope->x_lo + (pred.envelope->x_hi - pred.envelope->x_lo) * i / 64.0;
                pts.push_back({x, eval(*pred.envelope, x)});
            }
            detail::svg_polyline(out, canvas, pts, "stroke=\"#d62728\" stroke-width=\"2\"");
            for (const auto& p : pred.points) {
                out += "<circle fill=\"#d62728\" cx=\"";
                detail::svg_num(out, canvas.px(p.x));
                out += "\" cy=\"";
                detail::svg_num(out, canvas.py(p.z));
                out += "\" r=\"1.5\"/>\n";
            }
        } else if (pred.directional) {
            const char* style = "stroke=\"#ff7f0e\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"";
            const auto& d = *pred.directional;
            detail::svg_line(out, canvas, d.first_edge.hit.point,
                             detail::ray_to_border(canvas, d.first_edge.hit.point, d.first_edge.dir),
                             style);
            detail::svg_line(out, canvas, d.last_edge.hit.point,
                             detail::ray_to_border(canvas, d.last_edge.hit.point, d.last_edge.dir),
                             style);
        }
    }

    // Legend.
    double ty = 16.0;
    for (const auto& pred : preds) {
        out += "<text x=\"8\" y=\"";
        detail::svg_num(out, ty);
        out += "\" font-family=\"sans-serif\" font-size=\"12\">";
        out += pred.label + ": " +
               (pred.kind == Prediction::Kind::curving ? "curving" : "directional");
        out += "</text>\n";
        ty += 16.0;
    }

    out += "</svg>\n";
    return out;
}

}  // namespace curvebeam
