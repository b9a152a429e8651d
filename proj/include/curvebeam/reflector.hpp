#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvebeam/errors.hpp"
#include "curvebeam/geometry.hpp"

namespace curvebeam {

// z = slope * x + intercept, optionally clipped to a closed x-extent.
struct PlanarSegment {
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<std::pair<double, double>> x_extent;
};

// Full circle; the reflecting side is whichever the ray meets first.
struct CircularArc {
    Point2 center;
    double radius = 0.0;
};

// Piecewise-linear profile over strictly increasing sample abscissae.
struct SampledProfile {
    std::vector<double> xs;
    std::vector<double> zs;
};

using ReflectorProfile = std::variant<PlanarSegment, CircularArc, SampledProfile>;

struct SurfaceHit {
    Point2 point;
    Direction2 normal;      // unit, oriented against the incident direction
    double ray_parameter;   // in units of |ray.dir|, > 0
};

namespace detail {

// Hits closer than this along the ray are treated as the origin itself, so
// a ray starting on the surface does not immediately re-hit it.
inline constexpr double min_ray_parameter = 1e-9;

inline Direction2 oriented_normal(Direction2 n, Direction2 incident) {
    n = normalized(n);
    if (dot(n, incident) > 0.0) return {-n.dx, -n.dz};
    return n;
}

inline void validate_profile(const SampledProfile& p) {
    if (p.xs.size() != p.zs.size() || p.xs.size() < 2)
        throw std::invalid_argument("sampled profile: need matching xs/zs with at least 2 samples");
    for (std::size_t i = 0; i + 1 < p.xs.size(); ++i)
        if (!(p.xs[i + 1] > p.xs[i]))
            throw std::invalid_argument("sampled profile: xs must be strictly increasing");
}

inline double interp_z(const SampledProfile& p, double x) {
    auto it = std::upper_bound(p.xs.begin(), p.xs.end(), x);
    std::size_t k = it == p.xs.begin() ? 0 : static_cast<std::size_t>(it - p.xs.begin()) - 1;
    if (k + 1 >= p.xs.size()) k = p.xs.size() - 2;
    double f = (x - p.xs[k]) / (p.xs[k + 1] - p.xs[k]);
    return p.zs[k] + f * (p.zs[k + 1] - p.zs[k]);
}

inline double segment_slope(const SampledProfile& p, double x) {
    auto it = std::upper_bound(p.xs.begin(), p.xs.end(), x);
    std::size_t k = it == p.xs.begin() ? 0 : static_cast<std::size_t>(it - p.xs.begin()) - 1;
    if (k + 1 >= p.xs.size()) k = p.xs.size() - 2;
    return (p.zs[k + 1] - p.zs[k]) / (p.xs[k + 1] - p.xs[k]);
}

inline std::optional<SurfaceHit> intersect_planar(const PlanarSegment& s, const Ray& r) {
    double den = r.dir.dz - s.slope * r.dir.dx;
    if (std::abs(den) < 1e-15) return std::nullopt;  // ray parallel to the plane
    double t = (s.slope * r.origin.x + s.intercept - r.origin.z) / den;
    if (t <= min_ray_parameter) return std::nullopt;
    Point2 p = point_at(r, t);
    if (s.x_extent) {
        double slack = 1e-12 * (1.0 + std::abs(s.x_extent->second - s.x_extent->first));
        if (p.x < s.x_extent->first - slack || p.x > s.x_extent->second + slack)
            return std::nullopt;
    }
    return SurfaceHit{p, oriented_normal({-s.slope, 1.0}, r.dir), t};
}

inline std::optional<SurfaceHit> intersect_circular(const CircularArc& c, const Ray& r) {
    if (!(c.radius > 0.0)) throw std::invalid_argument("circular arc: radius must be positive");
    Direction2 oc{r.origin.x - c.center.x, r.origin.z - c.center.z};
    double a = dot(r.dir, r.dir);
    double b = 2.0 * dot(oc, r.dir);
    double q = dot(oc, oc) - c.radius * c.radius;
    double disc = b * b - 4.0 * a * q;
    if (disc < 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    // Smaller root first; keep the first one past the origin guard.
    double t = (-b - sq) / (2.0 * a);
    if (t <= min_ray_parameter) t = (-b + sq) / (2.0 * a);
    if (t <= min_ray_parameter) return std::nullopt;
    Point2 p = point_at(r, t);
    Direction2 radial{(p.x - c.center.x) / c.radius, (p.z - c.center.z) / c.radius};
    return SurfaceHit{p, oriented_normal(radial, r.dir), t};
}

inline std::optional<SurfaceHit> intersect_sampled(const SampledProfile& s, const Ray& r) {
    validate_profile(s);
    double xa = s.xs.front(), xb = s.xs.back();

    if (std::abs(r.dir.dx) < 1e-15) {
        // Vertical ray: one column lookup.
        double x = r.origin.x;
        if (x < xa || x > xb) return std::nullopt;
        double t = (interp_z(s, x) - r.origin.z) / r.dir.dz;
        if (t <= min_ray_parameter) return std::nullopt;
        return SurfaceHit{point_at(r, t), oriented_normal({-segment_slope(s, x), 1.0}, r.dir), t};
    }

    // Parameter window where the ray's x stays inside the profile extent.
    double t0 = (xa - r.origin.x) / r.dir.dx;
    double t1 = (xb - r.origin.x) / r.dir.dx;
    double lo = std::max(std::min(t0, t1), min_ray_parameter);
    double hi = std::max(t0, t1);
    if (!(hi > lo)) return std::nullopt;

    auto gap = [&](double t) {
        Point2 p = point_at(r, t);
        return p.z - interp_z(s, p.x);
    };

    // 256 brackets, then bisection on the first sign change.
    const int n = 256;
    double ta = lo, ga = gap(ta);
    for (int i = 1; i <= n; ++i) {
        double tb = lo + (hi - lo) * i / n;
        double gb = gap(tb);
        if (ga == 0.0 || ga * gb < 0.0) {
            double fa = ga;
            double a2 = ta, b2 = tb;
            for (int it = 0; it < 200 && (b2 - a2) * norm(r.dir) > 1e-9; ++it) {
                double mid = 0.5 * (a2 + b2);
                double gm = gap(mid);
                if (fa * gm <= 0.0) {
                    b2 = mid;
                } else {
                    a2 = mid;
                    fa = gm;
                }
            }
            double t = 0.5 * (a2 + b2);
            Point2 p = point_at(r, t);
            return SurfaceHit{p, oriented_normal({-segment_slope(s, p.x), 1.0}, r.dir), t};
        }
        ta = tb;
        ga = gb;
    }
    return std::nullopt;
}

}  // namespace detail

// First surface hit along the ray, or nothing. Hit points landing exactly on
// an extent edge count as hits.
inline std::optional<SurfaceHit> intersect_ray(const ReflectorProfile& profile, const Ray& r) {
    if (norm(r.dir) == 0.0) throw std::invalid_argument("intersect_ray: zero ray direction");
    if (const auto* s = std::get_if<PlanarSegment>(&profile)) return detail::intersect_planar(*s, r);
    if (const auto* c = std::get_if<CircularArc>(&profile)) return detail::intersect_circular(*c, r);
    return detail::intersect_sampled(std::get<SampledProfile>(profile), r);
}

// Unit normal at abscissa x, oriented against the given incident direction.
inline Direction2 surface_normal(const ReflectorProfile& profile, double x, Direction2 incident) {
    if (const auto* s = std::get_if<PlanarSegment>(&profile)) {
        if (s->x_extent && (x < s->x_extent->first || x > s->x_extent->second))
            throw std::invalid_argument("surface_normal: x outside the segment extent");
        return detail::oriented_normal({-s->slope, 1.0}, incident);
    }
    if (const auto* c = std::get_if<CircularArc>(&profile)) {
        double dx = x - c->center.x;
        if (std::abs(dx) > c->radius)
            throw std::invalid_argument("surface_normal: x outside the circle");
        // Lower branch: the side facing the launch plane.
        double z = c->center.z - std::sqrt(c->radius * c->radius - dx * dx);
        return detail::oriented_normal({dx / c->radius, (z - c->center.z) / c->radius}, incident);
    }
    const auto& s = std::get<SampledProfile>(profile);
    detail::validate_profile(s);
    if (x < s.xs.front() || x > s.xs.back())
        throw std::invalid_argument("surface_normal: x outside the sampled extent");
    return detail::oriented_normal({-detail::segment_slope(s, x), 1.0}, incident);
}

// Two-column CSV (header "x_m,z_m") -> sampled profile.
inline SampledProfile load_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open profile CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x_m,z_m")
        throw io_error(path + ": expected header \"x_m,z_m\", got \"" + line + "\"");
    SampledProfile p;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string ax, az;
        if (!std::getline(ss, ax, ',') || !std::getline(ss, az))
            throw io_error(path + ": line " + std::to_string(lineno) + ": expected two columns");
        std::size_t used = 0;
        double x = 0.0, z = 0.0;
        try {
            x = std::stod(ax, &used);
            if (used != ax.size()) throw std::invalid_argument("");
            z = std::stod(az, &used);
            if (used != az.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw io_error(path + ": line " + std::to_string(lineno) + ": non-numeric value");
        }
        p.xs.push_back(x);
        p.zs.push_back(z);
    }
    detail::validate_profile(p);
    return p;
}

}  // namespace curvebeam
