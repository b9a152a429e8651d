#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "curvebeam/geometry.hpp"
#include "curvebeam/reflector.hpp"
#include "curvebeam/tangent_family.hpp"

namespace curvebeam {

struct ReflectedRay {
    int source_index = 0;
    SurfaceHit hit;
    Direction2 dir;         // unit
    bool vertical = false;  // |dir.dx| ~ 0, slope undefined
    double slope = 0.0;     // dz/dx when not vertical
};

struct ReflectedFamily {
    std::vector<ReflectedRay> rays;  // ordered by source index; misses dropped
    int dropped = 0;
    int source_size = 0;
    std::string source_label;
};

// A tangent becomes a physical ray at its launch-plane crossing. Tangents
// that never meet the reflector are reported as misses, not errors.
inline std::optional<ReflectedRay> reflect_tangent(const TangentRay& t,
                                                   const ReflectorProfile& profile) {
    Ray incident{{t.launch_x, 0.0}, t.dir};
    auto hit = intersect_ray(profile, incident);
    if (!hit) return std::nullopt;
    Direction2 rd = normalized(reflect_direction(t.dir, hit->normal));
    ReflectedRay out;
    out.source_index = t.index;
    out.hit = *hit;
    out.dir = rd;
    out.vertical = std::abs(rd.dx) < 1e-12;
    out.slope = out.vertical ? std::numeric_limits<double>::infinity() : rd.dz / rd.dx;
    return out;
}

inline ReflectedFamily reflect_family(const TangentFamily& fam, const ReflectorProfile& profile) {
    ReflectedFamily out;
    out.source_size = static_cast<int>(fam.rays.size());
    out.source_label = fam.source_label;
    out.rays.reserve(fam.rays.size());
    for (const auto& t : fam.rays) {
        if (auto r = reflect_tangent(t, profile))
            out.rays.push_back(*r);
        else
            ++out.dropped;
    }
    return out;
}

// Mirror image of p across the full line z = slope*x + intercept. Any
// x-extent on the segment is ignored: this is the ideal-image baseline.
inline Point2 mirror_point(Point2 p, const PlanarSegment& plane) {
    double s = plane.slope;
    double d = 1.0 + s * s;
    double zb = p.z - plane.intercept;
    return {((1.0 - s * s) * p.x + 2.0 * s * zb) / d,
            (2.0 * s * p.x - (1.0 - s * s) * zb) / d + plane.intercept};
}

inline std::vector<Point2> mirror_samples(const ConvexTrajectory& traj, const PlanarSegment& plane,
                                          int n = 128) {
    if (n < 2) throw std::invalid_argument("mirror_samples: need at least two samples");
    std::vector<Point2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x = traj.x_lo() + (traj.x_hi() - traj.x_lo()) * i / (n - 1.0);
        pts.push_back(mirror_point({x, traj.value(x)}, plane));
    }
    return pts;
}

// Pointwise mirror image of the trajectory, condensed to a quadratic. Serves
// as the reference the tangent pipeline is checked against on plane mirrors.
inline PolyCurve mirror_baseline(const ConvexTrajectory& traj, const PlanarSegment& plane) {
    return fit_polynomial(mirror_samples(traj, plane, 128), 2);
}

}  // namespace curvebeam
