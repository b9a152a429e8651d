#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "curvebeam/polycurve.hpp"
#include "curvebeam/reflection.hpp"
#include "curvebeam/reflector.hpp"
#include "curvebeam/tangent_family.hpp"
#include "curvebeam/trajectory.hpp"

namespace curvebeam {

struct ClassificationThresholds {
    int min_points = 3;                 // forward envelope points
    double min_r2 = 0.98;               // quadratic fit quality
    double min_quadratic_coeff = 0.05;  // |a2| below this reads as straight, 1/m
    bool require_monotone = true;       // forward points must sweep x one way
    bool require_edge_capture = true;   // first or last tangent must reach the reflector
};

struct EnvelopeSample {
    Point2 p;
    bool forward = false;  // intersection lies ahead of both reflected rays
};

// Pairwise intersections of consecutive surviving reflected rays. Parallel
// pairs are skipped.
inline std::vector<EnvelopeSample> reflected_envelope_samples(const ReflectedFamily& rf) {
    std::vector<EnvelopeSample> out;
    if (rf.rays.size() < 2) return out;
    out.reserve(rf.rays.size() - 1);
    for (std::size_t i = 0; i + 1 < rf.rays.size(); ++i) {
        const auto& a = rf.rays[i];
        const auto& b = rf.rays[i + 1];
        // [a.dir, -b.dir] [t1 t2]^T = b.origin - a.origin
        double det = b.dir.dx * a.dir.dz - a.dir.dx * b.dir.dz;
        if (std::abs(det) < 1e-14) continue;
        double rx = b.hit.point.x - a.hit.point.x;
        double rz = b.hit.point.z - a.hit.point.z;
        double t1 = (b.dir.dx * rz - b.dir.dz * rx) / det;
        double t2 = (a.dir.dx * rz - a.dir.dz * rx) / det;
        EnvelopeSample s;
        s.p = {a.hit.point.x + t1 * a.dir.dx, a.hit.point.z + t1 * a.dir.dz};
        s.forward = t1 > 0.0 && t2 > 0.0;
        out.push_back(s);
    }
    return out;
}

struct DirectionalInfo {
    ReflectedRay first_edge;
    ReflectedRay last_edge;
    Direction2 mean_dir;  // unit
};

struct PredictionDiagnostics {
    int survivors = 0;
    int dropped = 0;
    int forward_points = 0;
    double r2 = 0.0;
    double quadratic_coeff = 0.0;  // of the classification fit
    double scatter_rms = 0.0;      // fit residual RMS, m
    bool head_captured = false;    // first family tangent reached the reflector
    bool tail_captured = false;
};

struct Prediction {
    enum class Kind { curving, directional };
    Kind kind = Kind::directional;
    std::string label;
    std::string reason;
    std::optional<PolyCurve> envelope;  // curving only
    std::vector<Point2> points;         // forward envelope points
    std::optional<DirectionalInfo> directional;
    PredictionDiagnostics diag;
    std::optional<std::string> error;  // pipeline failure for this trajectory
};

namespace detail {

inline std::optional<DirectionalInfo> directional_info(const ReflectedFamily& rf) {
    if (rf.rays.size() < 2) return std::nullopt;
    DirectionalInfo info{rf.rays.front(), rf.rays.back(), {}};
    Direction2 sum{0.0, 0.0};
    for (const auto& r : rf.rays) {
        sum.dx += r.dir.dx;
        sum.dz += r.dir.dz;
    }
    if (norm(sum) < 1e-12) return std::nullopt;  // degenerate spread
    info.mean_dir = normalized(sum);
    return info;
}

}  // namespace detail

// Classification plus reconstruction in one pass. The rules fire in a fixed
// order so the reported reason is deterministic:
//   1. too few forward envelope points
//   2. reflector catches only an interior slice of the fan (both edge
//      tangents miss), so the envelope edges are artifacts of the clipping
//   3. quadratic fit is poor (scattered intersections, no coherent caustic)
//   4. envelope is too straight to count as curving
//   5. forward points do not sweep x monotonically
inline Prediction analyze_reflection(const ReflectedFamily& rf,
                                     const ClassificationThresholds& th = {},
                                     int fit_degree = 2) {
    if (fit_degree < 1) throw std::invalid_argument("analyze_reflection: fit degree must be >= 1");
    Prediction pred;
    pred.label = rf.source_label;
    pred.diag.survivors = static_cast<int>(rf.rays.size());
    pred.diag.dropped = rf.dropped;
    if (!rf.rays.empty()) {
        pred.diag.head_captured = rf.rays.front().source_index == 0;
        pred.diag.tail_captured = rf.rays.back().source_index == rf.source_size - 1;
    }

    auto samples = reflected_envelope_samples(rf);
    std::vector<Point2> fwd;
    for (const auto& s : samples)
        if (s.forward) fwd.push_back(s.p);
    pred.diag.forward_points = static_cast<int>(fwd.size());
    pred.points = fwd;
    pred.directional = detail::directional_info(rf);

    auto directional = [&](std::string reason) {
        pred.kind = Prediction::Kind::directional;
        pred.reason = std::move(reason);
        return pred;
    };

    if (static_cast<int>(fwd.size()) < th.min_points)
        return directional("fewer than " + std::to_string(th.min_points) +
                           " forward envelope points");
    if (th.require_edge_capture && !pred.diag.head_captured && !pred.diag.tail_captured)
        return directional("reflector captures only an interior slice of the tangent fan");

    PolyCurve quad;
    try {
        quad = fit_polynomial(fwd, 2);
    } catch (const numeric_error&) {
        return directional("degenerate envelope fit");
    }
    pred.diag.r2 = r_squared(quad, fwd);
    pred.diag.quadratic_coeff = quad.coeffs.size() > 2 ? quad.coeffs[2] : 0.0;
    pred.diag.scatter_rms = residual_rms(quad, fwd);

    if (pred.diag.r2 < th.min_r2) return directional("envelope fit below quality threshold");
    if (std::abs(pred.diag.quadratic_coeff) < th.min_quadratic_coeff)
        return directional("envelope too straight");
    if (th.require_monotone) {
        int dir = 0;
        for (std::size_t i = 0; i + 1 < fwd.size(); ++i) {
            double d = fwd[i + 1].x - fwd[i].x;
            if (d == 0.0) return directional("forward points do not sweep x monotonically");
            int s = d > 0.0 ? 1 : -1;
            if (dir == 0)
                dir = s;
            else if (s != dir)
                return directional("forward points do not sweep x monotonically");
        }
    }

    pred.kind = Prediction::Kind::curving;
    pred.reason = "coherent curving envelope";
    if (fit_degree == 2) {
        pred.envelope = quad;
    } else {
        try {
            pred.envelope = fit_polynomial(fwd, fit_degree);
        } catch (const numeric_error&) {
            return directional("degenerate envelope fit");
        }
    }
    return pred;
}

inline Prediction::Kind classify(const ReflectedFamily& rf,
                                 const ClassificationThresholds& th = {}) {
    return analyze_reflection(rf, th).kind;
}

// Envelope fit without classification; throws when the points are degenerate.
inline PolyCurve reconstruct(const ReflectedFamily& rf, int fit_degree = 2) {
    auto samples = reflected_envelope_samples(rf);
    std::vector<Point2> fwd;
    for (const auto& s : samples)
        if (s.forward) fwd.push_back(s.p);
    return fit_polynomial(fwd, fit_degree);
}

// Beam width at a given distance along the mean direction: the two edge rays
// are cut by the wavefront plane at that distance and their separation is
// measured across the mean direction.
inline double width_at_distance(const DirectionalInfo& info, double distance) {
    if (!(distance >= 0.0)) throw std::invalid_argument("width_at_distance: negative distance");
    Direction2 u = info.mean_dir;
    Direction2 perp{-u.dz, u.dx};
    Point2 base{0.5 * (info.first_edge.hit.point.x + info.last_edge.hit.point.x),
                0.5 * (info.first_edge.hit.point.z + info.last_edge.hit.point.z)};
    auto cross_at = [&](const ReflectedRay& r) {
        double along = dot(r.dir, u);
        if (std::abs(along) < 1e-12)
            throw numeric_error("width_at_distance: edge ray runs across the mean direction");
        double from_base = (r.hit.point.x - base.x) * u.dx + (r.hit.point.z - base.z) * u.dz;
        double t = (distance - from_base) / along;
        return Point2{r.hit.point.x + t * r.dir.dx, r.hit.point.z + t * r.dir.dz};
    };
    Point2 a = cross_at(info.first_edge);
    Point2 b = cross_at(info.last_edge);
    return std::abs((b.x - a.x) * perp.dx + (b.z - a.z) * perp.dz);
}

// Opening angle between the two edge rays, radians.
inline double edge_ray_angle(const DirectionalInfo& info) {
    double c = dot(info.first_edge.dir, info.last_edge.dir);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

struct Scenario {
    std::vector<ConvexTrajectory> beam;
    double aperture = 0.0;
    ReflectorProfile profile;
    int tangent_count = 100;
    int fit_degree = 2;
    Spacing spacing = Spacing::equal_contact;
    ClassificationThresholds thresholds;
};

// Full pipeline per trajectory; one trajectory's failure surfaces in its own
// entry and never blocks the others.
inline std::vector<Prediction> predict(const Scenario& s) {
    std::vector<Prediction> out;
    out.reserve(s.beam.size());
    for (const auto& traj : s.beam) {
        try {
            auto fam = decompose(traj, s.aperture, s.tangent_count, s.spacing);
            auto rf = reflect_family(fam, s.profile);
            auto pred = analyze_reflection(rf, s.thresholds, s.fit_degree);
            pred.label = traj.label();
            out.push_back(std::move(pred));
        } catch (const std::exception& e) {
            Prediction p;
            p.label = traj.label();
            p.kind = Prediction::Kind::directional;
            p.reason = "pipeline error";
            p.error = e.what();
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace curvebeam
