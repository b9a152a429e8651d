#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "curvebeam/geometry.hpp"
#include "curvebeam/polycurve.hpp"
#include "curvebeam/trajectory.hpp"

namespace curvebeam {

struct ComparisonDomain {
    double x_lo = 0.0;
    double x_hi = 0.0;
    int samples = 256;
};

namespace detail {

inline void check_domain(const ComparisonDomain& d) {
    if (!(d.x_hi > d.x_lo)) throw std::invalid_argument("comparison domain is empty");
    if (d.samples < 2) throw std::invalid_argument("comparison needs at least two samples");
}

}  // namespace detail

// Root-mean-square gap between two curves, sampled uniformly in x.
inline double rmse(const PolyCurve& a, const PolyCurve& b, const ComparisonDomain& d) {
    detail::check_domain(d);
    double ss = 0.0;
    for (int i = 0; i < d.samples; ++i) {
        double x = d.x_lo + (d.x_hi - d.x_lo) * i / (d.samples - 1.0);
        double e = eval(a, x) - eval(b, x);
        ss += e * e;
    }
    return std::sqrt(ss / d.samples);
}

inline double max_abs_dev(const PolyCurve& a, const PolyCurve& b, const ComparisonDomain& d) {
    detail::check_domain(d);
    double worst = 0.0;
    for (int i = 0; i < d.samples; ++i) {
        double x = d.x_lo + (d.x_hi - d.x_lo) * i / (d.samples - 1.0);
        worst = std::max(worst, std::abs(eval(a, x) - eval(b, x)));
    }
    return worst;
}

// Closest-approach distance from p to the curve: dense scan for a bracket,
// golden-section refinement inside it. Robust against the steep start of
// sqrt-form curves where uniform-x sampling underresolves z.
inline double distance_to_trajectory(const ConvexTrajectory& traj, Point2 p) {
    const int n = 8192;
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    auto d2 = [&](double x) {
        double dx = x - p.x;
        double dz = traj.value(x) - p.z;
        return dx * dx + dz * dz;
    };
    for (int i = 0; i <= n; ++i) {
        double x = traj.x_lo() + (traj.x_hi() - traj.x_lo()) * i / n;
        double v = d2(x);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    double step = (traj.x_hi() - traj.x_lo()) / n;
    double a = traj.x_lo() + step * std::max(0, best_i - 1);
    double b = traj.x_lo() + step * std::min(n, best_i + 1);
    const double inv_phi = 0.6180339887498949;
    double c1 = b - (b - a) * inv_phi;
    double c2 = a + (b - a) * inv_phi;
    double f1 = d2(c1), f2 = d2(c2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - (b - a) * inv_phi;
            f1 = d2(c1);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + (b - a) * inv_phi;
            f2 = d2(c2);
        }
    }
    return std::sqrt(std::min({best, f1, f2}));
}

// RMS of perpendicular distances from the points to the curve.
inline double trajectory_rmse(const std::vector<Point2>& pts, const ConvexTrajectory& traj) {
    if (pts.empty()) throw std::invalid_argument("trajectory_rmse: no points");
    double ss = 0.0;
    for (const auto& p : pts) {
        double d = distance_to_trajectory(traj, p);
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(pts.size()));
}

}  // namespace curvebeam
