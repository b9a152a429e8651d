#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "curvebeam/errors.hpp"
#include "curvebeam/geometry.hpp"
#include "curvebeam/polycurve.hpp"
#include "curvebeam/trajectory.hpp"

namespace curvebeam {

struct TangentRay {
    int index = 0;
    double slope_m = 0.0;        // dz/dx of the tangent line
    double intercept_psi = 0.0;  // z at x = 0
    Point2 contact;              // tangency point on the trajectory
    Direction2 dir;              // unit, oriented so dz >= 0
    double launch_x = 0.0;       // launch-plane crossing, z = 0
};

struct TangentFamily {
    std::vector<TangentRay> rays;  // ordered from the trajectory start outward
    int requested = 0;
    std::string source_label;
    double aperture = 0.0;
    bool domain_exhausted = false;  // tangency limit clipped by the domain end
};

enum class Spacing { equal_contact, equal_slope };

struct TangencyLimit {
    double x_max = 0.0;
    bool domain_exhausted = false;
};

namespace detail {

// Contact abscissa nudged off a vertical tangent, toward the family interior.
inline double nudged_contact(const ConvexTrajectory& traj, double t, double start, double x_max) {
    double m = traj.slope(t);
    if (std::isfinite(m) && std::abs(m) <= 1e9) return t;
    return t + (x_max - start) * 1e-7;
}

// Launch-plane crossing of the tangent at contact t. A horizontal tangent
// launches at its own contact when the contact already sits on the plane.
inline double launch_of_contact(const ConvexTrajectory& traj, double t) {
    double m = traj.slope(t);
    double z = traj.value(t);
    double launch = t - z / m;
    if (std::isfinite(launch)) return launch;
    if (std::abs(z) <= 1e-12) return t;
    throw numeric_error("tangent family: horizontal tangent never meets the launch plane");
}

}  // namespace detail

// Farthest contact whose tangent still launches inside [-x_a, 0]. The search
// runs from the trajectory's launch-plane start toward the far domain end;
// launch_x decreases monotonically along that direction for a convex curve.
inline TangencyLimit tangency_limit(const ConvexTrajectory& traj, double aperture) {
    if (!(aperture > 0.0))
        throw std::invalid_argument("tangency_limit: aperture must be positive");
    double start = traj.start_x();
    double far_end =
        (start - traj.x_lo() >= traj.x_hi() - start) ? traj.x_lo() : traj.x_hi();
    if (far_end == start)
        throw std::invalid_argument("tangency_limit: trajectory start coincides with the domain end");

    auto margin = [&](double t) {
        double tn = detail::nudged_contact(traj, t, start, far_end);
        return detail::launch_of_contact(traj, tn) + aperture;
    };
    double f_start = margin(start);
    if (!(f_start > 0.0))
        throw numeric_error("tangency_limit: aperture excludes the trajectory start");
    if (margin(far_end) > 0.0) return {far_end, true};

    double a = start, b = far_end;  // margin(a) > 0 >= margin(b)
    for (int it = 0; it < 200 && std::abs(b - a) > 1e-15; ++it) {
        double mid = 0.5 * (a + b);
        if (margin(mid) > 0.0)
            a = mid;
        else
            b = mid;
    }
    return {0.5 * (a + b), false};
}

// Aperture-bounded tangent family: j tangents with contacts spread from the
// trajectory start to the tangency limit. Vertical tangents are nudged one
// part in 1e7 of the contact span toward the interior.
inline TangentFamily decompose(const ConvexTrajectory& traj, double aperture, int j,
                               Spacing spacing = Spacing::equal_contact) {
    if (j < 2) throw std::invalid_argument("decompose: need at least two tangents");
    if (!traj.slope_monotone())
        throw std::invalid_argument("decompose: trajectory slope is not strictly monotone");

    TangencyLimit lim = tangency_limit(traj, aperture);
    double start = traj.start_x();

    std::vector<double> contacts(j);
    if (spacing == Spacing::equal_contact) {
        for (int i = 0; i < j; ++i)
            contacts[i] = start + (lim.x_max - start) * i / (j - 1.0);
    } else {
        // Equal slope steps, inverted to contacts by bisection; the slope is
        // strictly monotone between the (nudged) start and the limit.
        double t0 = detail::nudged_contact(traj, start, start, lim.x_max);
        double m0 = traj.slope(t0), m1 = traj.slope(lim.x_max);
        for (int i = 0; i < j; ++i) {
            double target = m0 + (m1 - m0) * i / (j - 1.0);
            double a = t0, b = lim.x_max;
            bool rising = m1 > m0;
            for (int it = 0; it < 200 && std::abs(b - a) > 1e-15; ++it) {
                double mid = 0.5 * (a + b);
                if ((traj.slope(mid) < target) == rising)
                    a = mid;
                else
                    b = mid;
            }
            contacts[i] = 0.5 * (a + b);
        }
        contacts.front() = start;
        contacts.back() = lim.x_max;
    }

    TangentFamily fam;
    fam.requested = j;
    fam.source_label = traj.label();
    fam.aperture = aperture;
    fam.domain_exhausted = lim.domain_exhausted;
    fam.rays.reserve(j);
    for (int i = 0; i < j; ++i) {
        double t = detail::nudged_contact(traj, contacts[i], start, lim.x_max);
        double m = traj.slope(t);
        double z = traj.value(t);
        TangentRay ray;
        ray.index = i;
        ray.slope_m = m;
        ray.intercept_psi = z - m * t;
        ray.contact = {t, z};
        Direction2 d = normalized({1.0, m});
        if (d.dz < 0.0) d = {-d.dx, -d.dz};
        ray.dir = d;
        ray.launch_x = detail::launch_of_contact(traj, t);
        fam.rays.push_back(ray);
    }
    return fam;
}

struct FamilyEnvelope {
    std::vector<Point2> points;  // consecutive-tangent intersections
    std::optional<PolyCurve> fit;
    bool no_envelope = false;  // some consecutive pair was parallel
};

// Envelope reconstruction from the incident family itself: consecutive
// tangent-line intersections, then a polynomial fit. The intersections land
// on the trajectory as j grows, which is what the involution tests probe.
inline FamilyEnvelope envelope_of_family(const TangentFamily& fam, int fit_degree = 2) {
    if (fam.rays.size() < 3)
        throw std::invalid_argument("envelope_of_family: need at least three tangents");
    FamilyEnvelope env;
    env.points.reserve(fam.rays.size() - 1);
    for (std::size_t i = 0; i + 1 < fam.rays.size(); ++i) {
        const auto& a = fam.rays[i];
        const auto& b = fam.rays[i + 1];
        double dm = a.slope_m - b.slope_m;
        if (std::abs(dm) < 1e-12) {
            env.no_envelope = true;
            continue;
        }
        double x = (b.intercept_psi - a.intercept_psi) / dm;
        env.points.push_back({x, a.slope_m * x + a.intercept_psi});
    }
    if (static_cast<int>(env.points.size()) >= fit_degree + 1) {
        try {
            env.fit = fit_polynomial(env.points, fit_degree);
        } catch (const numeric_error&) {
            env.fit.reset();
        }
    }
    return env;
}

// Legendre transform value F*(m) = m*x(m) - F(x(m)) with x(m) found by
// inverting the slope on the trajectory domain.
inline double legendre_value(const ConvexTrajectory& traj, double m) {
    if (!traj.slope_monotone())
        throw std::invalid_argument("legendre_value: trajectory slope is not strictly monotone");
    double span = traj.x_hi() - traj.x_lo();
    double ma = traj.slope(traj.x_lo() + span * 1e-12);
    double mb = traj.slope(traj.x_hi());
    double lo_m = std::min(ma, mb), hi_m = std::max(ma, mb);
    if (m < lo_m - 1e-12 || m > hi_m + 1e-12)
        throw std::invalid_argument("legendre_value: slope outside the family range");
    bool rising = mb > ma;
    double a = traj.x_lo(), b = traj.x_hi();
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        double mid = 0.5 * (a + b);
        if ((traj.slope(mid) < m) == rising)
            a = mid;
        else
            b = mid;
    }
    double x = 0.5 * (a + b);
    return m * x - traj.value(x);
}

}  // namespace curvebeam
