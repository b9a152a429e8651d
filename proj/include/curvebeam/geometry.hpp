#pragma once

#include <cmath>
#include <stdexcept>

namespace curvebeam {

// x is the transverse axis, z the propagation axis. All lengths in meters.
struct Point2 {
    double x = 0.0;
    double z = 0.0;
};

struct Direction2 {
    double dx = 0.0;
    double dz = 0.0;
};

inline double dot(Direction2 a, Direction2 b) {
    return a.dx * b.dx + a.dz * b.dz;
}

inline double norm(Direction2 d) {
    return std::hypot(d.dx, d.dz);
}

inline Direction2 normalized(Direction2 d) {
    double n = norm(d);
    if (n == 0.0)
        throw std::invalid_argument("normalized: zero-length direction");
    return {d.dx / n, d.dz / n};
}

inline bool is_unit(Direction2 d, double tol = 1e-12) {
    return std::abs(d.dx * d.dx + d.dz * d.dz - 1.0) <= tol;
}

struct Ray {
    Point2 origin;
    Direction2 dir;  // need not be unit length
};

inline Point2 point_at(const Ray& r, double t) {
    return {r.origin.x + t * r.dir.dx, r.origin.z + t * r.dir.dz};
}

// Specular reflection d - 2(d.n)n. Magnitude-preserving and insensitive to
// the sign of n; n must be unit length.
inline Direction2 reflect_direction(Direction2 d, Direction2 n) {
    if (!is_unit(n))
        throw std::invalid_argument("reflect_direction: normal must be unit length");
    double dn = dot(d, n);
    return {d.dx - 2.0 * dn * n.dx, d.dz - 2.0 * dn * n.dz};
}

}  // namespace curvebeam
