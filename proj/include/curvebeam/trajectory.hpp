#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvebeam/constants.hpp"
#include "curvebeam/errors.hpp"
#include "curvebeam/polycurve.hpp"

namespace curvebeam {

struct BeamSpec {
    double frequency = 0.0;   // Hz
    double x0 = 0.0;          // transverse scale, m
    double truncation = 0.0;  // exponential apodization, dimensionless
    double aperture = 0.0;    // launch-plane half-width x_a, m
};

inline double wavenumber(double frequency) {
    if (!(frequency > 0.0))
        throw std::invalid_argument("wavenumber: frequency must be positive");
    return 2.0 * std::numbers::pi * frequency / speed_of_light;
}

// Trajectory forms. The beam propagates toward +z; x is transverse. Every
// form reads as z-vs-x on a closed x-interval.

// z = scale * sqrt(x - shift); vertical tangent at x = shift.
struct SqrtForm {
    double scale = 1.0;
    double shift = 0.0;
};

// z = p(x) on the curve's own interval.
struct PolyZofX {
    PolyCurve curve;
};

// x = q(z) on [z_lo, z_hi]; q must be strictly monotone there so the branch
// inverts cleanly.
struct PolyXofZ {
    std::vector<double> coeffs;  // ascending powers of z
    double z_lo = 0.0;
    double z_hi = 0.0;
};

class ConvexTrajectory {
  public:
    ConvexTrajectory(SqrtForm f, double x_hi, std::string label)
        : form_(f), x_lo_(f.shift), x_hi_(x_hi), label_(std::move(label)) {
        if (!(x_hi > f.shift))
            throw std::invalid_argument("trajectory: empty sqrt domain");
        if (f.scale == 0.0)
            throw std::invalid_argument("trajectory: zero sqrt scale");
    }

    ConvexTrajectory(PolyZofX f, std::string label)
        : form_(std::move(f)), label_(std::move(label)) {
        const auto& c = std::get<PolyZofX>(form_).curve;
        if (!(c.x_hi > c.x_lo))
            throw std::invalid_argument("trajectory: empty polynomial domain");
        x_lo_ = c.x_lo;
        x_hi_ = c.x_hi;
    }

    ConvexTrajectory(PolyXofZ f, std::string label)
        : form_(std::move(f)), label_(std::move(label)) {
        const auto& q = std::get<PolyXofZ>(form_);
        if (!(q.z_hi > q.z_lo))
            throw std::invalid_argument("trajectory: empty z-interval");
        PolyCurve qc{q.coeffs, q.z_lo, q.z_hi};
        PolyCurve dq = derivative(qc);
        double s0 = eval(dq, q.z_lo + (q.z_hi - q.z_lo) / 130.0);
        for (int i = 1; i <= 128; ++i) {
            double z = q.z_lo + (q.z_hi - q.z_lo) * i / 129.0;
            if (eval(dq, z) * s0 <= 0.0)
                throw std::invalid_argument("trajectory: x-of-z branch is not monotone");
        }
        double xa = eval(qc, q.z_lo), xb = eval(qc, q.z_hi);
        x_lo_ = std::min(xa, xb);
        x_hi_ = std::max(xa, xb);
    }

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    const std::string& label() const { return label_; }

    // z at x; x is clamped to the domain.
    double value(double x) const {
        x = std::clamp(x, x_lo_, x_hi_);
        if (const auto* s = std::get_if<SqrtForm>(&form_))
            return s->scale * std::sqrt(std::max(0.0, x - s->shift));
        if (const auto* p = std::get_if<PolyZofX>(&form_))
            return eval(p->curve, x);
        return branch_z_of_x(std::get<PolyXofZ>(form_), x);
    }

    // dz/dx at x; +-infinity at a vertical tangent.
    double slope(double x) const {
        x = std::clamp(x, x_lo_, x_hi_);
        if (const auto* s = std::get_if<SqrtForm>(&form_)) {
            double u = x - s->shift;
            if (u <= 0.0)
                return std::copysign(std::numeric_limits<double>::infinity(), s->scale);
            return s->scale / (2.0 * std::sqrt(u));
        }
        if (const auto* p = std::get_if<PolyZofX>(&form_))
            return eval(derivative(p->curve), x);
        const auto& q = std::get<PolyXofZ>(form_);
        double z = branch_z_of_x(q, x);
        return 1.0 / eval(derivative(PolyCurve{q.coeffs, q.z_lo, q.z_hi}), z);
    }

    // Where the curve meets the launch plane z = 0; falls back to the domain
    // endpoint nearer the plane when the curve never crosses it.
    double start_x() const {
        if (const auto* s = std::get_if<SqrtForm>(&form_)) return s->shift;
        if (const auto* q = std::get_if<PolyXofZ>(&form_)) {
            double zc = std::clamp(0.0, q->z_lo, q->z_hi);
            return eval(PolyCurve{q->coeffs, q->z_lo, q->z_hi}, zc);
        }
        const auto& c = std::get<PolyZofX>(form_).curve;
        const int n = 256;
        double xa = x_lo_, fa = eval(c, xa);
        for (int i = 1; i <= n; ++i) {
            double xb = x_lo_ + (x_hi_ - x_lo_) * i / n;
            double fb = eval(c, xb);
            if (fa == 0.0) return xa;
            if (fa * fb < 0.0) {
                double flo = fa;
                for (int it = 0; it < 200 && xb - xa > 1e-15; ++it) {
                    double xm = 0.5 * (xa + xb);
                    double fm = eval(c, xm);
                    if (flo * fm <= 0.0) {
                        xb = xm;
                    } else {
                        xa = xm;
                        flo = fm;
                    }
                }
                return 0.5 * (xa + xb);
            }
            xa = xb;
            fa = fb;
        }
        return std::abs(eval(c, x_lo_)) <= std::abs(eval(c, x_hi_)) ? x_lo_ : x_hi_;
    }

    // Same curve shifted along x; the domain shifts with it.
    ConvexTrajectory translated_x(double offset, std::string new_label) const {
        if (const auto* s = std::get_if<SqrtForm>(&form_))
            return ConvexTrajectory(SqrtForm{s->scale, s->shift + offset}, x_hi_ + offset,
                                    std::move(new_label));
        if (const auto* q = std::get_if<PolyXofZ>(&form_)) {
            PolyXofZ shifted = *q;
            shifted.coeffs[0] += offset;
            return ConvexTrajectory(std::move(shifted), std::move(new_label));
        }
        // Expand p(x - offset) back to plain powers.
        const auto& c = std::get<PolyZofX>(form_).curve;
        std::vector<double> out(c.coeffs.size(), 0.0);
        std::vector<double> base{-offset, 1.0};
        std::vector<double> pw{1.0};
        for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
            for (std::size_t i = 0; i < pw.size(); ++i) out[i] += c.coeffs[k] * pw[i];
            if (k + 1 < c.coeffs.size()) pw = detail::poly_mul(pw, base);
        }
        return ConvexTrajectory(
            PolyZofX{PolyCurve{std::move(out), c.x_lo + offset, c.x_hi + offset}},
            std::move(new_label));
    }

    // Strict slope monotonicity on 64 interior samples; false for straight
    // lines (a constant slope carries no tangent family).
    bool slope_monotone() const {
        const int n = 64;
        double prev = slope(x_lo_ + (x_hi_ - x_lo_) / (n + 1.0));
        int dir = 0;
        for (int i = 2; i <= n; ++i) {
            double cur = slope(x_lo_ + (x_hi_ - x_lo_) * i / (n + 1.0));
            double d = cur - prev;
            if (d == 0.0) return false;
            int s = d > 0.0 ? 1 : -1;
            if (dir == 0)
                dir = s;
            else if (s != dir)
                return false;
            prev = cur;
        }
        return true;
    }

  private:
    // z such that q(z) = x, by bisection; x outside the branch image maps to
    // the nearer interval end.
    static double branch_z_of_x(const PolyXofZ& q, double x) {
        PolyCurve qc{q.coeffs, q.z_lo, q.z_hi};
        double qa = eval(qc, q.z_lo), qb = eval(qc, q.z_hi);
        bool increasing = qb > qa;
        if (x <= std::min(qa, qb)) return increasing ? q.z_lo : q.z_hi;
        if (x >= std::max(qa, qb)) return increasing ? q.z_hi : q.z_lo;
        double lo = q.z_lo, hi = q.z_hi;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            double mid = 0.5 * (lo + hi);
            if ((eval(qc, mid) < x) == increasing)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    std::variant<SqrtForm, PolyZofX, PolyXofZ> form_;
    double x_lo_ = 0.0;
    double x_hi_ = 0.0;
    std::string label_;
};

// Ideal peak deflection x = z^2 / (4 k^2 x0^3) through the origin, read as
// z = sqrt(4 k^2 x0^3 x). Domain extends well past any practical aperture.
inline ConvexTrajectory airy_peak_trajectory(const BeamSpec& spec, std::string label = "peak") {
    if (!(spec.x0 > 0.0))
        throw std::invalid_argument("airy_peak_trajectory: x0 must be positive");
    double k = wavenumber(spec.frequency);
    double c = 4.0 * k * k * spec.x0 * spec.x0 * spec.x0;
    return ConvexTrajectory(SqrtForm{std::sqrt(c), 0.0}, 0.5, std::move(label));
}

// Peak locus of the n-th intensity lobe (1-based): the ideal deflection
// shifted so it starts at the lobe's launch-plane position s_n * x0, with
// s_n the n-th zero of Ai'.
inline ConvexTrajectory airy_lobe_peak_trajectory(const BeamSpec& spec, int lobe) {
    if (lobe < 1 || lobe > 3)
        throw std::invalid_argument("airy_lobe_peak_trajectory: lobe must be 1..3");
    double shift = airy_dai_zeros[lobe - 1] * spec.x0;
    return airy_peak_trajectory(spec).translated_x(shift,
                                                   "lobe" + std::to_string(lobe) + "-peak");
}

// Edge trajectories of a lobe: the peak locus translated one beamwidth to
// either side.
inline std::pair<ConvexTrajectory, ConvexTrajectory> lobe_edges(const ConvexTrajectory& peak,
                                                                double half_width) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("lobe_edges: half width must be positive");
    return {peak.translated_x(-half_width, peak.label() + "-left"),
            peak.translated_x(half_width, peak.label() + "-right")};
}

}  // namespace curvebeam
