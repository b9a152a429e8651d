#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "curvebeam/errors.hpp"
#include "curvebeam/tangent_family.hpp"
#include "curvebeam/trajectory.hpp"

namespace curvebeam {

// Launch-plane phase profile that steers each aperture point along its
// tangent: dphi/dx = -k sin(theta(x)), anchored at phi(0) = 0.
struct PhaseProfile {
    std::vector<double> xs;         // ascending, spanning [-aperture, 0]
    std::vector<double> phase;      // radians
    std::vector<double> sin_theta;  // local launch direction, x-component
};

inline PhaseProfile design_phase_profile(const ConvexTrajectory& traj, double aperture,
                                         double frequency, int samples = 129) {
    if (samples < 2) throw std::invalid_argument("design_phase_profile: need at least 2 samples");
    if (!(aperture > 0.0))
        throw std::invalid_argument("design_phase_profile: aperture must be positive");
    double k = wavenumber(frequency);

    PhaseProfile out;
    out.xs.resize(samples);
    out.phase.resize(samples);
    out.sin_theta.resize(samples);
    for (int i = 0; i < samples; ++i) out.xs[i] = -aperture + aperture * i / (samples - 1.0);

    if (!traj.slope_monotone()) {
        // Constant slope: a plane wave with a single launch angle.
        double m = traj.slope(0.5 * (traj.x_lo() + traj.x_hi()));
        for (int i = 0; i <= 8; ++i) {
            double x = traj.x_lo() + (traj.x_hi() - traj.x_lo()) * i / 8.0;
            if (std::abs(traj.slope(x) - m) > 1e-12 * (1.0 + std::abs(m)))
                throw std::invalid_argument(
                    "design_phase_profile: slope is neither monotone nor constant");
        }
        double st = m / std::sqrt(1.0 + m * m);
        for (int i = 0; i < samples; ++i) {
            out.sin_theta[i] = st;
            out.phase[i] = -k * st * out.xs[i];
        }
        return out;
    }

    // Launch angle per aperture point from a dense tangent family; launch_x
    // is monotone along the family, so the lookup inverts by interpolation.
    TangencyLimit lim = tangency_limit(traj, aperture);
    if (lim.domain_exhausted && std::abs(decompose(traj, aperture, 2).rays.back().launch_x) <
                                    aperture * (1.0 - 1e-6))
        throw numeric_error("design_phase_profile: aperture reaches outside the tangency range");
    TangentFamily fam = decompose(traj, aperture, 512);
    std::vector<double> lx, st;
    lx.reserve(fam.rays.size());
    st.reserve(fam.rays.size());
    for (const auto& r : fam.rays) {
        lx.push_back(r.launch_x);
        st.push_back(r.dir.dx);
    }
    // launch_x runs from ~0 down to -aperture; flip ascending for the lookup.
    if (lx.front() > lx.back()) {
        std::reverse(lx.begin(), lx.end());
        std::reverse(st.begin(), st.end());
    }
    auto sin_at = [&](double x) {
        if (x <= lx.front()) return st.front();
        if (x >= lx.back()) return st.back();
        auto it = std::upper_bound(lx.begin(), lx.end(), x);
        std::size_t k2 = static_cast<std::size_t>(it - lx.begin()) - 1;
        double f = (x - lx[k2]) / (lx[k2 + 1] - lx[k2]);
        return st[k2] + f * (st[k2 + 1] - st[k2]);
    };

    // Trapezoidal phi(x) = -k int sin(theta) dx, anchored at x = 0 and
    // integrated leftward across the aperture.
    for (int i = 0; i < samples; ++i) out.sin_theta[i] = sin_at(out.xs[i]);
    int anchor = samples - 1;  // xs[anchor] = 0
    out.phase[anchor] = 0.0;
    for (int i = anchor - 1; i >= 0; --i) {
        double dx = out.xs[i + 1] - out.xs[i];
        out.phase[i] =
            out.phase[i + 1] - (-k) * 0.5 * (out.sin_theta[i] + out.sin_theta[i + 1]) * dx;
    }
    return out;
}

// Dielectric thickness that imprints the requested phase at the design
// wavelength: h = phi * lambda / (2 pi (n - 1)).
inline std::vector<double> phase_to_thickness(const std::vector<double>& phase, double wavelength,
                                              double refractive_index) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("phase_to_thickness: wavelength must be positive");
    if (!(refractive_index > 1.0))
        throw std::invalid_argument("phase_to_thickness: refractive index must exceed 1");
    std::vector<double> h;
    h.reserve(phase.size());
    for (double p : phase)
        h.push_back(p * wavelength / (2.0 * std::numbers::pi * (refractive_index - 1.0)));
    return h;
}

}  // namespace curvebeam
