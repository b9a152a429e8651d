#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "curvebeam/constants.hpp"
#include "curvebeam/trajectory.hpp"

using namespace curvebeam;

namespace {
const BeamSpec spec150{150e9, 0.0036, 0.1, 0.2};
}

TEST_CASE("wavenumber at 150 GHz", "[trajectory]") {
    CHECK(wavenumber(150e9) == Catch::Approx(3143.68844588705).epsilon(1e-12));
    CHECK_THROWS_AS(wavenumber(0.0), std::invalid_argument);
}

TEST_CASE("sqrt form evaluates value and slope", "[trajectory]") {
    ConvexTrajectory t(SqrtForm{1.5, 0.0}, 0.5, "b");
    CHECK(t.value(0.04) == Catch::Approx(0.3));
    CHECK(t.slope(0.04) == Catch::Approx(1.5 / (2.0 * 0.2)));
    CHECK(std::isinf(t.slope(0.0)));
    CHECK(t.start_x() == 0.0);
    CHECK(t.slope_monotone());
}

TEST_CASE("polynomial-in-x form and translation", "[trajectory]") {
    ConvexTrajectory t(PolyZofX{PolyCurve{{0.0, 0.0, 1.0}, -1.0, 0.0}}, "par");
    CHECK(t.value(-0.5) == Catch::Approx(0.25));
    CHECK(t.slope(-0.5) == Catch::Approx(-1.0));
    CHECK(t.start_x() == Catch::Approx(0.0).margin(1e-12));
    CHECK(t.slope_monotone());

    auto s = t.translated_x(0.25, "par-shift");
    CHECK(s.x_lo() == Catch::Approx(-0.75));
    CHECK(s.x_hi() == Catch::Approx(0.25));
    // Same shape at shifted abscissa.
    CHECK(s.value(-0.25) == Catch::Approx(t.value(-0.5)));
    CHECK(s.label() == "par-shift");
}

TEST_CASE("straight line is not slope-monotone", "[trajectory]") {
    ConvexTrajectory t(PolyZofX{PolyCurve{{0.0, 2.0}, 0.0, 1.0}}, "line");
    CHECK_FALSE(t.slope_monotone());
}

TEST_CASE("x-of-z branch inverts to the x frame", "[trajectory]") {
    // x = 0.1911 z^2 + 0.1430 z on z in [0, 1.2].
    ConvexTrajectory t(PolyXofZ{{0.0, 0.1430, 0.1911}, 0.0, 1.2}, "m");
    CHECK(t.start_x() == Catch::Approx(0.0).margin(1e-15));
    CHECK(t.x_lo() == Catch::Approx(0.0).margin(1e-15));
    CHECK(t.x_hi() == Catch::Approx(0.1430 * 1.2 + 0.1911 * 1.44));

    // Round trip: for a z grid, value(q(z)) returns z to 1e-10.
    for (int i = 0; i <= 40; ++i) {
        double z = 1.2 * i / 40.0;
        double x = 0.1911 * z * z + 0.1430 * z;
        CHECK(t.value(x) == Catch::Approx(z).margin(1e-10));
    }
    // Slope dz/dx = 1 / (dx/dz).
    double z = 0.6;
    double x = 0.1911 * z * z + 0.1430 * z;
    CHECK(t.slope(x) == Catch::Approx(1.0 / (2.0 * 0.1911 * z + 0.1430)).margin(1e-8));
    CHECK(t.slope_monotone());
}

TEST_CASE("x-of-z rejects a non-monotone branch", "[trajectory]") {
    // q(z) = z^2 - z turns around inside [0, 1].
    CHECK_THROWS_AS(ConvexTrajectory(PolyXofZ{{0.0, -1.0, 1.0}, 0.0, 1.0}, "bad"),
                    std::invalid_argument);
}

TEST_CASE("ideal deflection through the origin", "[trajectory]") {
    auto t = airy_peak_trajectory(spec150);
    double k = wavenumber(150e9);
    double c = 4.0 * k * k * 0.0036 * 0.0036 * 0.0036;
    CHECK(c == Catch::Approx(1.844363).epsilon(1e-6));
    // z = sqrt(c x) inverts to x = z^2 / c.
    double z = t.value(0.010);
    CHECK(z * z / c == Catch::Approx(0.010).epsilon(1e-12));
    CHECK(t.start_x() == 0.0);
}

TEST_CASE("lobe peak trajectories start at the launch-plane lobe positions", "[trajectory]") {
    auto l1 = airy_lobe_peak_trajectory(spec150, 1);
    CHECK(l1.start_x() == Catch::Approx(airy_dai_zeros[0] * 0.0036));
    CHECK(l1.value(l1.start_x()) == Catch::Approx(0.0).margin(1e-15));
    auto l2 = airy_lobe_peak_trajectory(spec150, 2);
    CHECK(l2.start_x() == Catch::Approx(airy_dai_zeros[1] * 0.0036));
    CHECK(l2.label() == "lobe2-peak");
    CHECK_THROWS_AS(airy_lobe_peak_trajectory(spec150, 0), std::invalid_argument);

    // Same shape as the origin-peak curve, just shifted.
    auto base = airy_peak_trajectory(spec150);
    double s1 = airy_dai_zeros[0] * 0.0036;
    CHECK(l1.value(0.010 + s1) == Catch::Approx(base.value(0.010)).epsilon(1e-12));
}

TEST_CASE("lobe edges sit one beamwidth either side of the peak", "[trajectory]") {
    auto peak = airy_lobe_peak_trajectory(spec150, 1);
    auto [left, right] = lobe_edges(peak, 0.0036);
    CHECK(left.start_x() == Catch::Approx((airy_dai_zeros[0] - 1.0) * 0.0036));
    CHECK(right.start_x() == Catch::Approx((airy_dai_zeros[0] + 1.0) * 0.0036));
    CHECK(left.label() == "lobe1-peak-left");
    CHECK(right.label() == "lobe1-peak-right");
    // Launch-plane separation between the edges is two beamwidths.
    CHECK(right.start_x() - left.start_x() == Catch::Approx(2.0 * 0.0036));
}
