#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "curvebeam/reflection.hpp"

using namespace curvebeam;

TEST_CASE("mirror_point across the 45-degree plane swaps and shifts", "[reflection]") {
    PlanarSegment plane{-1.0, 0.15, std::nullopt};
    // Across z = -x + b the image of (x, z) is (b - z, b - x).
    auto p = mirror_point({0.0, 0.0}, plane);
    CHECK(p.x == Catch::Approx(0.15));
    CHECK(p.z == Catch::Approx(0.15));
    auto q = mirror_point({0.02, 0.05}, plane);
    CHECK(q.x == Catch::Approx(0.10));
    CHECK(q.z == Catch::Approx(0.13));
}

TEST_CASE("mirror_point is an involution that fixes the plane", "[reflection]") {
    PlanarSegment plane{0.35, 0.07, std::nullopt};
    for (double x : {-0.3, 0.0, 0.4}) {
        for (double z : {-0.1, 0.2, 0.8}) {
            auto m = mirror_point({x, z}, plane);
            auto back = mirror_point(m, plane);
            CHECK(back.x == Catch::Approx(x).margin(1e-12));
            CHECK(back.z == Catch::Approx(z).margin(1e-12));
        }
        // Points on the plane stay put.
        auto on = mirror_point({x, 0.35 * x + 0.07}, plane);
        CHECK(on.x == Catch::Approx(x).margin(1e-12));
        CHECK(on.z == Catch::Approx(0.35 * x + 0.07).margin(1e-12));
    }
}

TEST_CASE("reflect_tangent off the 45-degree plane flips the direction", "[reflection]") {
    ConvexTrajectory traj(SqrtForm{1.5, 0.0}, 0.5, "b");
    auto fam = decompose(traj, 0.1, 30);
    ReflectorProfile plane = PlanarSegment{-1.0, 0.15, std::nullopt};

    for (const auto& t : fam.rays) {
        auto r = reflect_tangent(t, plane);
        REQUIRE(r);
        // Reflecting (dx, dz) across z = -x + b gives (-dz, -dx).
        CHECK(r->dir.dx == Catch::Approx(-t.dir.dz).margin(1e-12));
        CHECK(r->dir.dz == Catch::Approx(-t.dir.dx).margin(1e-12));
        CHECK(is_unit(r->dir));
        // Hit point sits on the plane.
        CHECK(r->hit.point.z == Catch::Approx(0.15 - r->hit.point.x).margin(1e-12));
    }
}

TEST_CASE("reflect_family drops misses and keeps order", "[reflection]") {
    ConvexTrajectory traj(SqrtForm{1.5, 0.0}, 0.5, "b");
    auto fam = decompose(traj, 0.1, 30);
    ReflectorProfile strip = PlanarSegment{-1.0, 0.15, std::make_pair(0.001, 0.015)};
    auto rf = reflect_family(fam, strip);
    CHECK(rf.source_size == 30);
    CHECK(rf.dropped == 30 - static_cast<int>(rf.rays.size()));
    CHECK(rf.rays.size() > 2);
    CHECK(rf.rays.size() < 30);
    CHECK(std::is_sorted(rf.rays.begin(), rf.rays.end(),
                         [](const ReflectedRay& a, const ReflectedRay& b) {
                             return a.source_index < b.source_index;
                         }));
    CHECK(rf.source_label == "b");
}

TEST_CASE("mirror_baseline reproduces an exactly mirrorable quadratic", "[reflection]") {
    // Horizontal plane z = 0.2: the image of z = p(x) is 0.4 - p(x), again a
    // quadratic, so the degree-2 refit must be exact.
    PlanarSegment plane{0.0, 0.2, std::nullopt};
    ConvexTrajectory traj(PolyZofX{PolyCurve{{0.01, 0.1, 0.8}, 0.0, 0.3}}, "q");
    auto base = mirror_baseline(traj, plane);
    REQUIRE(base.coeffs.size() == 3);
    CHECK(base.coeffs[0] == Catch::Approx(0.4 - 0.01).margin(1e-10));
    CHECK(base.coeffs[1] == Catch::Approx(-0.1).margin(1e-9));
    CHECK(base.coeffs[2] == Catch::Approx(-0.8).margin(1e-8));
}

TEST_CASE("mirror_samples preserves distance to the plane", "[reflection]") {
    PlanarSegment plane{-1.0, 0.238, std::nullopt};
    ConvexTrajectory traj(PolyXofZ{{0.0, 0.1430, 0.1911}, 0.0, 1.2}, "m");
    auto pts = mirror_samples(traj, plane, 64);
    REQUIRE(pts.size() == 64);
    double s = plane.slope;
    double inv = 1.0 / std::sqrt(1.0 + s * s);
    for (int i = 0; i < 64; ++i) {
        double x = traj.x_lo() + (traj.x_hi() - traj.x_lo()) * i / 63.0;
        double z = traj.value(x);
        double d0 = (z - s * x - plane.intercept) * inv;
        double d1 = (pts[i].z - s * pts[i].x - plane.intercept) * inv;
        CHECK(d1 == Catch::Approx(-d0).margin(1e-12));
    }
}
