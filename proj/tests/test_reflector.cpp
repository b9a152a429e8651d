#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "curvebeam/reflector.hpp"

using namespace curvebeam;

TEST_CASE("ray hits a tilted plane where algebra says", "[reflector]") {
    ReflectorProfile plane = PlanarSegment{-1.0, 0.15, std::nullopt};
    // Straight up from the origin: z = 0.15 - x gives z = 0.15 at x = 0.
    auto hit = intersect_ray(plane, {{0.0, 0.0}, {0.0, 1.0}});
    REQUIRE(hit);
    CHECK(hit->point.x == Catch::Approx(0.0).margin(1e-15));
    CHECK(hit->point.z == Catch::Approx(0.15));
    CHECK(hit->ray_parameter == Catch::Approx(0.15));
    // Normal is unit, tilted toward the incoming ray.
    CHECK(is_unit(hit->normal));
    CHECK(dot(hit->normal, {0.0, 1.0}) < 0.0);

    // Parallel ray never hits.
    CHECK_FALSE(intersect_ray(plane, {{0.0, 0.0}, normalized({1.0, -1.0})}));
    // Surface behind the ray origin.
    CHECK_FALSE(intersect_ray(plane, {{0.0, 0.2}, {0.0, 1.0}}));
}

TEST_CASE("plane extent clips hits but keeps its edges", "[reflector]") {
    ReflectorProfile strip = PlanarSegment{-1.0, 0.15, std::make_pair(0.001, 0.015)};
    CHECK_FALSE(intersect_ray(strip, {{0.0, 0.0}, {0.0, 1.0}}));  // x = 0 outside
    auto mid = intersect_ray(strip, {{0.01, 0.0}, {0.0, 1.0}});
    REQUIRE(mid);
    CHECK(mid->point.z == Catch::Approx(0.14));
    // Exactly on the extent edge still counts.
    auto edge = intersect_ray(strip, {{0.015, 0.0}, {0.0, 1.0}});
    REQUIRE(edge);
    CHECK(edge->point.x == Catch::Approx(0.015));
}

TEST_CASE("circle intersection picks the near side", "[reflector]") {
    ReflectorProfile circ = CircularArc{{0.0, 0.15}, 0.05};
    auto hit = intersect_ray(circ, {{0.0, 0.0}, {0.0, 1.0}});
    REQUIRE(hit);
    CHECK(hit->point.z == Catch::Approx(0.10));  // lower rim
    CHECK(hit->normal.dz == Catch::Approx(-1.0));
    CHECK(hit->normal.dx == Catch::Approx(0.0).margin(1e-12));

    // From inside, the exit point is the far rim and the normal flips inward.
    auto inside = intersect_ray(circ, {{0.0, 0.15}, {0.0, 1.0}});
    REQUIRE(inside);
    CHECK(inside->point.z == Catch::Approx(0.20));
    CHECK(dot(inside->normal, {0.0, 1.0}) < 0.0);

    CHECK_FALSE(intersect_ray(circ, {{0.2, 0.0}, {0.0, 1.0}}));
}

TEST_CASE("ray starting on the surface does not immediately re-hit", "[reflector]") {
    ReflectorProfile plane = PlanarSegment{0.0, 0.1, std::nullopt};
    // Origin on the plane, direction away from it: no hit.
    CHECK_FALSE(intersect_ray(plane, {{0.0, 0.1}, normalized({1.0, 1.0})}));
    // Nearly grazing from the surface: the zero-parameter root is swallowed
    // by the minimum-advance guard.
    CHECK_FALSE(intersect_ray(plane, {{0.0, 0.1}, normalized({1.0, 1e-4})}));
}

TEST_CASE("sampled profile agrees with the plane it samples", "[reflector]") {
    SampledProfile prof;
    for (int i = 0; i <= 200; ++i) {
        double x = -0.05 + 0.25 * i / 200.0;
        prof.xs.push_back(x);
        prof.zs.push_back(0.15 - x);
    }
    ReflectorProfile sampled = prof;
    ReflectorProfile plane = PlanarSegment{-1.0, 0.15, std::nullopt};

    for (double lx : {-0.04, -0.01, 0.005, 0.02}) {
        Ray r{{lx, 0.0}, normalized({0.3, 1.0})};
        auto hs = intersect_ray(sampled, r);
        auto hp = intersect_ray(plane, r);
        REQUIRE(hs);
        REQUIRE(hp);
        CHECK(hs->point.x == Catch::Approx(hp->point.x).margin(1e-8));
        CHECK(hs->point.z == Catch::Approx(hp->point.z).margin(1e-8));
        CHECK(hs->normal.dx == Catch::Approx(hp->normal.dx).margin(1e-9));
        CHECK(hs->normal.dz == Catch::Approx(hp->normal.dz).margin(1e-9));
    }
    // Outside the sampled extent: no hit.
    CHECK_FALSE(intersect_ray(sampled, {{0.4, 0.0}, {0.0, 1.0}}));
}

TEST_CASE("surface normals orient against the incident direction", "[reflector]") {
    ReflectorProfile plane = PlanarSegment{-1.0, 0.15, std::nullopt};
    auto n = surface_normal(plane, 0.05, {0.0, 1.0});
    CHECK(is_unit(n));
    CHECK(dot(n, {0.0, 1.0}) < 0.0);
    auto n2 = surface_normal(plane, 0.05, {0.0, -1.0});
    CHECK(n2.dx == Catch::Approx(-n.dx));
    CHECK(n2.dz == Catch::Approx(-n.dz));

    ReflectorProfile circ = CircularArc{{0.025, 0.15}, 0.04};
    auto nc = surface_normal(circ, 0.025, {0.0, 1.0});
    CHECK(nc.dz == Catch::Approx(-1.0));  // lower branch, facing down
    CHECK_THROWS_AS(surface_normal(circ, 0.5, {0.0, 1.0}), std::invalid_argument);

    ReflectorProfile strip = PlanarSegment{-1.0, 0.15, std::make_pair(0.0, 0.01)};
    CHECK_THROWS_AS(surface_normal(strip, 0.02, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("profile CSV loads and validates", "[reflector]") {
    std::string path = "test_profile.csv";
    {
        std::ofstream f(path);
        f << "x_m,z_m\n0.0,0.15\n0.01,0.14\n0.02,0.13\n";
    }
    auto prof = load_profile_csv(path);
    REQUIRE(prof.xs.size() == 3);
    CHECK(prof.zs[1] == Catch::Approx(0.14));

    {
        std::ofstream f(path);
        f << "x_m,z_m\n0.0,0.15\nbad,0.14\n";
    }
    CHECK_THROWS_WITH(load_profile_csv(path), Catch::Matchers::ContainsSubstring("line 3"));

    {
        std::ofstream f(path);
        f << "wrong,header\n0.0,0.15\n";
    }
    CHECK_THROWS_AS(load_profile_csv(path), io_error);

    {
        std::ofstream f(path);
        f << "x_m,z_m\n0.02,0.15\n0.01,0.14\n";  // not increasing
    }
    CHECK_THROWS_AS(load_profile_csv(path), std::invalid_argument);

    std::remove(path.c_str());
    CHECK_THROWS_AS(load_profile_csv(path), io_error);
}
