#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "curvebeam/geometry.hpp"

using namespace curvebeam;

TEST_CASE("normalized produces unit vectors and rejects zero", "[geometry]") {
    auto d = normalized({3.0, 4.0});
    CHECK(d.dx == Catch::Approx(0.6));
    CHECK(d.dz == Catch::Approx(0.8));
    CHECK(is_unit(d));
    CHECK_THROWS_AS(normalized({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("reflect_direction mirrors across the surface", "[geometry]") {
    // 45-degree drop onto a flat floor bounces up at 45 degrees.
    Direction2 d = normalized({1.0, -1.0});
    Direction2 up{0.0, 1.0};
    auto r = reflect_direction(d, up);
    CHECK(r.dx == Catch::Approx(d.dx));
    CHECK(r.dz == Catch::Approx(-d.dz));
    CHECK_THROWS_AS(reflect_direction(d, {0.0, 2.0}), std::invalid_argument);
}

TEST_CASE("reflection invariants hold for random ray/normal pairs", "[geometry]") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ang(-3.14159265358979, 3.14159265358979);
    for (int i = 0; i < 1000; ++i) {
        double a = ang(rng), b = ang(rng);
        Direction2 d{std::cos(a), std::sin(a)};
        Direction2 n{std::cos(b), std::sin(b)};
        auto r = reflect_direction(d, n);

        // Norm preserved.
        CHECK(std::abs(norm(r) - 1.0) < 1e-10);
        // Angle to the normal preserved in magnitude.
        CHECK(std::abs(std::abs(dot(r, n)) - std::abs(dot(d, n))) < 1e-10);
        // Involution.
        auto rr = reflect_direction(r, n);
        CHECK(std::abs(rr.dx - d.dx) < 1e-10);
        CHECK(std::abs(rr.dz - d.dz) < 1e-10);
        // Flipping the normal changes nothing.
        auto rf = reflect_direction(d, {-n.dx, -n.dz});
        CHECK(std::abs(rf.dx - r.dx) < 1e-10);
        CHECK(std::abs(rf.dz - r.dz) < 1e-10);
    }
}

TEST_CASE("point_at walks the ray linearly", "[geometry]") {
    Ray r{{1.0, 2.0}, {0.5, -0.25}};
    auto p = point_at(r, 4.0);
    CHECK(p.x == Catch::Approx(3.0));
    CHECK(p.z == Catch::Approx(1.0));
}
