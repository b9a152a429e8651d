#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "curvebeam/prediction.hpp"

using namespace curvebeam;

namespace {

constexpr double kPi = std::numbers::pi;

BeamSpec airy_spec() { return BeamSpec{150e9, 0.0036, 0.1, 0.2}; }

ReflectedFamily reflect_scenario(const ConvexTrajectory& traj, double aperture, int tangents,
                                 const ReflectorProfile& profile) {
    auto fam = decompose(traj, aperture, tangents);
    return reflect_family(fam, profile);
}

// Family of rays tangent to z = c0 + c2 * (x - xc)^2, hits placed behind the
// pairwise intersections so every envelope sample counts as forward.
ReflectedFamily tangent_fan(const std::vector<double>& contacts, double c0, double c2, double xc) {
    ReflectedFamily rf;
    rf.source_size = static_cast<int>(contacts.size());
    rf.source_label = "synthetic";
    for (std::size_t i = 0; i < contacts.size(); ++i) {
        double x = contacts[i];
        double z = c0 + c2 * (x - xc) * (x - xc);
        double m = 2.0 * c2 * (x - xc);
        ReflectedRay r;
        r.source_index = static_cast<int>(i);
        double back = 1.0;
        r.hit.point = {x - back, z - back * m};
        r.hit.normal = {0.0, 1.0};
        r.hit.ray_parameter = 1.0;
        r.dir = normalized({1.0, m});
        r.vertical = false;
        r.slope = m;
        rf.rays.push_back(r);
    }
    return rf;
}

}  // namespace

TEST_CASE("square-root beam on an unbounded tilted plane reconstructs the envelope") {
    ConvexTrajectory traj(SqrtForm{1.5, 0.0}, 0.5, "sqrt-beam");
    auto rf = reflect_scenario(traj, 0.1, 30, PlanarSegment{-1.0, 0.150, {}});
    auto pred = analyze_reflection(rf);

    REQUIRE(pred.kind == Prediction::Kind::curving);
    CHECK(pred.reason == "coherent curving envelope");
    CHECK(pred.diag.survivors == 30);
    CHECK(pred.diag.dropped == 0);
    CHECK(pred.diag.forward_points == 26);
    CHECK(pred.diag.head_captured);
    CHECK(pred.diag.tail_captured);
    CHECK(pred.diag.r2 > 0.9999);

    REQUIRE(pred.envelope);
    REQUIRE(pred.envelope->coeffs.size() == 3);
    CHECK(pred.envelope->coeffs[0] == Catch::Approx(0.140061).margin(5e-6));
    CHECK(pred.envelope->coeffs[1] == Catch::Approx(0.133718).margin(5e-5));
    CHECK(pred.envelope->coeffs[2] == Catch::Approx(-0.443737).margin(5e-4));
    CHECK(pred.envelope->x_lo == Catch::Approx(-0.3202).margin(1e-3));
    CHECK(pred.envelope->x_hi == Catch::Approx(-0.0144).margin(1e-3));

    CHECK(classify(rf) == Prediction::Kind::curving);
    auto quad = reconstruct(rf);
    CHECK(quad.coeffs[2] == Catch::Approx(pred.envelope->coeffs[2]).margin(1e-12));
}

TEST_CASE("square-root beam on a narrow strip reads as directional") {
    ConvexTrajectory traj(SqrtForm{1.5, 0.0}, 0.5, "sqrt-beam");
    auto rf = reflect_scenario(traj, 0.1, 30,
                               PlanarSegment{-1.0, 0.150, std::pair{0.001, 0.015}});
    auto pred = analyze_reflection(rf);

    CHECK(pred.kind == Prediction::Kind::directional);
    CHECK(pred.reason == "reflector captures only an interior slice of the tangent fan");
    CHECK(pred.diag.survivors == 10);
    CHECK(pred.diag.dropped == 20);
    CHECK(pred.diag.forward_points == 7);
    CHECK_FALSE(pred.diag.head_captured);
    CHECK_FALSE(pred.diag.tail_captured);
    REQUIRE(pred.directional);
    CHECK(norm(pred.directional->mean_dir) == Catch::Approx(1.0).margin(1e-12));

    SECTION("without the edge-capture rule the same slice still fits the full envelope") {
        ClassificationThresholds th;
        th.require_edge_capture = false;
        auto relaxed = analyze_reflection(rf, th);
        REQUIRE(relaxed.kind == Prediction::Kind::curving);
        REQUIRE(relaxed.envelope);
        CHECK(relaxed.envelope->coeffs[0] == Catch::Approx(0.140071).margin(5e-6));
        CHECK(relaxed.envelope->coeffs[1] == Catch::Approx(0.134028).margin(5e-5));
        CHECK(relaxed.envelope->coeffs[2] == Catch::Approx(-0.441959).margin(5e-4));
    }
}

TEST_CASE("Airy lobe peak on a bounded plane") {
    auto traj = airy_lobe_peak_trajectory(airy_spec(), 1);
    auto rf = reflect_scenario(traj, 0.2, 100,
                               PlanarSegment{-1.0, 0.150, std::pair{-0.020, 0.065}});
    auto pred = analyze_reflection(rf);

    REQUIRE(pred.kind == Prediction::Kind::curving);
    CHECK(pred.diag.survivors == 47);
    CHECK(pred.diag.dropped == 53);
    CHECK(pred.diag.forward_points == 40);
    CHECK(pred.diag.head_captured);       // start-side tangents land on the plane
    CHECK_FALSE(pred.diag.tail_captured); // shallow tail overshoots the extent
    REQUIRE(pred.envelope);
    CHECK(pred.envelope->coeffs[0] == Catch::Approx(0.141486).margin(5e-6));
    CHECK(pred.envelope->coeffs[1] == Catch::Approx(0.162788).margin(5e-5));
    CHECK(pred.envelope->coeffs[2] == Catch::Approx(-0.541902).margin(5e-4));
}

TEST_CASE("edges of the first two lobes share curvature and order by offset") {
    auto spec = airy_spec();
    PlanarSegment plane{-1.0, 0.150, std::pair{-0.020, 0.065}};

    auto [l1L, l1R] = lobe_edges(airy_lobe_peak_trajectory(spec, 1), spec.x0);
    auto [l2L, l2R] = lobe_edges(airy_lobe_peak_trajectory(spec, 2), spec.x0);

    struct Expect {
        const ConvexTrajectory* traj;
        double a0;
    };
    const Expect cases[] = {{&l1L, 0.145086}, {&l1R, 0.137887}, {&l2L, 0.153110},
                            {&l2R, 0.145912}};
    for (const auto& c : cases) {
        auto pred = analyze_reflection(reflect_scenario(*c.traj, 0.2, 100, plane));
        REQUIRE(pred.kind == Prediction::Kind::curving);
        REQUIRE(pred.envelope);
        CHECK(pred.envelope->coeffs[0] == Catch::Approx(c.a0).margin(5e-6));
        CHECK(pred.envelope->coeffs[2] == Catch::Approx(-0.5419).margin(2e-3));
    }
}

TEST_CASE("Airy peak on a 9 mm strip goes directional with widening spread") {
    auto traj = airy_lobe_peak_trajectory(airy_spec(), 1);
    auto rf = reflect_scenario(traj, 0.2, 100,
                               PlanarSegment{-1.0, 0.150, std::pair{0.003, 0.012}});
    auto pred = analyze_reflection(rf);

    CHECK(pred.kind == Prediction::Kind::directional);
    CHECK(pred.reason == "reflector captures only an interior slice of the tangent fan");
    CHECK(pred.diag.survivors == 16);
    CHECK(pred.diag.forward_points == 10);
    REQUIRE(pred.directional);

    const double dist[] = {0.0, 0.02, 0.05, 0.1, 0.2, 0.3};
    const double expected_mm[] = {0.916613, 2.917601, 8.668921, 18.254456, 37.425525, 56.596593};
    double prev = -1.0;
    for (int i = 0; i < 6; ++i) {
        double w = width_at_distance(*pred.directional, dist[i]);
        CHECK(w * 1e3 == Catch::Approx(expected_mm[i]).margin(0.01));
        CHECK(w > prev);
        prev = w;
    }
    CHECK_THROWS_AS(width_at_distance(*pred.directional, -0.1), std::invalid_argument);
}

TEST_CASE("lobe edges on a convex circle scatter into single directions") {
    auto spec = airy_spec();
    CircularArc circle{{0.025, 0.150}, 0.04};

    auto [l1L, l1R] = lobe_edges(airy_lobe_peak_trajectory(spec, 1), spec.x0);
    auto [l2L, l2R] = lobe_edges(airy_lobe_peak_trajectory(spec, 2), spec.x0);

    struct Expect {
        const ConvexTrajectory* traj;
        int survivors;
        double edge_angle_deg;
    };
    const Expect cases[] = {{&l1L, 36, 85.38}, {&l1R, 41, 111.75}, {&l2L, 28, 76.02},
                            {&l2R, 35, 72.14}};
    for (const auto& c : cases) {
        auto pred = analyze_reflection(reflect_scenario(*c.traj, 0.2, 100, circle));
        CHECK(pred.kind == Prediction::Kind::directional);
        CHECK(pred.reason == "fewer than 3 forward envelope points");
        CHECK(pred.diag.survivors == c.survivors);
        CHECK(pred.diag.forward_points == 1);
        REQUIRE(pred.directional);
        double deg = edge_ray_angle(*pred.directional) * 180.0 / kPi;
        CHECK(deg == Catch::Approx(c.edge_angle_deg).margin(0.02));
    }
}

TEST_CASE("measured quadratic beam on the far plane") {
    ConvexTrajectory traj(PolyXofZ{{0.0, 0.1430, 0.1911}, 0.0, 1.2}, "measured-beam");
    auto rf = reflect_scenario(traj, 0.1, 100, PlanarSegment{-1.0, 0.238, {}});
    auto pred = analyze_reflection(rf);

    REQUIRE(pred.kind == Prediction::Kind::curving);
    CHECK(pred.diag.survivors == 100);
    CHECK(pred.diag.forward_points == 81);
    REQUIRE(pred.envelope);
    CHECK(pred.envelope->coeffs[0] == Catch::Approx(0.193145).margin(5e-6));
    CHECK(pred.envelope->coeffs[1] == Catch::Approx(0.233973).margin(5e-5));
    CHECK(pred.envelope->coeffs[2] == Catch::Approx(-0.191091).margin(5e-4));
}

TEST_CASE("near-straight envelopes and scrambled sweeps classify as directional") {
    SECTION("tiny curvature fails the quadratic-coefficient gate") {
        std::vector<double> contacts;
        for (int i = 0; i <= 10; ++i) contacts.push_back(0.3 + 0.02 * i);
        auto rf = tangent_fan(contacts, 0.15, 0.001, 0.5);
        auto pred = analyze_reflection(rf);
        CHECK(pred.kind == Prediction::Kind::directional);
        CHECK(pred.reason == "envelope too straight");
        CHECK(pred.diag.r2 > 0.98);
        CHECK(std::abs(pred.diag.quadratic_coeff) < 0.05);
    }
    SECTION("non-monotone forward sweep is rejected") {
        auto rf = tangent_fan({0.0, 0.1, 0.01, 0.02}, 0.0, 1.0, 0.0);
        auto pred = analyze_reflection(rf);
        CHECK(pred.kind == Prediction::Kind::directional);
        CHECK(pred.reason == "forward points do not sweep x monotonically");
    }
    SECTION("two rays leave too few envelope points") {
        auto rf = tangent_fan({0.3, 0.32}, 0.15, 0.001, 0.5);
        auto pred = analyze_reflection(rf);
        CHECK(pred.kind == Prediction::Kind::directional);
        CHECK(pred.reason == "fewer than 3 forward envelope points");
        CHECK(pred.diag.forward_points == 1);
    }
}

TEST_CASE("scenario prediction isolates per-trajectory failures") {
    Scenario sc;
    sc.beam.emplace_back(SqrtForm{1.5, 0.0}, 0.5, "good");
    sc.beam.emplace_back(SqrtForm{1.5, -0.3}, 0.5, "starts-outside");
    sc.aperture = 0.1;
    sc.profile = PlanarSegment{-1.0, 0.150, {}};
    sc.tangent_count = 30;

    auto preds = predict(sc);
    REQUIRE(preds.size() == 2);
    CHECK(preds[0].label == "good");
    CHECK(preds[0].kind == Prediction::Kind::curving);
    CHECK_FALSE(preds[0].error);
    CHECK(preds[1].label == "starts-outside");
    REQUIRE(preds[1].error);
    CHECK(preds[1].error->find("aperture") != std::string::npos);
}

TEST_CASE("reconstruct rejects degenerate input") {
    ReflectedFamily empty;
    empty.source_size = 0;
    CHECK_THROWS_AS(reconstruct(empty), std::invalid_argument);
    CHECK_THROWS_AS(analyze_reflection(ReflectedFamily{}, {}, 0), std::invalid_argument);
}
