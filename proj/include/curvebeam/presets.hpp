#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "curvebeam/errors.hpp"

namespace curvebeam {

struct Preset {
    std::string name;
    std::string summary;
    nlohmann::json config;
};

// Canned scenarios covering the shapes the engine is exercised against:
// square-root and measured-fit beams on tilted planes, and lobe-resolved
// Airy beams on planes, strips, and a cylinder section.
inline const std::vector<Preset>& presets() {
    using nlohmann::json;
    static const std::vector<Preset> all = [] {
        std::vector<Preset> v;

        json sqrt_beam = {
            {"beam",
             {{"aperture_m", 0.1},
              {"trajectories",
               {{{"label", "sqrt-beam"},
                 {"form", "sqrt"},
                 {"scale", 1.5},
                 {"shift_m", 0.0},
                 {"x_hi_m", 0.5}}}}}},
            {"reflector", {{"kind", "plane"}, {"slope", -1.0}, {"intercept_m", 0.150}}},
            {"run", {{"tangents", 30}}},
            {"references",
             {{{"label", "published-prediction"},
               {"coeffs", {0.1406, 0.1374, -0.4262}},
               {"domain_m", {0.02, 0.14}}}}},
        };
        v.push_back({"sqrt-beam-plane",
                     "square-root beam onto an unbounded 45-degree plane", sqrt_beam});

        json sqrt_strip = sqrt_beam;
        sqrt_strip["reflector"]["x_extent_m"] = {0.001, 0.015};
        sqrt_strip.erase("references");
        v.push_back({"sqrt-beam-strip",
                     "square-root beam onto a narrow strip of the same plane", sqrt_strip});

        json airy_common = {
            {"beam",
             {{"aperture_m", 0.2},
              {"airy",
               {{"frequency_hz", 150e9},
                {"x0_m", 0.0036},
                {"truncation", 0.1},
                {"components", {{{"lobe", 1}, {"part", "peak"}}}}}}}},
            {"reflector",
             {{"kind", "plane"},
              {"slope", -1.0},
              {"intercept_m", 0.150},
              {"x_extent_m", {-0.020, 0.065}}}},
            {"run", {{"tangents", 100}}},
        };

        json airy_peak = airy_common;
        airy_peak["references"] = {{{"label", "published-prediction"},
                                    {"coeffs", {0.1414, 0.1635, -0.5406}}},
                                   {{"label", "fullwave"},
                                    {"coeffs", {0.1418, 0.1577, -0.5192}}}};
        v.push_back({"airy-peak-plane",
                     "150 GHz Airy main-lobe peak onto a 45-degree plane", airy_peak});

        json airy_edges = airy_common;
        airy_edges["beam"]["airy"]["components"] = {{{"lobe", 1}, {"part", "edges"}},
                                                    {{"lobe", 2}, {"part", "edges"}}};
        v.push_back({"airy-edges-plane",
                     "edges of the first two Airy lobes onto the same plane", airy_edges});

        json airy_strip = airy_common;
        airy_strip["reflector"]["x_extent_m"] = {0.003, 0.012};
        v.push_back({"airy-peak-strip",
                     "Airy main-lobe peak onto a 9 mm strip of the plane", airy_strip});

        json airy_circle = airy_edges;
        airy_circle["reflector"] = {{"kind", "circle"},
                                    {"center_m", {0.025, 0.150}},
                                    {"radius_m", 0.04}};
        v.push_back({"airy-edges-circle",
                     "lobe edges onto a convex circular reflector", airy_circle});

        json measured = {
            {"beam",
             {{"aperture_m", 0.1},
              {"trajectories",
               {{{"label", "measured-beam"},
                 {"form", "poly-z"},
                 {"coeffs", {0.0, 0.1430, 0.1911}},
                 {"z_domain_m", {0.0, 1.2}}}}}}},
            {"reflector", {{"kind", "plane"}, {"slope", -1.0}, {"intercept_m", 0.238}}},
            {"run", {{"tangents", 100}}},
            {"references",
             {{{"label", "published-prediction"},
               {"coeffs", {0.1930, 0.2442, -0.1090}},
               {"domain_m", {0.05, 0.30}}},
              {{"label", "measured"}, {"coeffs", {0.2104, 0.3068, -0.0161}}}}},
        };
        v.push_back({"measured-beam-plane",
                     "beam following a measured quadratic onto a tilted plane", measured});

        json scanfit = measured;
        scanfit["beam"]["trajectories"][0]["label"] = "measured-beam-scanfit";
        scanfit["beam"]["trajectories"][0]["coeffs"] = {-0.0256, 0.0286, 0.1911};
        v.push_back({"measured-beam-plane-scanfit",
                     "same plane, beam taken from the full field-scan fit", scanfit});

        return v;
    }();
    return all;
}

inline const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    std::string names;
    for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
    throw config_error("unknown preset \"" + name + "\" (available: " + names + ")");
}

}  // namespace curvebeam
