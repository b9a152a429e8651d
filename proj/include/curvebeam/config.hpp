#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "curvebeam/errors.hpp"
#include "curvebeam/prediction.hpp"
#include "curvebeam/reflector.hpp"
#include "curvebeam/trajectory.hpp"

namespace curvebeam {

struct AiryComponentSpec {
    int lobe = 1;
    std::string part;  // "peak", "edges", "origin-peak"
    std::string label; // optional override
};

struct TrajectorySpecCfg {
    std::string label;
    std::string form;  // "sqrt", "poly-x", "poly-z"
    double scale = 1.0;
    double shift = 0.0;
    double x_hi = 0.0;
    std::vector<double> coeffs;
    double d_lo = 0.0;  // x-domain for poly-x, z-domain for poly-z
    double d_hi = 0.0;
};

struct ReferenceCurve {
    std::string label;
    std::vector<double> coeffs;  // ascending powers of x, meters
    std::optional<std::pair<double, double>> domain;
};

struct SvgOptions {
    double scale_px_per_m = 2000.0;
    bool tangents = true;
};

struct ScenarioConfig {
    std::optional<BeamSpec> airy;
    std::vector<AiryComponentSpec> components;
    std::vector<TrajectorySpecCfg> trajectories;
    double aperture = 0.0;
    ReflectorProfile profile;
    int tangents = 100;
    int fit_degree = 2;
    Spacing spacing = Spacing::equal_contact;
    ClassificationThresholds thresholds;
    std::vector<ReferenceCurve> references;
    std::optional<std::pair<double, double>> comparison_domain;
    int comparison_samples = 256;
    SvgOptions svg;
    nlohmann::json raw;  // echoed verbatim into reports
};

namespace detail {

// Collects every config problem so one failed parse reports them all.
struct FieldErrors {
    std::vector<std::string> items;
    void add(const std::string& field, const std::string& what) {
        items.push_back(field + ": " + what);
    }
    void raise_if_any() const {
        if (items.empty()) return;
        std::string msg = "invalid configuration:";
        for (const auto& s : items) msg += "\n  - " + s;
        throw config_error(msg);
    }
};

inline void check_keys(const nlohmann::json& obj, const std::string& prefix,
                       std::initializer_list<const char*> allowed, FieldErrors& errs) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                ok = true;
                break;
            }
        if (!ok) errs.add(prefix + "." + it.key(), "unknown field");
    }
}

inline double want_number(const nlohmann::json& obj, const std::string& prefix, const char* key,
                          FieldErrors& errs, bool required, double fallback = 0.0) {
    if (!obj.contains(key)) {
        if (required) errs.add(prefix + "." + key, "missing");
        return fallback;
    }
    if (!obj[key].is_number()) {
        errs.add(prefix + "." + key, "must be a number");
        return fallback;
    }
    return obj[key].get<double>();
}

// Two-number array with no ordering constraint (a point, say).
inline std::optional<std::pair<double, double>> want_pair(const nlohmann::json& obj,
                                                          const std::string& prefix,
                                                          const char* key, FieldErrors& errs,
                                                          bool required) {
    if (!obj.contains(key)) {
        if (required) errs.add(prefix + "." + key, "missing");
        return std::nullopt;
    }
    const auto& v = obj[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        errs.add(prefix + "." + key, "must be a two-number array");
        return std::nullopt;
    }
    return std::make_pair(v[0].get<double>(), v[1].get<double>());
}

inline std::optional<std::pair<double, double>> want_range(const nlohmann::json& obj,
                                                           const std::string& prefix,
                                                           const char* key, FieldErrors& errs) {
    auto p = want_pair(obj, prefix, key, errs, false);
    if (!p) return std::nullopt;
    if (!(p->second > p->first)) {
        errs.add(prefix + "." + key, "upper bound must exceed lower bound");
        return std::nullopt;
    }
    return p;
}

inline std::vector<double> want_coeffs(const nlohmann::json& obj, const std::string& prefix,
                                       const char* key, FieldErrors& errs) {
    std::vector<double> out;
    if (!obj.contains(key)) {
        errs.add(prefix + "." + key, "missing");
        return out;
    }
    const auto& v = obj[key];
    if (!v.is_array() || v.empty()) {
        errs.add(prefix + "." + key, "must be a non-empty number array");
        return out;
    }
    for (const auto& e : v) {
        if (!e.is_number()) {
            errs.add(prefix + "." + key, "must contain only numbers");
            return {};
        }
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace detail

inline ScenarioConfig parse_scenario_config(const nlohmann::json& j) {
    using detail::check_keys;
    using detail::want_coeffs;
    using detail::want_number;
    using detail::want_range;
    detail::FieldErrors errs;
    ScenarioConfig cfg;
    cfg.raw = j;

    if (!j.is_object()) {
        errs.add("(root)", "must be a JSON object");
        errs.raise_if_any();
    }
    check_keys(j, "(root)",
               {"beam", "reflector", "run", "references", "comparison", "svg"}, errs);

    // beam
    if (!j.contains("beam") || !j["beam"].is_object()) {
        errs.add("beam", "missing or not an object");
    } else {
        const auto& b = j["beam"];
        check_keys(b, "beam", {"airy", "trajectories", "aperture_m"}, errs);
        cfg.aperture = want_number(b, "beam", "aperture_m", errs, true);
        if (cfg.aperture <= 0.0 && b.contains("aperture_m") && b["aperture_m"].is_number())
            errs.add("beam.aperture_m", "must be positive");

        if (b.contains("airy")) {
            const auto& a = b["airy"];
            if (!a.is_object()) {
                errs.add("beam.airy", "must be an object");
            } else {
                check_keys(a, "beam.airy", {"frequency_hz", "x0_m", "truncation", "components"},
                           errs);
                BeamSpec spec;
                spec.frequency = want_number(a, "beam.airy", "frequency_hz", errs, true);
                spec.x0 = want_number(a, "beam.airy", "x0_m", errs, true);
                spec.truncation = want_number(a, "beam.airy", "truncation", errs, false, 0.0);
                spec.aperture = cfg.aperture;
                if (a.contains("frequency_hz") && a["frequency_hz"].is_number() &&
                    spec.frequency <= 0.0)
                    errs.add("beam.airy.frequency_hz", "must be positive");
                if (a.contains("x0_m") && a["x0_m"].is_number() && spec.x0 <= 0.0)
                    errs.add("beam.airy.x0_m", "must be positive");
                if (spec.truncation < 0.0 || spec.truncation >= 1.0)
                    errs.add("beam.airy.truncation", "must lie in [0, 1)");
                cfg.airy = spec;
                if (!a.contains("components") || !a["components"].is_array() ||
                    a["components"].empty()) {
                    errs.add("beam.airy.components", "must be a non-empty array");
                } else {
                    int idx = 0;
                    for (const auto& c : a["components"]) {
                        std::string p = "beam.airy.components[" + std::to_string(idx++) + "]";
                        if (!c.is_object()) {
                            errs.add(p, "must be an object");
                            continue;
                        }
                        check_keys(c, p, {"lobe", "part", "label"}, errs);
                        AiryComponentSpec comp;
                        if (c.contains("lobe")) {
                            if (!c["lobe"].is_number_integer())
                                errs.add(p + ".lobe", "must be an integer");
                            else
                                comp.lobe = c["lobe"].get<int>();
                        }
                        if (comp.lobe < 1 || comp.lobe > 3)
                            errs.add(p + ".lobe", "must be 1..3");
                        if (!c.contains("part") || !c["part"].is_string()) {
                            errs.add(p + ".part", "missing or not a string");
                        } else {
                            comp.part = c["part"].get<std::string>();
                            if (comp.part != "peak" && comp.part != "edges" &&
                                comp.part != "origin-peak")
                                errs.add(p + ".part", "must be peak, edges, or origin-peak");
                        }
                        if (c.contains("label")) {
                            if (!c["label"].is_string())
                                errs.add(p + ".label", "must be a string");
                            else
                                comp.label = c["label"].get<std::string>();
                        }
                        cfg.components.push_back(std::move(comp));
                    }
                }
            }
        }

        if (b.contains("trajectories")) {
            if (!b["trajectories"].is_array()) {
                errs.add("beam.trajectories", "must be an array");
            } else {
                int idx = 0;
                for (const auto& t : b["trajectories"]) {
                    std::string p = "beam.trajectories[" + std::to_string(idx++) + "]";
                    if (!t.is_object()) {
                        errs.add(p, "must be an object");
                        continue;
                    }
                    TrajectorySpecCfg tc;
                    if (!t.contains("label") || !t["label"].is_string())
                        errs.add(p + ".label", "missing or not a string");
                    else
                        tc.label = t["label"].get<std::string>();
                    if (!t.contains("form") || !t["form"].is_string()) {
                        errs.add(p + ".form", "missing or not a string");
                        continue;
                    }
                    tc.form = t["form"].get<std::string>();
                    if (tc.form == "sqrt") {
                        check_keys(t, p, {"label", "form", "scale", "shift_m", "x_hi_m"}, errs);
                        tc.scale = want_number(t, p, "scale", errs, true);
                        tc.shift = want_number(t, p, "shift_m", errs, false, 0.0);
                        tc.x_hi = want_number(t, p, "x_hi_m", errs, true);
                        if (t.contains("x_hi_m") && t["x_hi_m"].is_number() && tc.x_hi <= tc.shift)
                            errs.add(p + ".x_hi_m", "must exceed shift_m");
                    } else if (tc.form == "poly-x") {
                        check_keys(t, p, {"label", "form", "coeffs", "domain_m"}, errs);
                        tc.coeffs = want_coeffs(t, p, "coeffs", errs);
                        if (auto r = want_range(t, p, "domain_m", errs)) {
                            tc.d_lo = r->first;
                            tc.d_hi = r->second;
                        } else if (!t.contains("domain_m")) {
                            errs.add(p + ".domain_m", "missing");
                        }
                    } else if (tc.form == "poly-z") {
                        check_keys(t, p, {"label", "form", "coeffs", "z_domain_m"}, errs);
                        tc.coeffs = want_coeffs(t, p, "coeffs", errs);
                        if (auto r = want_range(t, p, "z_domain_m", errs)) {
                            tc.d_lo = r->first;
                            tc.d_hi = r->second;
                        } else if (!t.contains("z_domain_m")) {
                            errs.add(p + ".z_domain_m", "missing");
                        }
                    } else {
                        errs.add(p + ".form", "must be sqrt, poly-x, or poly-z");
                        continue;
                    }
                    cfg.trajectories.push_back(std::move(tc));
                }
            }
        }
        if (cfg.components.empty() && cfg.trajectories.empty())
            errs.add("beam", "needs airy components or explicit trajectories");
    }

    // reflector
    if (!j.contains("reflector") || !j["reflector"].is_object()) {
        errs.add("reflector", "missing or not an object");
    } else {
        const auto& r = j["reflector"];
        std::string kind = r.contains("kind") && r["kind"].is_string()
                               ? r["kind"].get<std::string>()
                               : std::string();
        if (kind == "plane") {
            check_keys(r, "reflector", {"kind", "slope", "intercept_m", "x_extent_m"}, errs);
            PlanarSegment s;
            s.slope = want_number(r, "reflector", "slope", errs, true);
            s.intercept = want_number(r, "reflector", "intercept_m", errs, true);
            s.x_extent = want_range(r, "reflector", "x_extent_m", errs);
            cfg.profile = s;
        } else if (kind == "circle") {
            check_keys(r, "reflector", {"kind", "center_m", "radius_m"}, errs);
            CircularArc c;
            if (auto ctr = detail::want_pair(r, "reflector", "center_m", errs, true))
                c.center = {ctr->first, ctr->second};
            c.radius = want_number(r, "reflector", "radius_m", errs, true);
            if (r.contains("radius_m") && r["radius_m"].is_number() && c.radius <= 0.0)
                errs.add("reflector.radius_m", "must be positive");
            cfg.profile = c;
        } else if (kind == "sampled") {
            check_keys(r, "reflector", {"kind", "csv", "xs_m", "zs_m"}, errs);
            if (r.contains("csv")) {
                if (!r["csv"].is_string()) {
                    errs.add("reflector.csv", "must be a string path");
                } else {
                    try {
                        cfg.profile = load_profile_csv(r["csv"].get<std::string>());
                    } catch (const std::invalid_argument& e) {
                        errs.add("reflector.csv", e.what());
                    }
                    // io_error propagates: a missing file is an I/O problem,
                    // not a config one.
                }
            } else {
                SampledProfile s;
                s.xs = want_coeffs(r, "reflector", "xs_m", errs);
                s.zs = want_coeffs(r, "reflector", "zs_m", errs);
                if (s.xs.size() != s.zs.size() || s.xs.size() < 2)
                    errs.add("reflector.xs_m", "xs_m/zs_m must match with at least 2 samples");
                else {
                    for (std::size_t i = 0; i + 1 < s.xs.size(); ++i)
                        if (!(s.xs[i + 1] > s.xs[i])) {
                            errs.add("reflector.xs_m", "must be strictly increasing");
                            break;
                        }
                    cfg.profile = s;
                }
            }
        } else {
            errs.add("reflector.kind", "must be plane, circle, or sampled");
        }
    }

    // run
    if (j.contains("run")) {
        const auto& r = j["run"];
        if (!r.is_object()) {
            errs.add("run", "must be an object");
        } else {
            check_keys(r, "run", {"tangents", "fit_degree", "spacing", "thresholds"}, errs);
            if (r.contains("tangents")) {
                if (!r["tangents"].is_number_integer())
                    errs.add("run.tangents", "must be an integer");
                else
                    cfg.tangents = r["tangents"].get<int>();
                if (cfg.tangents < 2) errs.add("run.tangents", "must be at least 2");
            }
            if (r.contains("fit_degree")) {
                if (!r["fit_degree"].is_number_integer())
                    errs.add("run.fit_degree", "must be an integer");
                else
                    cfg.fit_degree = r["fit_degree"].get<int>();
                if (cfg.fit_degree < 1 || cfg.fit_degree > 6)
                    errs.add("run.fit_degree", "must be 1..6");
            }
            if (r.contains("spacing")) {
                std::string s =
                    r["spacing"].is_string() ? r["spacing"].get<std::string>() : std::string();
                if (s == "equal-contact")
                    cfg.spacing = Spacing::equal_contact;
                else if (s == "equal-slope")
                    cfg.spacing = Spacing::equal_slope;
                else
                    errs.add("run.spacing", "must be equal-contact or equal-slope");
            }
            if (r.contains("thresholds")) {
                const auto& t = r["thresholds"];
                if (!t.is_object()) {
                    errs.add("run.thresholds", "must be an object");
                } else {
                    check_keys(t, "run.thresholds",
                               {"min_points", "min_r2", "min_quadratic_coeff", "require_monotone",
                                "require_edge_capture"},
                               errs);
                    auto& th = cfg.thresholds;
                    if (t.contains("min_points")) {
                        if (!t["min_points"].is_number_integer())
                            errs.add("run.thresholds.min_points", "must be an integer");
                        else
                            th.min_points = t["min_points"].get<int>();
                        if (th.min_points < 3)
                            errs.add("run.thresholds.min_points", "must be at least 3");
                    }
                    th.min_r2 = want_number(t, "run.thresholds", "min_r2", errs, false, th.min_r2);
                    th.min_quadratic_coeff = want_number(t, "run.thresholds", "min_quadratic_coeff",
                                                         errs, false, th.min_quadratic_coeff);
                    if (t.contains("require_monotone")) {
                        if (!t["require_monotone"].is_boolean())
                            errs.add("run.thresholds.require_monotone", "must be a boolean");
                        else
                            th.require_monotone = t["require_monotone"].get<bool>();
                    }
                    if (t.contains("require_edge_capture")) {
                        if (!t["require_edge_capture"].is_boolean())
                            errs.add("run.thresholds.require_edge_capture", "must be a boolean");
                        else
                            th.require_edge_capture = t["require_edge_capture"].get<bool>();
                    }
                }
            }
        }
    }

    // references
    if (j.contains("references")) {
        if (!j["references"].is_array()) {
            errs.add("references", "must be an array");
        } else {
            int idx = 0;
            for (const auto& r : j["references"]) {
                std::string p = "references[" + std::to_string(idx++) + "]";
                if (!r.is_object()) {
                    errs.add(p, "must be an object");
                    continue;
                }
                check_keys(r, p, {"label", "coeffs", "domain_m"}, errs);
                ReferenceCurve rc;
                if (!r.contains("label") || !r["label"].is_string())
                    errs.add(p + ".label", "missing or not a string");
                else
                    rc.label = r["label"].get<std::string>();
                rc.coeffs = want_coeffs(r, p, "coeffs", errs);
                rc.domain = want_range(r, p, "domain_m", errs);
                cfg.references.push_back(std::move(rc));
            }
        }
    }

    // comparison
    if (j.contains("comparison")) {
        const auto& c = j["comparison"];
        if (!c.is_object()) {
            errs.add("comparison", "must be an object");
        } else {
            check_keys(c, "comparison", {"domain_m", "samples"}, errs);
            cfg.comparison_domain = want_range(c, "comparison", "domain_m", errs);
            if (c.contains("samples")) {
                if (!c["samples"].is_number_integer())
                    errs.add("comparison.samples", "must be an integer");
                else
                    cfg.comparison_samples = c["samples"].get<int>();
                if (cfg.comparison_samples < 2)
                    errs.add("comparison.samples", "must be at least 2");
            }
        }
    }

    // svg
    if (j.contains("svg")) {
        const auto& s = j["svg"];
        if (!s.is_object()) {
            errs.add("svg", "must be an object");
        } else {
            check_keys(s, "svg", {"scale_px_per_m", "tangents"}, errs);
            cfg.svg.scale_px_per_m =
                want_number(s, "svg", "scale_px_per_m", errs, false, cfg.svg.scale_px_per_m);
            if (cfg.svg.scale_px_per_m <= 0.0)
                errs.add("svg.scale_px_per_m", "must be positive");
            if (s.contains("tangents")) {
                if (!s["tangents"].is_boolean())
                    errs.add("svg.tangents", "must be a boolean");
                else
                    cfg.svg.tangents = s["tangents"].get<bool>();
            }
        }
    }

    errs.raise_if_any();
    return cfg;
}

// Materializes the trajectory list. Construction failures surface as config
// errors tagged with the trajectory's position.
inline Scenario build_scenario(const ScenarioConfig& cfg) {
    Scenario sc;
    sc.aperture = cfg.aperture;
    sc.profile = cfg.profile;
    sc.tangent_count = cfg.tangents;
    sc.fit_degree = cfg.fit_degree;
    sc.spacing = cfg.spacing;
    sc.thresholds = cfg.thresholds;

    detail::FieldErrors errs;
    int idx = 0;
    for (const auto& comp : cfg.components) {
        std::string p = "beam.airy.components[" + std::to_string(idx++) + "]";
        if (!cfg.airy) {
            errs.add(p, "airy block missing");
            continue;
        }
        try {
            if (comp.part == "origin-peak") {
                sc.beam.push_back(airy_peak_trajectory(
                    *cfg.airy, comp.label.empty() ? "origin-peak" : comp.label));
            } else if (comp.part == "peak") {
                auto t = airy_lobe_peak_trajectory(*cfg.airy, comp.lobe);
                if (!comp.label.empty()) t = t.translated_x(0.0, comp.label);
                sc.beam.push_back(std::move(t));
            } else {
                auto peak = airy_lobe_peak_trajectory(*cfg.airy, comp.lobe);
                auto [left, right] = lobe_edges(peak, cfg.airy->x0);
                sc.beam.push_back(std::move(left));
                sc.beam.push_back(std::move(right));
            }
        } catch (const std::invalid_argument& e) {
            errs.add(p, e.what());
        }
    }
    idx = 0;
    for (const auto& t : cfg.trajectories) {
        std::string p = "beam.trajectories[" + std::to_string(idx++) + "]";
        try {
            if (t.form == "sqrt") {
                sc.beam.emplace_back(SqrtForm{t.scale, t.shift}, t.x_hi, t.label);
            } else if (t.form == "poly-x") {
                sc.beam.emplace_back(PolyZofX{PolyCurve{t.coeffs, t.d_lo, t.d_hi}}, t.label);
            } else {
                sc.beam.emplace_back(PolyXofZ{t.coeffs, t.d_lo, t.d_hi}, t.label);
            }
        } catch (const std::invalid_argument& e) {
            errs.add(p, e.what());
        }
    }

    // Duplicate labels would make report entries ambiguous.
    for (std::size_t i = 0; i < sc.beam.size(); ++i)
        for (std::size_t k = i + 1; k < sc.beam.size(); ++k)
            if (sc.beam[i].label() == sc.beam[k].label())
                errs.add("beam", "duplicate trajectory label \"" + sc.beam[i].label() + "\"");

    errs.raise_if_any();
    return sc;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

inline ScenarioConfig load_scenario_file(const std::string& path) {
    return parse_scenario_config(read_json_file(path));
}

}  // namespace curvebeam
