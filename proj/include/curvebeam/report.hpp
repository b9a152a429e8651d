#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "curvebeam/config.hpp"
#include "curvebeam/field.hpp"
#include "curvebeam/metrics.hpp"
#include "curvebeam/prediction.hpp"
#include "curvebeam/svg.hpp"
#include "curvebeam/version.hpp"

namespace curvebeam {
namespace detail {

inline nlohmann::json point_json(Point2 p) { return nlohmann::json::array({p.x, p.z}); }

inline nlohmann::json dir_json(Direction2 d) { return nlohmann::json::array({d.dx, d.dz}); }

inline nlohmann::json poly_json(const PolyCurve& c) {
    return {{"coeffs", c.coeffs}, {"domain_m", {c.x_lo, c.x_hi}}};
}

inline nlohmann::json prediction_json(const Prediction& p, bool domain_exhausted) {
    nlohmann::json out;
    out["label"] = p.label;
    out["verdict"] = p.kind == Prediction::Kind::curving ? "curving" : "directional";
    out["reason"] = p.reason;
    if (p.error) out["error"] = *p.error;
    if (p.envelope) out["envelope"] = poly_json(*p.envelope);
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& q : p.points) pts.push_back(point_json(q));
    out["forward_points_m"] = std::move(pts);
    if (p.directional) {
        const auto& d = *p.directional;
        nlohmann::json widths = nlohmann::json::array();
        for (double dist : {0.0, 0.05, 0.1, 0.2}) {
            try {
                widths.push_back({{"distance_m", dist}, {"width_m", width_at_distance(d, dist)}});
            } catch (const numeric_error&) {
                // An edge ray running across the mean direction has no width
                // sample at this distance; skip the entry.
            }
        }
        out["directional"] = {{"mean_direction", dir_json(d.mean_dir)},
                              {"edge_hits_m",
                               {point_json(d.first_edge.hit.point),
                                point_json(d.last_edge.hit.point)}},
                              {"edge_directions",
                               {dir_json(d.first_edge.dir), dir_json(d.last_edge.dir)}},
                              {"edge_angle_rad", edge_ray_angle(d)},
                              {"width_samples", std::move(widths)}};
    }
    out["diagnostics"] = {{"survivors", p.diag.survivors},
                          {"dropped", p.diag.dropped},
                          {"forward_points", p.diag.forward_points},
                          {"r2", p.diag.r2},
                          {"quadratic_coeff", p.diag.quadratic_coeff},
                          {"scatter_rms_m", p.diag.scatter_rms},
                          {"head_captured", p.diag.head_captured},
                          {"tail_captured", p.diag.tail_captured},
                          {"domain_exhausted", domain_exhausted}};
    return out;
}

}  // namespace detail

struct ScenarioRun {
    Scenario scenario;
    std::vector<TangentFamily> families;  // aligned with scenario.beam
    std::vector<Prediction> predictions;
    nlohmann::json report;
    std::string svg;
};

// Executes the pipeline per trajectory, keeping the tangent families around
// for rendering, and assembles the report. One trajectory's failure lands in
// its own entry without blocking the rest.
inline ScenarioRun run_scenario(const ScenarioConfig& cfg) {
    ScenarioRun run;
    run.scenario = build_scenario(cfg);
    const Scenario& sc = run.scenario;

    for (const auto& traj : sc.beam) {
        TangentFamily fam;
        Prediction pred;
        pred.label = traj.label();
        try {
            fam = decompose(traj, sc.aperture, sc.tangent_count, sc.spacing);
            auto rf = reflect_family(fam, sc.profile);
            pred = analyze_reflection(rf, sc.thresholds, sc.fit_degree);
            pred.label = traj.label();
        } catch (const std::exception& e) {
            pred.kind = Prediction::Kind::directional;
            pred.reason = "pipeline error";
            pred.error = e.what();
        }
        run.families.push_back(std::move(fam));
        run.predictions.push_back(std::move(pred));
    }

    nlohmann::json rep;
    rep["schema_version"] = report_schema_version;
    rep["tool_version"] = tool_version;
    rep["scenario"] = cfg.raw;
    rep["thresholds"] = {{"min_points", sc.thresholds.min_points},
                         {"min_r2", sc.thresholds.min_r2},
                         {"min_quadratic_coeff", sc.thresholds.min_quadratic_coeff},
                         {"require_monotone", sc.thresholds.require_monotone},
                         {"require_edge_capture", sc.thresholds.require_edge_capture}};
    rep["run"] = {{"tangents", sc.tangent_count},
                  {"fit_degree", sc.fit_degree},
                  {"spacing", sc.spacing == Spacing::equal_contact ? "equal-contact"
                                                                   : "equal-slope"}};

    nlohmann::json preds = nlohmann::json::array();
    for (std::size_t i = 0; i < run.predictions.size(); ++i)
        preds.push_back(detail::prediction_json(run.predictions[i],
                                                i < run.families.size() &&
                                                    run.families[i].domain_exhausted));
    rep["predictions"] = std::move(preds);

    // Reference comparisons against every curving prediction. The comparison
    // domain prefers the reference's own validity window, then the global
    // comparison block, then the reflected envelope span; nearby domain
    // variants expose how sensitive the numbers are to that choice.
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& pred : run.predictions) {
        if (pred.kind != Prediction::Kind::curving || !pred.envelope) continue;
        for (const auto& ref : cfg.references) {
            PolyCurve refc{ref.coeffs, 0.0, 0.0};
            std::pair<double, double> dom;
            std::string dom_source;
            if (ref.domain) {
                dom = *ref.domain;
                dom_source = "reference";
            } else if (cfg.comparison_domain) {
                dom = *cfg.comparison_domain;
                dom_source = "comparison";
            } else {
                dom = {pred.envelope->x_lo, pred.envelope->x_hi};
                dom_source = "envelope-span";
            }
            nlohmann::json entry;
            entry["prediction"] = pred.label;
            entry["reference"] = ref.label;
            entry["domain_m"] = {dom.first, dom.second};
            entry["domain_source"] = dom_source;
            ComparisonDomain cd{dom.first, dom.second, cfg.comparison_samples};
            entry["rmse_m"] = rmse(refc, *pred.envelope, cd);
            entry["max_abs_dev_m"] = max_abs_dev(refc, *pred.envelope, cd);
            nlohmann::json sens = nlohmann::json::array();
            double c = 0.5 * (dom.first + dom.second);
            double h = 0.5 * (dom.second - dom.first);
            for (double f : {0.8, 1.0, 1.25}) {
                ComparisonDomain vd{c - f * h, c + f * h, cfg.comparison_samples};
                sens.push_back({{"domain_m", {vd.x_lo, vd.x_hi}},
                                {"rmse_m", rmse(refc, *pred.envelope, vd)},
                                {"max_abs_dev_m", max_abs_dev(refc, *pred.envelope, vd)}});
            }
            entry["domain_sensitivity"] = std::move(sens);
            metrics.push_back(std::move(entry));
        }
    }
    rep["metrics"] = std::move(metrics);

    run.report = std::move(rep);
    run.svg = emit_scene_svg(sc, run.families, run.predictions, cfg.svg);
    return run;
}

inline std::string report_text(const nlohmann::json& report) {
    return report.dump(2) + "\n";
}

inline void write_report(const nlohmann::json& report, const std::string& path) {
    detail::write_file_atomic(path, report_text(report));
}

inline void write_svg(const std::string& svg, const std::string& path) {
    detail::write_file_atomic(path, svg);
}

}  // namespace curvebeam
