// Command-line front end for the curving-beam reflection engine.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvebeam/curvebeam.hpp"

namespace cb = curvebeam;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;
constexpr int exit_io = 4;

struct PredictArgs {
    std::string config_path;
    std::string preset_name;
    std::string out_dir = ".";
    bool svg = true;
    int tangents = 0;  // 0 keeps the scenario's own count
    std::string format = "json";
    unsigned seed = 0;  // reserved for future stochastic features
};

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw cb::io_error("cannot create output directory " + dir + ": " + ec.message());
}

int run_prediction(const PredictArgs& args, const nlohmann::json& config_json) {
    auto cfg = cb::parse_scenario_config(config_json);
    if (args.tangents > 0) cfg.tangents = args.tangents;
    if (args.format != "json")
        throw cb::config_error("unsupported --format \"" + args.format + "\" (only json)");

    auto run = cb::run_scenario(cfg);
    ensure_out_dir(args.out_dir);
    std::string report_path = (fs::path(args.out_dir) / "report.json").string();
    cb::write_report(run.report, report_path);
    if (args.svg) cb::write_svg(run.svg, (fs::path(args.out_dir) / "scene.svg").string());

    for (const auto& p : run.predictions) {
        std::cout << p.label << ": "
                  << (p.kind == cb::Prediction::Kind::curving ? "curving" : "directional");
        if (p.error)
            std::cout << " (error: " << *p.error << ")";
        else if (p.kind == cb::Prediction::Kind::curving && p.envelope) {
            std::cout << " envelope";
            for (double c : p.envelope->coeffs) {
                char buf[32];
                std::snprintf(buf, sizeof buf, " %.6g", c);
                std::cout << buf;
            }
        } else {
            std::cout << " (" << p.reason << ")";
        }
        std::cout << '\n';
    }
    std::cout << "report: " << report_path << '\n';
    return exit_ok;
}

std::pair<double, double> parse_span(const std::string& s, const char* what) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw cb::config_error(std::string(what) + " must look like lo:hi");
    try {
        std::size_t used = 0;
        double lo = std::stod(s.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        std::string rest = s.substr(colon + 1);
        double hi = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
        if (!(hi > lo)) throw std::invalid_argument("");
        return {lo, hi};
    } catch (const std::exception&) {
        throw cb::config_error(std::string(what) + " must look like lo:hi with hi > lo");
    }
}

std::vector<double> parse_coeff_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cur, &used));
            if (used != cur.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw cb::config_error(std::string(what) + ": bad number \"" + cur + "\"");
        }
    }
    if (out.empty()) throw cb::config_error(std::string(what) + ": empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curving-beam reflection prediction engine"};
    app.require_subcommand(1);

    // predict
    PredictArgs pa;
    auto* predict = app.add_subcommand("predict", "Run a scenario from a JSON config");
    predict->add_option("--config", pa.config_path, "Scenario config JSON")->required();
    predict->add_option("--out", pa.out_dir, "Output directory");
    predict->add_flag("--svg,!--no-svg", pa.svg, "Write scene.svg next to the report");
    predict->add_option("--tangents", pa.tangents, "Override the tangent count");
    predict->add_option("--format", pa.format, "Report format (json)");
    predict->add_option("--seed", pa.seed, "Reserved; accepted for forward compatibility");

    // presets
    auto* presets_cmd = app.add_subcommand("presets", "List or run canned scenarios");
    presets_cmd->require_subcommand(1);
    auto* presets_list = presets_cmd->add_subcommand("list", "List preset names");
    PredictArgs pr;
    bool pr_all = false;
    auto* presets_run = presets_cmd->add_subcommand("run", "Run one preset, or all of them");
    presets_run->add_option("name", pr.preset_name, "Preset name");
    presets_run->add_flag("--all", pr_all, "Run every preset into <out>/<name>/");
    presets_run->add_option("--out", pr.out_dir, "Output directory");
    presets_run->add_flag("--svg,!--no-svg", pr.svg, "Write scene.svg next to the report");
    presets_run->add_option("--tangents", pr.tangents, "Override the tangent count");
    presets_run->add_option("--seed", pr.seed, "Reserved; accepted for forward compatibility");

    // render-field
    struct {
        double frequency_ghz = 150.0;
        double x0_mm = 3.6;
        double truncation = 0.1;
        std::string x_span_mm = "-20:20";
        std::string z_span_mm = "0:150";
        double step_mm = 2.0;
        std::string out_path = "field.csv";
    } rf;
    auto* render = app.add_subcommand("render-field", "Render a beam magnitude grid to CSV");
    render->add_option("--frequency-ghz", rf.frequency_ghz, "Carrier frequency, GHz");
    render->add_option("--x0-mm", rf.x0_mm, "Transverse scale, mm");
    render->add_option("--truncation", rf.truncation, "Exponential truncation in [0,1)");
    render->add_option("--x-span-mm", rf.x_span_mm, "Transverse span lo:hi, mm");
    render->add_option("--z-span-mm", rf.z_span_mm, "Propagation span lo:hi, mm");
    render->add_option("--step-mm", rf.step_mm, "Grid step, mm");
    render->add_option("--out", rf.out_path, "Output CSV path");

    // ridge
    struct {
        std::string in_path;
        int degree = 2;
        std::string frame = "x-of-z";
        std::string x_band_mm;
        std::string out_path;
    } rg;
    auto* ridge = app.add_subcommand("ridge", "Extract and fit the intensity ridge of a grid");
    ridge->add_option("--in", rg.in_path, "Field CSV (x_m,z_m,magnitude)")->required();
    ridge->add_option("--degree", rg.degree, "Fit degree");
    ridge->add_option("--frame", rg.frame, "x-of-z (beam along z) or z-of-x");
    ridge->add_option("--x-band-mm", rg.x_band_mm, "Restrict the peak search to lo:hi, mm");
    ridge->add_option("--out", rg.out_path, "Write the fit JSON here instead of stdout");

    // compare
    struct {
        std::string pred, ref, domain;
        int samples = 256;
    } cm;
    auto* compare = app.add_subcommand("compare", "RMSE / max deviation between two polynomials");
    compare->add_option("--pred", cm.pred, "Prediction coeffs a0,a1,... (meters)")->required();
    compare->add_option("--ref", cm.ref, "Reference coeffs b0,b1,... (meters)")->required();
    compare->add_option("--domain", cm.domain, "Comparison span lo:hi, meters")->required();
    compare->add_option("--samples", cm.samples, "Sample count");

    // plate
    struct {
        std::string config_path;
        std::string out_dir = ".";
        int samples = 129;
        double wavelength_mm = 2.0;
        double index = 1.6;
    } pl;
    auto* plate = app.add_subcommand("plate", "Phase-plate profile for the first beam trajectory");
    plate->add_option("--config", pl.config_path, "Scenario config JSON")->required();
    plate->add_option("--out", pl.out_dir, "Output directory");
    plate->add_option("--samples", pl.samples, "Aperture sample count");
    plate->add_option("--wavelength-mm", pl.wavelength_mm, "Design wavelength, mm");
    plate->add_option("--index", pl.index, "Refractive index of the plate material");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (predict->parsed()) return run_prediction(pa, cb::read_json_file(pa.config_path));
        if (presets_list->parsed()) {
            for (const auto& p : cb::presets())
                std::cout << p.name << "  -  " << p.summary << '\n';
            return exit_ok;
        }
        if (presets_run->parsed()) {
            if (pr_all && !pr.preset_name.empty())
                throw cb::config_error("presets run: give a name or --all, not both");
            if (pr_all) {
                for (const auto& p : cb::presets()) {
                    PredictArgs each = pr;
                    each.out_dir = (fs::path(pr.out_dir) / p.name).string();
                    std::cout << "== " << p.name << '\n';
                    run_prediction(each, p.config);
                }
                return exit_ok;
            }
            if (pr.preset_name.empty())
                throw cb::config_error("presets run: preset name required (or --all)");
            return run_prediction(pr, cb::find_preset(pr.preset_name).config);
        }

        if (render->parsed()) {
            auto xs = parse_span(rf.x_span_mm, "--x-span-mm");
            auto zs = parse_span(rf.z_span_mm, "--z-span-mm");
            if (!(rf.step_mm > 0.0)) throw cb::config_error("--step-mm must be positive");
            cb::BeamSpec spec;
            spec.frequency = rf.frequency_ghz * 1e9;
            spec.x0 = rf.x0_mm * 1e-3;
            spec.truncation = rf.truncation;
            auto axis = [&](std::pair<double, double> span) {
                int n = static_cast<int>(std::floor((span.second - span.first) / rf.step_mm + 1.5));
                return cb::uniform_axis(span.first * 1e-3,
                                        (span.first + rf.step_mm * (n - 1)) * 1e-3, n);
            };
            auto grid = cb::render_field_grid(spec, axis(xs), axis(zs));
            cb::write_field_csv(grid, rf.out_path);
            std::cout << "wrote " << grid.xs.size() << "x" << grid.zs.size() << " grid to "
                      << rf.out_path << '\n';
            return exit_ok;
        }

        if (ridge->parsed()) {
            auto grid = cb::load_field_csv(rg.in_path);
            std::optional<std::pair<double, double>> band;
            if (!rg.x_band_mm.empty()) {
                auto b = parse_span(rg.x_band_mm, "--x-band-mm");
                band = std::make_pair(b.first * 1e-3, b.second * 1e-3);
            }
            cb::RidgeFrame frame;
            if (rg.frame == "x-of-z")
                frame = cb::RidgeFrame::x_of_z;
            else if (rg.frame == "z-of-x")
                frame = cb::RidgeFrame::z_of_x;
            else
                throw cb::config_error("--frame must be x-of-z or z-of-x");
            auto ridge_pts = cb::extract_ridge(grid, band);
            if (static_cast<int>(ridge_pts.points.size()) < rg.degree + 1)
                throw cb::numeric_error("too few ridge points for the requested degree");
            auto fit = cb::fit_ridge(ridge_pts.points, rg.degree, frame);
            nlohmann::json out = {{"coeffs", fit.coeffs},
                                  {"frame", rg.frame},
                                  {"fit_domain_m", {fit.x_lo, fit.x_hi}},
                                  {"ridge_points", ridge_pts.points.size()},
                                  {"skipped_rows", ridge_pts.skipped_rows}};
            if (rg.out_path.empty())
                std::cout << out.dump(2) << '\n';
            else
                cb::detail::write_file_atomic(rg.out_path, out.dump(2) + "\n");
            return exit_ok;
        }

        if (compare->parsed()) {
            auto dom = parse_span(cm.domain, "--domain");
            cb::ComparisonDomain cd{dom.first, dom.second, cm.samples};
            cb::PolyCurve a{parse_coeff_list(cm.pred, "--pred"), dom.first, dom.second};
            cb::PolyCurve b{parse_coeff_list(cm.ref, "--ref"), dom.first, dom.second};
            nlohmann::json out = {{"rmse_m", cb::rmse(b, a, cd)},
                                  {"max_abs_dev_m", cb::max_abs_dev(b, a, cd)},
                                  {"domain_m", {dom.first, dom.second}},
                                  {"samples", cm.samples}};
            std::cout << out.dump(2) << '\n';
            return exit_ok;
        }

        if (plate->parsed()) {
            auto cfg = cb::load_scenario_file(pl.config_path);
            auto sc = cb::build_scenario(cfg);
            if (sc.beam.empty()) throw cb::config_error("config carries no trajectories");
            double freq = cfg.airy ? cfg.airy->frequency
                                   : cb::speed_of_light / (pl.wavelength_mm * 1e-3);
            auto prof = cb::design_phase_profile(sc.beam.front(), sc.aperture, freq, pl.samples);
            auto thick =
                cb::phase_to_thickness(prof.phase, pl.wavelength_mm * 1e-3, pl.index);
            std::string csv = "x_m,phase_rad,sin_theta,thickness_m\n";
            for (std::size_t i = 0; i < prof.xs.size(); ++i) {
                csv += cb::detail::format_g17(prof.xs[i]);
                csv += ',';
                csv += cb::detail::format_g17(prof.phase[i]);
                csv += ',';
                csv += cb::detail::format_g17(prof.sin_theta[i]);
                csv += ',';
                csv += cb::detail::format_g17(thick[i]);
                csv += '\n';
            }
            ensure_out_dir(pl.out_dir);
            std::string path = (fs::path(pl.out_dir) / "plate.csv").string();
            cb::detail::write_file_atomic(path, csv);
            std::cout << "wrote " << prof.xs.size() << " samples to " << path << '\n';
            return exit_ok;
        }

        throw cb::config_error("no subcommand given");
    } catch (const cb::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const cb::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const cb::io_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}
