#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "curvebeam/airy.hpp"
#include "curvebeam/errors.hpp"
#include "curvebeam/geometry.hpp"
#include "curvebeam/polycurve.hpp"
#include "curvebeam/trajectory.hpp"

namespace curvebeam {

// Dimensionless coordinates: xi = z / (k x0^2) along propagation, s = x / x0
// across it.
struct NormalizedCoords {
    double xi = 0.0;
    double s = 0.0;
};

inline NormalizedCoords normalize_coords(Point2 p, const BeamSpec& spec) {
    if (!(spec.x0 > 0.0)) throw std::invalid_argument("normalize_coords: x0 must be positive");
    double k = wavenumber(spec.frequency);
    return {p.z / (k * spec.x0 * spec.x0), p.x / spec.x0};
}

// Finite-power curving envelope: an Airy profile with exponential truncation
// a, evolved along xi.
inline std::complex<double> airy_field(NormalizedCoords c, double a) {
    if (!(a >= 0.0 && a < 1.0))
        throw std::invalid_argument("airy_field: truncation must lie in [0, 1)");
    std::complex<double> i(0.0, 1.0);
    std::complex<double> w(c.s - 0.25 * c.xi * c.xi, a * c.xi);
    std::complex<double> phase =
        a * c.s - 0.5 * a * c.xi * c.xi +
        i * (-c.xi * c.xi * c.xi / 12.0 + 0.5 * a * a * c.xi + 0.5 * c.s * c.xi);
    return airy_ai(w) * std::exp(phase);
}

struct FieldGrid {
    enum class Provenance { rendered, measured };
    std::vector<double> xs;  // strictly increasing, uniform
    std::vector<double> zs;
    std::vector<double> magnitude;  // row-major, index iz * xs.size() + ix
    Provenance provenance = Provenance::rendered;

    double at(std::size_t ix, std::size_t iz) const { return magnitude[iz * xs.size() + ix]; }
};

inline std::vector<double> uniform_axis(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("uniform_axis: bad range");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1.0);
    return v;
}

inline FieldGrid render_field_grid(const BeamSpec& spec, std::vector<double> xs,
                                   std::vector<double> zs) {
    if (xs.size() < 2 || zs.size() < 2)
        throw std::invalid_argument("render_field_grid: need at least a 2x2 grid");
    FieldGrid g;
    g.xs = std::move(xs);
    g.zs = std::move(zs);
    g.magnitude.resize(g.xs.size() * g.zs.size());
    for (std::size_t iz = 0; iz < g.zs.size(); ++iz)
        for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
            auto c = normalize_coords({g.xs[ix], g.zs[iz]}, spec);
            g.magnitude[iz * g.xs.size() + ix] = std::abs(airy_field(c, spec.truncation));
        }
    g.provenance = FieldGrid::Provenance::rendered;
    return g;
}

struct RidgeResult {
    std::vector<Point2> points;  // one (x_peak, z) per usable z row
    int skipped_rows = 0;        // rows with a flat magnitude profile
};

// Intensity ridge: per z row, the x of maximum magnitude refined by a
// three-point parabola through the peak and its neighbors.
inline RidgeResult extract_ridge(const FieldGrid& g,
                                 std::optional<std::pair<double, double>> x_band = {}) {
    std::size_t lo = 0, hi = g.xs.size() - 1;
    if (x_band) {
        if (!(x_band->second > x_band->first))
            throw std::invalid_argument("extract_ridge: empty x band");
        while (lo < g.xs.size() && g.xs[lo] < x_band->first) ++lo;
        while (hi > 0 && g.xs[hi] > x_band->second) --hi;
        if (lo >= hi) throw std::invalid_argument("extract_ridge: x band misses the grid");
    }
    RidgeResult out;
    out.points.reserve(g.zs.size());
    for (std::size_t iz = 0; iz < g.zs.size(); ++iz) {
        std::size_t best = lo;
        double vmin = g.at(lo, iz), vmax = vmin;
        for (std::size_t ix = lo; ix <= hi; ++ix) {
            double v = g.at(ix, iz);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
            if (v > g.at(best, iz)) best = ix;
        }
        if (!(vmax > vmin)) {
            ++out.skipped_rows;
            continue;
        }
        double x = g.xs[best];
        if (best > lo && best < hi) {
            double y0 = g.at(best - 1, iz), y1 = g.at(best, iz), y2 = g.at(best + 1, iz);
            double den = y0 - 2.0 * y1 + y2;
            if (den < 0.0) {
                double off = 0.5 * (y0 - y2) / den;
                off = std::clamp(off, -0.5, 0.5);
                x += off * (g.xs[best + 1] - g.xs[best]);
            }
        }
        out.points.push_back({x, g.zs[iz]});
    }
    return out;
}

enum class RidgeFrame { x_of_z, z_of_x };

// Polynomial through the ridge. Beams launched along z want x as a function
// of z (the default); scans where the beam runs across x want the other frame.
inline PolyCurve fit_ridge(const std::vector<Point2>& pts, int degree = 2,
                           RidgeFrame frame = RidgeFrame::x_of_z) {
    if (frame == RidgeFrame::z_of_x) return fit_polynomial(pts, degree);
    std::vector<Point2> swapped;
    swapped.reserve(pts.size());
    for (const auto& p : pts) swapped.push_back({p.z, p.x});
    return fit_polynomial(swapped, degree);  // coefficients read over z
}

namespace detail {

inline std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw io_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw io_error("cannot move " + tmp + " into place");
}

}  // namespace detail

inline std::string field_csv_text(const FieldGrid& g) {
    std::string out = "x_m,z_m,magnitude\n";
    for (std::size_t iz = 0; iz < g.zs.size(); ++iz)
        for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
            out += detail::format_g17(g.xs[ix]);
            out += ',';
            out += detail::format_g17(g.zs[iz]);
            out += ',';
            out += detail::format_g17(g.at(ix, iz));
            out += '\n';
        }
    return out;
}

inline void write_field_csv(const FieldGrid& g, const std::string& path) {
    detail::write_file_atomic(path, field_csv_text(g));
}

// Loads a magnitude grid from CSV. Columns may come in any order per the
// header; rows may come in any order. The reassembled axes must be uniform
// and every (x, z) cell filled exactly once.
inline FieldGrid load_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open field CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> cols;
    {
        std::istringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    int cx = -1, cz = -1, cm = -1;
    for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
        if (cols[i] == "x_m") cx = i;
        else if (cols[i] == "z_m") cz = i;
        else if (cols[i] == "magnitude") cm = i;
    }
    if (cx < 0 || cz < 0 || cm < 0 || cols.size() != 3)
        throw io_error(path + ": header must contain exactly x_m,z_m,magnitude");

    struct Row {
        double x, z, m;
        int line;
    };
    std::vector<Row> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string f[3];
        if (!std::getline(ss, f[0], ',') || !std::getline(ss, f[1], ',') || !std::getline(ss, f[2]))
            throw io_error(path + ": line " + std::to_string(lineno) + ": expected three columns");
        double v[3];
        for (int i = 0; i < 3; ++i) {
            std::size_t used = 0;
            try {
                v[i] = std::stod(f[i], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != f[i].size() || f[i].empty())
                throw io_error(path + ": line " + std::to_string(lineno) + ": non-numeric value \"" +
                               f[i] + "\"");
        }
        rows.push_back({v[cx], v[cz], v[cm], lineno});
    }
    if (rows.empty()) throw io_error(path + ": no data rows");

    // Reassemble the axes; coordinates repeat exactly across the grid, so
    // bitwise uniqueness is the right notion here.
    std::map<double, int> xline, zline;
    for (const auto& r : rows) {
        xline.emplace(r.x, r.line);
        zline.emplace(r.z, r.line);
    }
    FieldGrid g;
    for (const auto& [x, ln] : xline) g.xs.push_back(x);
    for (const auto& [z, ln] : zline) g.zs.push_back(z);

    auto check_uniform = [&](const std::vector<double>& axis, const std::map<double, int>& firsts,
                             const char* name) {
        if (axis.size() < 2) return;
        double d0 = axis[1] - axis[0];
        for (std::size_t i = 1; i + 1 < axis.size(); ++i) {
            double d = axis[i + 1] - axis[i];
            if (std::abs(d - d0) > 1e-9 * std::max(1.0, std::abs(d0))) {
                int ln = firsts.at(axis[i + 1]);
                throw io_error(path + ": irregular " + name + " spacing at value " +
                               detail::format_g17(axis[i + 1]) + " (first seen on line " +
                               std::to_string(ln) + ")");
            }
        }
    };
    check_uniform(g.xs, xline, "x");
    check_uniform(g.zs, zline, "z");

    std::map<double, std::size_t> xi, zi;
    for (std::size_t i = 0; i < g.xs.size(); ++i) xi[g.xs[i]] = i;
    for (std::size_t i = 0; i < g.zs.size(); ++i) zi[g.zs[i]] = i;
    g.magnitude.assign(g.xs.size() * g.zs.size(), 0.0);
    std::vector<int> seen(g.magnitude.size(), 0);
    for (const auto& r : rows) {
        std::size_t idx = zi[r.z] * g.xs.size() + xi[r.x];
        if (seen[idx]++)
            throw io_error(path + ": line " + std::to_string(r.line) +
                           ": duplicate coordinates (x=" + detail::format_g17(r.x) +
                           ", z=" + detail::format_g17(r.z) + ")");
        g.magnitude[idx] = r.m;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw io_error(path + ": grid is missing cells (got " +
                                     std::to_string(rows.size()) + " rows for a " +
                                     std::to_string(g.xs.size()) + "x" +
                                     std::to_string(g.zs.size()) + " grid)");
    g.provenance = FieldGrid::Provenance::measured;
    return g;
}

}  // namespace curvebeam
