#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "curvebeam/errors.hpp"
#include "curvebeam/geometry.hpp"

namespace curvebeam {

// z = sum coeffs[k] * x^k over the closed interval [x_lo, x_hi].
struct PolyCurve {
    std::vector<double> coeffs;  // ascending powers
    double x_lo = 0.0;
    double x_hi = 0.0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline double eval(const PolyCurve& c, double x) {
    double acc = 0.0;
    for (auto it = c.coeffs.rbegin(); it != c.coeffs.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

inline PolyCurve derivative(const PolyCurve& c) {
    PolyCurve d{{}, c.x_lo, c.x_hi};
    for (std::size_t k = 1; k < c.coeffs.size(); ++k)
        d.coeffs.push_back(c.coeffs[k] * static_cast<double>(k));
    if (d.coeffs.empty()) d.coeffs.push_back(0.0);
    return d;
}

namespace detail {

// Solves A b = y in place by Gaussian elimination with partial pivoting.
// A is n x n row-major. Throws numeric_error on a vanishing pivot.
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> y) {
    const std::size_t n = y.size();
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw numeric_error("linear solve: zero matrix");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-13 * scale)
            throw numeric_error("linear solve: singular system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(y[col], y[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            y[r] -= f * y[col];
        }
    }
    std::vector<double> b(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = y[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * b[c];
        b[r] = acc / a[r * n + r];
    }
    return b;
}

// (p * q) as coefficient vectors, ascending powers.
inline std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> out(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
}

}  // namespace detail

// Least-squares polynomial fit of z against x via normal equations. The
// x-values are mapped to [-1, 1] first so the system stays well conditioned
// for the short spans (millimeters) this library works with.
inline PolyCurve fit_polynomial(const std::vector<Point2>& pts, int degree) {
    if (degree < 0) throw std::invalid_argument("fit_polynomial: negative degree");
    const int m = degree + 1;
    if (static_cast<int>(pts.size()) < m)
        throw std::invalid_argument("fit_polynomial: need at least degree+1 points");

    double lo = pts.front().x, hi = pts.front().x;
    for (const auto& p : pts) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
    }
    if (degree >= 1 && !(hi - lo > 0.0))
        throw numeric_error("fit_polynomial: x-values coincide");

    // u = alpha*x + beta maps [lo, hi] onto [-1, 1].
    const double alpha = degree >= 1 ? 2.0 / (hi - lo) : 1.0;
    const double beta = degree >= 1 ? -(hi + lo) / (hi - lo) : 0.0;

    std::vector<double> ata(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> atz(m, 0.0);
    std::vector<double> pw(m);
    for (const auto& p : pts) {
        double u = alpha * p.x + beta;
        pw[0] = 1.0;
        for (int k = 1; k < m; ++k) pw[k] = pw[k - 1] * u;
        for (int r = 0; r < m; ++r) {
            atz[r] += pw[r] * p.z;
            for (int c = 0; c < m; ++c) ata[static_cast<std::size_t>(r) * m + c] += pw[r] * pw[c];
        }
    }
    std::vector<double> b;
    try {
        b = detail::solve_dense(std::move(ata), std::move(atz));
    } catch (const numeric_error&) {
        throw numeric_error("fit_polynomial: degenerate fit (too few distinct x-values)");
    }

    // Expand sum b_k (alpha*x + beta)^k back to plain powers of x.
    std::vector<double> coeffs(m, 0.0);
    std::vector<double> base{beta, alpha};
    std::vector<double> upow{1.0};
    for (int k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < upow.size(); ++i) coeffs[i] += b[k] * upow[i];
        if (k + 1 < m) upow = detail::poly_mul(upow, base);
    }
    return PolyCurve{std::move(coeffs), lo, hi};
}

// Coefficient of determination of fit against the points it was fit to.
inline double r_squared(const PolyCurve& fit, const std::vector<Point2>& pts) {
    if (pts.empty()) throw std::invalid_argument("r_squared: no points");
    double mean = 0.0;
    for (const auto& p : pts) mean += p.z;
    mean /= static_cast<double>(pts.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& p : pts) {
        double r = p.z - eval(fit, p.x);
        ss_res += r * r;
        double d = p.z - mean;
        ss_tot += d * d;
    }
    if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

inline double residual_rms(const PolyCurve& fit, const std::vector<Point2>& pts) {
    if (pts.empty()) throw std::invalid_argument("residual_rms: no points");
    double ss = 0.0;
    for (const auto& p : pts) {
        double r = p.z - eval(fit, p.x);
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(pts.size()));
}

}  // namespace curvebeam
