#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "curvebeam/airy.hpp"
#include "curvebeam/constants.hpp"

using namespace curvebeam;
using cplx = std::complex<double>;

namespace {

struct RefPoint {
    cplx w;
    cplx ai;
};

// Frozen against an independent arbitrary-precision evaluation.
const RefPoint kReference[] = {
    {{0.0, 0.0}, {3.550280538878172187e-01, 0.0}},
    {{1.0, 0.0}, {1.352924163128814139e-01, 0.0}},
    {{-1.0, 0.0}, {5.355608832923520746e-01, 0.0}},
    {{2.5, 0.0}, {1.572592338047049121e-02, 0.0}},
    {{-2.5, 0.0}, {-1.123250676929660880e-01, 0.0}},
    {{-2.33810741045976704, 0.0}, {2.743319340666283034e-17, 0.0}},
    {{5.0, 0.0}, {1.083444281360744222e-04, 0.0}},
    {{-5.0, 0.0}, {3.507610090241143341e-01, 0.0}},
    {{10.0, 0.0}, {1.104753255289868601e-10, 0.0}},
    {{-10.0, 0.0}, {4.024123848644318990e-02, 0.0}},
    {{14.0, 0.0}, {9.920205491192376817e-17, 0.0}},
    {{3.0, 4.0}, {1.455454669094463464e-02, -4.743525151549283364e-02}},
    {{-3.0, 4.0}, {2.077347151607831108e+02, 2.046056300243968735e+02}},
    {{-8.0, 0.5}, {-1.088759795689403648e-01, 6.416334408770590914e-01}},
    {{2.0, -7.0}, {1.910440980870773942e+01, -5.641545108202611347e-01}},
    {{-27.0, 0.74}, {2.785188199373387352e-01, -5.778351991506628593e+00}},
    {{-13.9, 0.63}, {-1.062670809066984967e+00, 1.099611018970318543e+00}},
};

}  // namespace

TEST_CASE("Airy values match the frozen reference table") {
    for (const auto& r : kReference) {
        INFO("w = " << r.w.real() << " + " << r.w.imag() << "i");
        cplx got = airy_ai(r.w);
        double scale = std::max(1.0, std::abs(r.ai));
        CHECK(std::abs(got - r.ai) <= 1e-9 * scale);
        if (std::abs(r.ai) > 1e-14)  // relative accuracy where the value is not near a zero
            CHECK(std::abs(got - r.ai) <= 1e-6 * std::abs(r.ai));
    }
}

TEST_CASE("real-axis overload, known zeros, and conjugate symmetry") {
    CHECK(airy_ai(0.0) == Catch::Approx(airy_ai_at_zero).margin(1e-10));
    for (double z : airy_ai_zeros) CHECK(std::abs(airy_ai(z)) < 5e-9);
    for (double z : airy_dai_zeros) {
        // Lobe peaks of the launch profile: derivative zero, value still sizable.
        double h = 1e-6;
        double d = (airy_ai(z + h) - airy_ai(z - h)) / (2.0 * h);
        CHECK(std::abs(d) < 1e-5);
        CHECK(std::abs(airy_ai(z)) > 0.1);
    }
    const cplx pts[] = {{3.0, 4.0}, {-8.0, 0.5}, {2.0, -7.0}, {1.2, 0.7}};
    for (cplx w : pts) {
        cplx a = airy_ai(std::conj(w));
        cplx b = std::conj(airy_ai(w));
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("Airy function satisfies its defining equation on the real axis") {
    // Second difference with h = 1e-4 against w * Ai(w), normalized by 1 + |Ai|.
    const double h = 1e-4;
    for (int i = 0; i <= 40; ++i) {
        double w = -8.0 + 16.0 * i / 40.0;
        double f0 = airy_ai(w);
        double fp = airy_ai(w + h);
        double fm = airy_ai(w - h);
        double second = (fp - 2.0 * f0 + fm) / (h * h);
        double residual = std::abs(second - w * f0) / (1.0 + std::abs(f0));
        INFO("w = " << w);
        CHECK(residual <= 1e-6);
    }
}

TEST_CASE("arguments beyond the supported disc are rejected") {
    CHECK_THROWS_AS(airy_ai(cplx{41.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(airy_ai(cplx{0.0, -41.0}), std::invalid_argument);
    CHECK_THROWS_AS(airy_ai(-40.5), std::invalid_argument);
    CHECK_NOTHROW(airy_ai(cplx{-28.0, 28.0}));  // |w| just inside the disc
}
