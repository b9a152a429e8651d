#pragma once

namespace curvebeam {

inline constexpr double speed_of_light = 2.998e8;  // m/s

// Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3).
inline constexpr double airy_ai_at_zero = 0.35502805388781723926;
inline constexpr double airy_dai_at_zero = -0.25881940379280679841;

// Zeros of Ai' mark intensity-lobe peaks on the launch plane; zeros of Ai
// separate adjacent lobes. All lie on the negative real axis.
inline constexpr double airy_dai_zeros[3] = {
    -1.0187929716474711, -3.2481975821798366, -4.820099211178736};
inline constexpr double airy_ai_zeros[3] = {
    -2.338107410459767, -4.08794944413097, -5.520559828095551};

}  // namespace curvebeam
