#pragma once

namespace floorsum {

// Euler-Mascheroni constant, 0.57721566490153286060...
inline constexpr double kEulerGamma = 0.5772156649015329;
// zeta(2) = pi^2 / 6 = 1.64493406684822643647...
inline constexpr double kZeta2 = 1.6449340668482264;
inline constexpr double kInvZeta2 = 1.0 / kZeta2;
// (1 + sqrt 5) / 2
inline constexpr double kGoldenRatio = 1.6180339887498949;
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace floorsum
