#pragma once

#include <numbers>

namespace ccqed {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, vacuum
inline constexpr double kHbar = 1.054'571'817e-34;      // J s

/// Core index of the fiber; sets the default speed of light in the fiber.
inline constexpr double kFiberCoreIndex = 1.4525;

// Rates are kept in rad/s internally. The user-facing unit is "2pi x MHz".
constexpr double from_mhz(double mhz) noexcept { return kTwoPi * 1.0e6 * mhz; }
constexpr double to_mhz(double rad_per_s) noexcept { return rad_per_s / (kTwoPi * 1.0e6); }

constexpr double from_pw(double pw) noexcept { return pw * 1.0e-12; }
constexpr double to_pw(double watts) noexcept { return watts * 1.0e12; }

}  // namespace ccqed
