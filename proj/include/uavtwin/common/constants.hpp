#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace uavtwin {

using cdouble = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, vacuum
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double power_to_db(double p) { return 10.0 * std::log10(p); }

}  // namespace uavtwin
