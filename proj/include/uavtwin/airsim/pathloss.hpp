#pragma once

#include <cmath>
#include <optional>

namespace uavtwin::airsim {

/// Received power in mW for a transmitter of `eirp_dbm`.
///
/// Without d2 this is the free-space Friis loss over d1. With d2 it is the
/// bistatic radar equation EIRP * lambda^2 * sigma / ((4 pi)^3 d1^2 d2^2) with
/// sigma = 10^(rcs_dbsm / 10) m^2. Throws InvalidArgument for non-positive
/// distances or wavelength.
double pathloss(double eirp_dbm, double wavelength, double d1, std::optional<double> d2 = std::nullopt,
                double rcs_dbsm = 0.0);

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace uavtwin::airsim
