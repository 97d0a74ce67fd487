#include "uavtwin/airsim/pathloss.hpp"

#include "uavtwin/common/constants.hpp"
#include "uavtwin/common/errors.hpp"

#include <cmath>

namespace uavtwin::airsim {

double pathloss(double eirp_dbm, double wavelength, double d1, std::optional<double> d2,
                double rcs_dbsm) {
    if (!(d1 > 0.0) || (d2 && !(*d2 > 0.0)))
        throw InvalidArgument("pathloss distances must be positive");
    if (!(wavelength > 0.0)) throw InvalidArgument("pathloss wavelength must be positive");
    const double eirp_mw = std::pow(10.0, eirp_dbm / 10.0);
    if (!d2) {
        const double friis = wavelength / (4.0 * kPi * d1);
        return eirp_mw * friis * friis;
    }
    const double sigma = std::pow(10.0, rcs_dbsm / 10.0);
    const double four_pi = 4.0 * kPi;
    return eirp_mw * wavelength * wavelength * sigma /
           (four_pi * four_pi * four_pi * d1 * d1 * (*d2) * (*d2));
}

}  // namespace uavtwin::airsim
