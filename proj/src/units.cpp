#include "eepn/units.hpp"

#include <cmath>
#include <string>

#include "eepn/error.hpp"

namespace eepn::units {

double snr_db_to_linear(double db) {
  if (!std::isfinite(db)) fail_validation("snr_db must be finite");
  return std::pow(10.0, db / 10.0);
}

double snr_linear_to_db(double linear) {
  if (!std::isfinite(linear) || linear <= 0.0) {
    fail_validation("linear SNR must be positive and finite, got " +
                    std::to_string(linear));
  }
  return 10.0 * std::log10(linear);
}

}  // namespace eepn::units
