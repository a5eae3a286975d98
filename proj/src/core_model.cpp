#include "eepn/core_model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "eepn/error.hpp"
#include "eepn/units.hpp"

namespace eepn {
namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    fail_validation(std::string(name) + " must be finite");
  }
}

}  // namespace

void LinkParams::validate() const {
  require_finite(wavelength, "wavelength");
  require_finite(dispersion_coeff, "dispersion_coeff");
  require_finite(length, "length");
  if (wavelength <= 0.0) fail_validation("wavelength must be > 0");
  if (length < 0.0) fail_validation("length must be >= 0");
}

void LaserParams::validate() const {
  require_finite(tx_linewidth, "tx_linewidth");
  require_finite(lo_linewidth, "lo_linewidth");
  require_finite(rho, "rho");
  if (tx_linewidth < 0.0) fail_validation("tx_linewidth must be >= 0");
  if (lo_linewidth < 0.0) fail_validation("lo_linewidth must be >= 0");
  if (rho < -1.0 || rho > 1.0) fail_validation("rho must lie in [-1, 1]");
}

bool is_supported_level(int level) {
  return level >= 4 && std::has_single_bit(static_cast<unsigned>(level));
}

void ModulationSpec::validate() const {
  if (!is_supported_level(level)) {
    fail_validation("level must be a power of two >= 4, got " +
                    std::to_string(level));
  }
  require_finite(symbol_rate, "symbol_rate");
  if (symbol_rate <= 0.0) fail_validation("symbol_rate must be > 0");
}

int ModulationSpec::bits_per_symbol() const {
  return std::countr_zero(static_cast<unsigned>(level));
}

double NoiseBudget::sigma_total() const { return std::sqrt(var_total); }

double eepn_variance(const LinkParams& link, double lo_linewidth,
                     const ModulationSpec& mod) {
  link.validate();
  mod.validate();
  require_finite(lo_linewidth, "lo_linewidth");
  const double lambda2 = link.wavelength * link.wavelength;
  return std::numbers::pi * lambda2 * link.dispersion_coeff * link.length *
         lo_linewidth * mod.symbol_rate / (2.0 * units::kSpeedOfLight);
}

double intrinsic_variance(double linewidth, const ModulationSpec& mod) {
  mod.validate();
  require_finite(linewidth, "linewidth");
  if (linewidth < 0.0) fail_validation("linewidth must be >= 0");
  return 2.0 * std::numbers::pi * linewidth / mod.symbol_rate;
}

NoiseBudget noise_budget(const LinkParams& link, const LaserParams& lasers,
                         const ModulationSpec& mod) {
  lasers.validate();
  NoiseBudget b;
  b.var_tx = intrinsic_variance(lasers.tx_linewidth, mod);
  b.var_lo = intrinsic_variance(lasers.lo_linewidth, mod);
  b.var_eepn = eepn_variance(link, lasers.lo_linewidth, mod);
  // A negative accumulated dispersion would give a negative EEPN variance;
  // the budget only exists for non-negative D*L.
  if (b.var_eepn < 0.0) {
    fail_validation("accumulated dispersion D*L must be >= 0 for a noise budget");
  }
  b.var_cross = 2.0 * lasers.rho * std::sqrt(b.var_lo * b.var_eepn);
  b.var_total = b.var_tx + b.var_lo + b.var_eepn + b.var_cross;
  if (b.var_total < 0.0) {
    fail_validation("rho produces a negative total phase-noise variance");
  }
  return b;
}

double decision_margin(int level) {
  if (!is_supported_level(level)) {
    fail_validation("level must be a power of two >= 4, got " +
                    std::to_string(level));
  }
  const double s = std::sin(std::numbers::pi / level);
  return std::sqrt(1.0 + s) - std::sqrt(1.0 - s);
}

}  // namespace eepn
