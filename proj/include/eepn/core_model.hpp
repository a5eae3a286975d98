#pragma once

#include <cstdint>

namespace eepn {

/// Fiber description, SI units.
struct LinkParams {
  double wavelength = 1550e-9;     ///< carrier wavelength [m]
  double dispersion_coeff = 16e-6; ///< CD coefficient D [s/m^2]
  double length = 0.0;             ///< fiber length [m]

  void validate() const;
};

/// 3-dB linewidths of the transmitter and local oscillator lasers, plus the
/// correlation between LO phase noise and EEPN.
struct LaserParams {
  double tx_linewidth = 0.0;  ///< [Hz]
  double lo_linewidth = 0.0;  ///< [Hz]
  double rho = 0.0;

  void validate() const;
};

struct ModulationSpec {
  int level = 4;             ///< constellation size m, power of two >= 4
  double symbol_rate = 28e9; ///< [baud]

  void validate() const;
  int bits_per_symbol() const;
  double symbol_period() const { return 1.0 / symbol_rate; }
};

/// Phase-noise variance decomposition in rad^2. var_cross carries the
/// 2*rho*sigma_lo*sigma_eepn term.
struct NoiseBudget {
  double var_tx = 0.0;
  double var_lo = 0.0;
  double var_eepn = 0.0;
  double var_cross = 0.0;
  double var_total = 0.0;

  double sigma_total() const;
};

bool is_supported_level(int level);

/// EEPN variance pi*lambda^2*D*L*df_lo*Rs / (2c).
double eepn_variance(const LinkParams& link, double lo_linewidth,
                     const ModulationSpec& mod);

/// Wiener phase-noise variance per symbol, 2*pi*df*Ts.
double intrinsic_variance(double linewidth, const ModulationSpec& mod);

NoiseBudget noise_budget(const LinkParams& link, const LaserParams& lasers,
                         const ModulationSpec& mod);

/// sqrt(1 + sin(pi/m)) - sqrt(1 - sin(pi/m)), the angular decision margin
/// appearing in the erfc argument.
double decision_margin(int level);

}  // namespace eepn
