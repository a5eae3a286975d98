#pragma once

// SI conversions applied at the CLI boundary. Everything past this header
// works in meters, seconds, hertz and radians.

namespace eepn::units {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact

constexpr double nm_to_m(double nm) { return nm * 1e-9; }
constexpr double km_to_m(double km) { return km * 1e3; }
constexpr double khz_to_hz(double khz) { return khz * 1e3; }
constexpr double mhz_to_hz(double mhz) { return mhz * 1e6; }
constexpr double gbaud_to_baud(double gbd) { return gbd * 1e9; }

// 1 ps/(nm km) = 1e-12 s / (1e-9 m * 1e3 m) = 1e-6 s/m^2
constexpr double ps_per_nm_km_to_si(double d) { return d * 1e-6; }
constexpr double si_to_ps_per_nm_km(double d) { return d * 1e6; }

double snr_db_to_linear(double db);

/// Rejects non-positive input.
double snr_linear_to_db(double linear);

}  // namespace eepn::units
