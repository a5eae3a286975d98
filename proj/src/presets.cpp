#include <array>
#include <cstdio>
#include <string>

#include "eepn/error.hpp"
#include "eepn/scenario.hpp"
#include "eepn/units.hpp"

namespace eepn {
namespace {

// 2000 km of 16 ps/nm/km fiber at 1550 nm, 28 GBd DQPSK.
Scenario base_scenario() {
  Scenario s;
  s.link = {units::nm_to_m(1550.0), units::ps_per_nm_km_to_si(16.0), units::km_to_m(2000.0)};
  s.mod = {4, units::gbaud_to_baud(28.0)};
  s.snr_grid_db = default_snr_grid();
  return s;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

// Tx/LO split of a fixed 200 kHz sum; fraction is the LO share.
std::vector<PresetMember> fig1a() {
  constexpr double total_khz = 200.0;
  std::vector<PresetMember> members;
  for (double lo_fraction : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    Scenario s = base_scenario();
    s.lasers.lo_linewidth = units::khz_to_hz(total_khz * lo_fraction);
    s.lasers.tx_linewidth = units::khz_to_hz(total_khz * (1.0 - lo_fraction));
    members.push_back({"tx=" + format_number(total_khz * (1.0 - lo_fraction)) + "kHz lo=" +
                           format_number(total_khz * lo_fraction) + "kHz",
                       s});
  }
  return members;
}

std::vector<PresetMember> fig1b() {
  std::vector<PresetMember> members;
  for (double mhz : {0.1, 1.0, 2.0, 5.0}) {
    Scenario s = base_scenario();
    s.lasers.tx_linewidth = units::mhz_to_hz(mhz);
    s.lasers.lo_linewidth = units::mhz_to_hz(mhz);
    members.push_back({"tx=lo=" + format_number(mhz) + "MHz", s});
  }
  return members;
}

std::vector<PresetMember> fig2a() {
  std::vector<PresetMember> members;
  constexpr std::array names{"DQPSK", "D8PSK", "D16PSK"};
  int i = 0;
  for (int level : {4, 8, 16}) {
    Scenario s = base_scenario();
    s.mod.level = level;
    s.lasers.tx_linewidth = units::khz_to_hz(100.0);
    s.lasers.lo_linewidth = units::khz_to_hz(100.0);
    members.push_back({names[i++], s});
  }
  return members;
}

std::vector<PresetMember> fig2b() {
  std::vector<PresetMember> members;
  for (double gbd : {14.0, 28.0, 56.0}) {
    Scenario s = base_scenario();
    s.mod.symbol_rate = units::gbaud_to_baud(gbd);
    s.lasers.tx_linewidth = units::mhz_to_hz(5.0);
    s.lasers.lo_linewidth = units::mhz_to_hz(5.0);
    members.push_back({format_number(gbd) + "GBd", s});
  }
  return members;
}

}  // namespace

std::vector<PresetMember> expand_preset(std::string_view name) {
  if (name == "fig1a") return fig1a();
  if (name == "fig1b") return fig1b();
  if (name == "fig2a") return fig2a();
  if (name == "fig2b") return fig2b();
  fail_validation("unknown preset \"" + std::string(name) +
                  "\" (expected fig1a, fig1b, fig2a or fig2b)");
}

}  // namespace eepn
