#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eepn/ber_engine.hpp"
#include "eepn/core_model.hpp"
#include "eepn/mc_oracle.hpp"

namespace eepn {

inline constexpr int kScenarioSchemaVersion = 1;

/// A fully validated run description. Physical quantities are SI; the JSON
/// file carries engineering units in its key names.
struct Scenario {
  LinkParams link;
  LaserParams lasers;
  ModulationSpec mod;
  BerModelConfig model;
  std::vector<double> snr_grid_db;
  std::optional<McConfig> mc;
};

/// Inclusive grid from..to in `step` dB increments.
std::vector<double> make_snr_grid(double from_db, double to_db, double step_db);

/// 0..20 dB in 0.5 dB steps.
std::vector<double> default_snr_grid();

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

BerMode parse_ber_mode(std::string_view text);
EepnProcess parse_eepn_process(std::string_view text);

/// One labeled member of a figure preset sweep.
struct PresetMember {
  std::string label;
  Scenario scenario;
};

/// fig1a, fig1b, fig2a or fig2b.
std::vector<PresetMember> expand_preset(std::string_view name);

}  // namespace eepn
