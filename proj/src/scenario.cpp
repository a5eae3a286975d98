#include "eepn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "eepn/error.hpp"
#include "eepn/units.hpp"

namespace eepn {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail_validation("unknown key \"" + where + key + "\"");
    }
  }
}

const json& require_object(const json& parent, const std::string& key,
                           const std::string& where) {
  if (!parent.contains(key)) fail_validation("missing required key \"" + where + key + "\"");
  const json& value = parent.at(key);
  if (!value.is_object()) fail_validation("\"" + where + key + "\" must be an object");
  return value;
}

double number_field(const json& object, const std::string& key,
                    const std::string& where, std::optional<double> fallback) {
  if (!object.contains(key)) {
    if (fallback) return *fallback;
    fail_validation("missing required key \"" + where + key + "\"");
  }
  const json& value = object.at(key);
  if (!value.is_number()) fail_validation("\"" + where + key + "\" must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail_validation("\"" + where + key + "\" must be finite");
  return v;
}

std::uint64_t unsigned_field(const json& object, const std::string& key,
                             const std::string& where, std::uint64_t fallback) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_number_unsigned()) {
    fail_validation("\"" + where + key + "\" must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

std::string string_field(const json& object, const std::string& key,
                         const std::string& where, std::string fallback) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_string()) fail_validation("\"" + where + key + "\" must be a string");
  return value.get<std::string>();
}

void check(bool ok, const std::string& field, const std::string& constraint) {
  if (!ok) fail_validation("\"" + field + "\" " + constraint);
}

LinkParams parse_link(const json& j) {
  reject_unknown_keys(j, "link.", {"wavelength_nm", "dispersion_ps_per_nm_km", "length_km"});
  const double wavelength_nm = number_field(j, "wavelength_nm", "link.", 1550.0);
  const double dispersion = number_field(j, "dispersion_ps_per_nm_km", "link.", 16.0);
  const double length_km = number_field(j, "length_km", "link.", std::nullopt);
  check(wavelength_nm > 0.0, "link.wavelength_nm", "must be > 0");
  check(length_km >= 0.0, "link.length_km", "must be >= 0");
  return {units::nm_to_m(wavelength_nm), units::ps_per_nm_km_to_si(dispersion),
          units::km_to_m(length_km)};
}

LaserParams parse_lasers(const json& j) {
  reject_unknown_keys(j, "lasers.", {"tx_linewidth_khz", "lo_linewidth_khz", "rho"});
  const double tx = number_field(j, "tx_linewidth_khz", "lasers.", std::nullopt);
  const double lo = number_field(j, "lo_linewidth_khz", "lasers.", std::nullopt);
  const double rho = number_field(j, "rho", "lasers.", 0.0);
  check(tx >= 0.0, "lasers.tx_linewidth_khz", "must be >= 0");
  check(lo >= 0.0, "lasers.lo_linewidth_khz", "must be >= 0");
  check(rho >= -1.0 && rho <= 1.0, "lasers.rho", "must lie in [-1, 1]");
  return {units::khz_to_hz(tx), units::khz_to_hz(lo), rho};
}

ModulationSpec parse_modulation(const json& j) {
  reject_unknown_keys(j, "modulation.", {"level", "symbol_rate_gbaud"});
  if (!j.contains("level")) fail_validation("missing required key \"modulation.level\"");
  check(j.at("level").is_number_integer(), "modulation.level", "must be an integer");
  const auto level = j.at("level").get<long long>();
  check(level >= 4 && level <= (1LL << 20) && is_supported_level(static_cast<int>(level)),
        "modulation.level", "must be a power of two >= 4");
  const double rate = number_field(j, "symbol_rate_gbaud", "modulation.", std::nullopt);
  check(rate > 0.0, "modulation.symbol_rate_gbaud", "must be > 0");
  return {static_cast<int>(level), units::gbaud_to_baud(rate)};
}

BerModelConfig parse_model(const json& j) {
  reject_unknown_keys(j, "model.", {"mode", "quadrature_halfwidth", "quadrature_points",
                                    "snr_convention"});
  BerModelConfig cfg;
  try {
    cfg.mode = parse_ber_mode(string_field(j, "mode", "model.", "offset_folded"));
  } catch (const Error& e) {
    fail_validation("\"model.mode\": " + std::string(e.what()));
  }
  cfg.quadrature_halfwidth = number_field(j, "quadrature_halfwidth", "model.", 10.0);
  const auto points = unsigned_field(j, "quadrature_points", "model.", 4001);
  check(points >= 101 && points % 2 == 1 && points < (1U << 24), "model.quadrature_points",
        "must be odd and >= 101");
  cfg.quadrature_points = static_cast<int>(points);
  check(cfg.quadrature_halfwidth >= 6.0, "model.quadrature_halfwidth", "must be >= 6");
  const std::string convention = string_field(j, "snr_convention", "model.", "per_symbol");
  if (convention == "per_symbol") {
    cfg.snr_convention = SnrConvention::per_symbol;
  } else if (convention == "per_bit") {
    cfg.snr_convention = SnrConvention::per_bit;
  } else {
    fail_validation("\"model.snr_convention\" must be per_symbol or per_bit");
  }
  return cfg;
}

std::vector<double> parse_grid(const json& j) {
  if (j.is_array()) {
    std::vector<double> grid;
    for (const json& v : j) {
      check(v.is_number(), "snr_grid_db", "entries must be numbers");
      grid.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
      check(grid[i] > grid[i - 1], "snr_grid_db", "must be strictly increasing");
    }
    return grid;
  }
  check(j.is_object(), "snr_grid_db", "must be an array or a {from, to, step} object");
  reject_unknown_keys(j, "snr_grid_db.", {"from", "to", "step"});
  return make_snr_grid(number_field(j, "from", "snr_grid_db.", std::nullopt),
                       number_field(j, "to", "snr_grid_db.", std::nullopt),
                       number_field(j, "step", "snr_grid_db.", std::nullopt));
}

McConfig parse_mc(const json& j) {
  reject_unknown_keys(j, "mc.", {"symbols", "seed", "eepn_process", "workers"});
  McConfig mc;
  mc.n_symbols = unsigned_field(j, "symbols", "mc.", mc.n_symbols);
  check(mc.n_symbols >= 2, "mc.symbols", "must be >= 2");
  mc.seed = unsigned_field(j, "seed", "mc.", mc.seed);
  try {
    mc.eepn_process = parse_eepn_process(string_field(j, "eepn_process", "mc.", "increment_matched"));
  } catch (const Error& e) {
    fail_validation("\"mc.eepn_process\": " + std::string(e.what()));
  }
  const auto workers = unsigned_field(j, "workers", "mc.", 0);
  check(workers <= 4096, "mc.workers", "must be <= 4096");
  mc.n_workers = static_cast<unsigned>(workers);
  return mc;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::vector<double> make_snr_grid(double from_db, double to_db, double step_db) {
  if (!std::isfinite(from_db) || !std::isfinite(to_db) || !std::isfinite(step_db)) {
    fail_validation("snr grid bounds must be finite");
  }
  if (step_db <= 0.0) fail_validation("snr grid step must be > 0");
  if (to_db < from_db) fail_validation("snr grid end must be >= start");
  const double span = (to_db - from_db) / step_db;
  if (span > 1e6) fail_validation("snr grid has too many points");
  const auto intervals = static_cast<std::size_t>(std::floor(span + 1e-9));
  std::vector<double> grid;
  grid.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid.push_back(from_db + static_cast<double>(i) * step_db);
  }
  return grid;
}

std::vector<double> default_snr_grid() { return make_snr_grid(0.0, 20.0, 0.5); }

BerMode parse_ber_mode(std::string_view text) {
  if (text == "offset_folded" || text == "offset-folded") return BerMode::offset_folded;
  if (text == "as_printed" || text == "as-printed") return BerMode::as_printed;
  fail_validation("unknown BER mode \"" + std::string(text) +
                  "\" (expected as-printed or offset-folded)");
}

EepnProcess parse_eepn_process(std::string_view text) {
  if (text == "increment_matched" || text == "increment-matched") {
    return EepnProcess::increment_matched;
  }
  if (text == "iid") return EepnProcess::iid;
  fail_validation("unknown EEPN process \"" + std::string(text) +
                  "\" (expected increment-matched or iid)");
}

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(json_text, e.byte == 0 ? 0 : e.byte - 1);
    fail_validation("scenario parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + e.what());
  }
  if (!root.is_object()) fail_validation("scenario must be a JSON object");
  reject_unknown_keys(root, "", {"schema_version", "link", "lasers", "modulation", "model",
                                 "snr_grid_db", "mc"});

  const auto version = unsigned_field(root, "schema_version", "", kScenarioSchemaVersion);
  check(version == kScenarioSchemaVersion, "schema_version",
        "must be " + std::to_string(kScenarioSchemaVersion));

  Scenario s;
  s.link = parse_link(require_object(root, "link", ""));
  s.lasers = parse_lasers(require_object(root, "lasers", ""));
  s.mod = parse_modulation(require_object(root, "modulation", ""));
  if (root.contains("model")) s.model = parse_model(require_object(root, "model", ""));
  s.snr_grid_db = root.contains("snr_grid_db") ? parse_grid(root.at("snr_grid_db"))
                                               : default_snr_grid();
  if (root.contains("mc")) s.mc = parse_mc(require_object(root, "mc", ""));

  s.link.validate();
  s.lasers.validate();
  s.mod.validate();
  s.model.validate();
  // Surfaces negative-total budgets (rho < 0) at load time.
  noise_budget(s.link, s.lasers, s.mod);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_validation("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

}  // namespace eepn
