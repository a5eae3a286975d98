#include "eepn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eepn/ber_engine.hpp"
#include "eepn/core_model.hpp"
#include "eepn/csv.hpp"
#include "eepn/error.hpp"
#include "eepn/mc_oracle.hpp"
#include "eepn/scenario.hpp"
#include "eepn/units.hpp"

namespace eepn {
namespace {

struct GridFlags {
  std::optional<double> from;
  std::optional<double> to;
  std::optional<double> step;

  bool any() const { return from || to || step; }
};

struct Options {
  std::string scenario_path;
  std::string mode;
  GridFlags grid;
  std::optional<double> target;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> symbols;
  std::optional<unsigned> workers;
  std::string eepn_process;
  std::string preset;
  std::string gnuplot_path;
};

void add_scenario_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario_path, "JSON scenario file")->required();
}

void add_mode_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "BER integral reading: as-printed | offset-folded")
      ->check(CLI::IsMember({"as-printed", "offset-folded", "as_printed", "offset_folded"}));
}

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--snr-from", o.grid.from, "first SNR grid point [dB] (default 0)");
  cmd->add_option("--snr-to", o.grid.to, "last SNR grid point [dB] (default 20)");
  cmd->add_option("--snr-step", o.grid.step, "SNR grid step [dB] (default 0.5)");
}

void add_gnuplot_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--gnuplot", o.gnuplot_path, "also write a gnuplot script to this path");
}

void apply_overrides(const Options& o, Scenario& s) {
  if (!o.mode.empty()) s.model.mode = parse_ber_mode(o.mode);
  if (o.grid.any()) {
    s.snr_grid_db = make_snr_grid(o.grid.from.value_or(0.0), o.grid.to.value_or(20.0),
                                  o.grid.step.value_or(0.5));
  }
}

Scenario load_with_overrides(const Options& o) {
  Scenario s = load_scenario(o.scenario_path);
  apply_overrides(o, s);
  return s;
}

void print_summary(std::ostream& err, const Scenario& s, const NoiseBudget& b) {
  err << "link: lambda=" << s.link.wavelength * 1e9 << " nm, D="
      << units::si_to_ps_per_nm_km(s.link.dispersion_coeff) << " ps/nm/km, L="
      << s.link.length / 1e3 << " km\n"
      << "lasers: tx=" << s.lasers.tx_linewidth / 1e3 << " kHz, lo="
      << s.lasers.lo_linewidth / 1e3 << " kHz, rho=" << s.lasers.rho << "\n"
      << "modulation: m=" << s.mod.level << ", Rs=" << s.mod.symbol_rate / 1e9 << " GBd\n"
      << "model: " << to_string(s.model.mode) << ", "
      << to_string(s.model.snr_convention) << " SNR\n"
      << "budget: var_total=" << b.var_total << " rad^2 (eepn " << b.var_eepn << ")\n";
}

struct LabeledCurve {
  std::string label;
  BerCurve curve;
};

void write_gnuplot(const std::string& path, const std::vector<LabeledCurve>& curves) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_validation("cannot write gnuplot script " + path);
  out << "set logscale y\n"
         "set format y '10^{%L}'\n"
         "set xlabel 'SNR [dB]'\n"
         "set ylabel 'BER'\n"
         "set grid\n"
         "set key bottom left\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    out << "$curve" << i << " << EOD\n";
    for (const auto& p : curves[i].curve) {
      if (p.point.ber > 0.0) {
        out << csv::format(p.snr_db) << ' ' << csv::format(p.point.ber) << '\n';
      }
    }
    out << "EOD\n";
  }
  out << "plot ";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i > 0) out << ", \\\n     ";
    std::string title = curves[i].label;
    std::replace(title.begin(), title.end(), '\'', '"');
    out << "$curve" << i << " using 1:2 with lines title '" << title << "'";
  }
  out << '\n';
}

int cmd_budget(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_with_overrides(o);
  const NoiseBudget b = noise_budget(s.link, s.lasers, s.mod);
  print_summary(err, s, b);
  csv::write_row(out, {"var_tx", "var_lo", "var_eepn", "var_cross", "var_total"});
  csv::write_row(out, {csv::format(b.var_tx), csv::format(b.var_lo), csv::format(b.var_eepn),
                       csv::format(b.var_cross), csv::format(b.var_total)});
  return 0;
}

int cmd_curve(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_with_overrides(o);
  const NoiseBudget b = noise_budget(s.link, s.lasers, s.mod);
  print_summary(err, s, b);
  const BerCurve curve = ber_curve(s.snr_grid_db, s.mod.level, b, s.model);
  csv::write_row(out, {"snr_db", "ber_analytic"});
  for (const auto& p : curve) {
    csv::write_row(out, {csv::format(p.snr_db), csv::format(p.point.ber)});
  }
  if (!o.gnuplot_path.empty()) write_gnuplot(o.gnuplot_path, {{"analytic", curve}});
  return 0;
}

int cmd_floor(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_with_overrides(o);
  const NoiseBudget b = noise_budget(s.link, s.lasers, s.mod);
  print_summary(err, s, b);
  if (s.model.mode == BerMode::as_printed) {
    err << "note: the as_printed reading has no phase-noise floor\n";
  }
  const double floor = ber_floor(s.mod.level, b.sigma_total(), s.model);
  csv::write_row(out, {"level", "sigma_total", "ber_floor"});
  csv::write_row(out, {std::to_string(s.mod.level), csv::format(b.sigma_total()),
                       csv::format(floor)});
  return 0;
}

int cmd_required_snr(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_with_overrides(o);
  const NoiseBudget b = noise_budget(s.link, s.lasers, s.mod);
  print_summary(err, s, b);
  const double db = required_snr(*o.target, s.mod.level, b.sigma_total(), s.model);
  csv::write_row(out, {"target_ber", "snr_db"});
  csv::write_row(out, {csv::format(*o.target), csv::format(db)});
  return 0;
}

int cmd_mc(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_with_overrides(o);
  const NoiseBudget b = noise_budget(s.link, s.lasers, s.mod);
  print_summary(err, s, b);
  McConfig mc = s.mc.value_or(McConfig{});
  if (o.seed) mc.seed = *o.seed;
  if (o.symbols) mc.n_symbols = *o.symbols;
  if (o.workers) mc.n_workers = *o.workers;
  if (!o.eepn_process.empty()) mc.eepn_process = parse_eepn_process(o.eepn_process);

  const BerCurve curve = ber_curve(s.snr_grid_db, s.mod.level, b, s.model);
  csv::write_row(out, {"snr_db", "ber_analytic", "ber_mc", "ci_low", "ci_high"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double snr = curve[i].point.snr_linear;
    const double symbol_snr = s.model.snr_convention == SnrConvention::per_bit
                                  ? snr * s.mod.bits_per_symbol()
                                  : snr;
    const McResult r = simulate(s.mod, b, symbol_snr, mc);
    err << "mc: " << curve[i].snr_db << " dB, " << r.bit_errors << " bit errors ("
        << (i + 1) << "/" << curve.size() << ")\n";
    csv::write_row(out, {csv::format(curve[i].snr_db), csv::format(curve[i].point.ber),
                         csv::format(r.ber_hat), csv::format(r.ci95_low),
                         csv::format(r.ci95_high)});
  }
  return 0;
}

int cmd_preset(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<LabeledCurve> curves;
  for (PresetMember& member : expand_preset(o.preset)) {
    apply_overrides(o, member.scenario);
    const Scenario& s = member.scenario;
    const NoiseBudget b = noise_budget(s.link, s.lasers, s.mod);
    err << member.label << ": var_total=" << b.var_total << " rad^2, floor="
        << ber_floor(s.mod.level, b.sigma_total(), s.model) << "\n";
    curves.push_back({member.label, ber_curve(s.snr_grid_db, s.mod.level, b, s.model)});
  }
  csv::write_row(out, {"label", "snr_db", "ber_analytic"});
  for (const auto& c : curves) {
    for (const auto& p : c.curve) {
      csv::write_row(out, {csv::field(c.label), csv::format(p.snr_db), csv::format(p.point.ber)});
    }
  }
  if (!o.gnuplot_path.empty()) write_gnuplot(o.gnuplot_path, curves);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"BER versus SNR for differential m-PSK links with equalization enhanced "
               "phase noise",
               "eepn-ber"};
  app.require_subcommand(1);
  Options o;

  auto* budget = app.add_subcommand("budget", "print the phase-noise variance budget");
  add_scenario_flag(budget, o);

  auto* curve = app.add_subcommand("curve", "analytic BER over the SNR grid");
  add_scenario_flag(curve, o);
  add_mode_flag(curve, o);
  add_grid_flags(curve, o);
  add_gnuplot_flag(curve, o);

  auto* floor = app.add_subcommand("floor", "BER floor as SNR goes to infinity");
  add_scenario_flag(floor, o);
  add_mode_flag(floor, o);

  auto* required = app.add_subcommand("required-snr", "SNR needed to reach a target BER");
  add_scenario_flag(required, o);
  add_mode_flag(required, o);
  required->add_option("--target", o.target, "target BER")->required();

  auto* mc = app.add_subcommand("mc", "analytic BER plus Monte Carlo estimate per grid point");
  add_scenario_flag(mc, o);
  add_mode_flag(mc, o);
  add_grid_flags(mc, o);
  mc->add_option("--seed", o.seed, "RNG seed");
  mc->add_option("--symbols", o.symbols, "symbols per grid point");
  mc->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  mc->add_option("--eepn-process", o.eepn_process, "increment-matched | iid")
      ->check(CLI::IsMember({"increment-matched", "increment_matched", "iid"}));

  auto* preset = app.add_subcommand("preset", "emit one labeled curve per preset member");
  auto* name_pos = preset->add_option("name", o.preset, "fig1a | fig1b | fig2a | fig2b");
  auto* name_flag = preset->add_option("--preset", o.preset, "same as the positional name");
  name_pos->excludes(name_flag);
  add_mode_flag(preset, o);
  add_grid_flags(preset, o);
  add_gnuplot_flag(preset, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::validation);
  }

  try {
    if (*budget) return cmd_budget(o, out, err);
    if (*curve) return cmd_curve(o, out, err);
    if (*floor) return cmd_floor(o, out, err);
    if (*required) return cmd_required_snr(o, out, err);
    if (*mc) return cmd_mc(o, out, err);
    if (*preset) {
      if (o.preset.empty()) fail_validation("preset name required");
      return cmd_preset(o, out, err);
    }
  } catch (const Error& e) {
    err << "error kind=" << to_string(e.kind()) << " exit=" << exit_code(e.kind())
        << " message=\"" << e.what() << "\"\n";
    return exit_code(e.kind());
  }
  return 0;
}

}  // namespace eepn
