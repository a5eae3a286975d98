#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eepn/cli.hpp"

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = eepn::run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) fields.push_back(f);
  return fields;
}

const std::string kFig2a16 = EEPN_SOURCE_DIR "/presets/fig2a_d16psk.json";
const std::string kFig1b = EEPN_SOURCE_DIR "/presets/fig1b_5mhz.json";

}  // namespace

TEST_CASE("budget prints the variance decomposition") {
  const Run r = run({"budget", "--scenario", EEPN_SOURCE_DIR "/presets/fig2a_dqpsk.json"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "var_tx,var_lo,var_eepn,var_cross,var_total");
  const auto fields = split(rows[1]);
  REQUIRE(fields.size() == 5);
  CHECK(std::stod(fields[4]) == doctest::Approx(1.1727798520647998e-3).epsilon(1e-12));
}

TEST_CASE("curve over an empty grid is header only") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "eepn_empty_grid.json";
  std::ofstream(path) << R"({"link": {"length_km": 2000},
    "lasers": {"tx_linewidth_khz": 100, "lo_linewidth_khz": 100},
    "modulation": {"level": 4, "symbol_rate_gbaud": 28}, "snr_grid_db": []})";
  const Run r = run({"curve", "--scenario", path.string()});
  CHECK(r.status == 0);
  CHECK(r.out == "snr_db,ber_analytic\n");
  std::filesystem::remove(path);
}

TEST_CASE("curve honours the grid and mode flags") {
  const Run r = run({"curve", "--scenario", kFig2a16, "--snr-from", "0", "--snr-to", "2",
                     "--snr-step", "1", "--mode", "as-printed"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(split(rows[3])[0] == "2");
  CHECK(r.err.find("as_printed") != std::string::npos);
}

TEST_CASE("CSV numbers round-trip at 17 significant digits") {
  const Run r = run({"curve", "--scenario", kFig2a16, "--snr-from", "10", "--snr-to", "10",
                     "--snr-step", "1"});
  REQUIRE(r.status == 0);
  const std::string ber = split(lines(r.out)[1])[1];
  CHECK(ber.find(',') == std::string::npos);
  std::ostringstream again;
  again.precision(17);
  again << std::stod(ber);
  CHECK(std::stod(again.str()) == std::stod(ber));
}

TEST_CASE("floor and required-snr") {
  const Run floor = run({"floor", "--scenario", kFig1b});
  REQUIRE(floor.status == 0);
  CHECK(std::stod(split(lines(floor.out)[1])[2]) ==
        doctest::Approx(5.9062141121094222e-4).epsilon(1e-10));

  const Run ok = run({"required-snr", "--scenario", kFig1b, "--target", "1e-3"});
  REQUIRE(ok.status == 0);
  CHECK(lines(ok.out)[0] == "target_ber,snr_db");

  const Run below = run({"required-snr", "--scenario", kFig1b, "--target", "1e-4"});
  CHECK(below.status == 4);
  CHECK(below.err.find("error kind=below_floor") != std::string::npos);
}

TEST_CASE("mc output is reproducible byte for byte") {
  const std::vector<std::string> args{"mc", "--scenario", kFig1b, "--symbols", "100000",
                                      "--seed", "5", "--workers", "2"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "snr_db,ber_analytic,ber_mc,ci_low,ci_high");
}

TEST_CASE("preset fig2b orders the curves by symbol rate") {
  const Run r = run({"preset", "fig2b"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 3 * 41);
  CHECK(rows[0] == "label,snr_db,ber_analytic");
  for (std::size_t i = 0; i < 41; ++i) {
    const double b14 = std::stod(split(rows[1 + i])[2]);
    const double b28 = std::stod(split(rows[1 + 41 + i])[2]);
    const double b56 = std::stod(split(rows[1 + 82 + i])[2]);
    CHECK(b56 >= b28);
    CHECK(b28 >= b14);
  }
  CHECK(run({"preset", "--preset", "fig2b"}).out == r.out);
}

TEST_CASE("gnuplot script emission") {
  const auto path = std::filesystem::temp_directory_path() / "eepn_fig2a.gp";
  const Run r = run({"preset", "fig2a", "--gnuplot", path.string()});
  REQUIRE(r.status == 0);
  std::ifstream in(path);
  std::stringstream script;
  script << in.rdbuf();
  CHECK(script.str().find("set logscale y") != std::string::npos);
  CHECK(script.str().find("title 'D16PSK'") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("flag handling") {
  CHECK(run({"curve", "--scenario", kFig2a16, "--bogus"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"curve"}).status == 2);
  CHECK(run({"preset", "fig9"}).status == 2);
  CHECK(run({"curve", "--scenario", kFig2a16, "--mode", "sideways"}).status == 2);

  for (const std::string sub : {"budget", "curve", "floor", "required-snr", "mc", "preset"}) {
    const Run help = run({sub, "--help"});
    CAPTURE(sub);
    CHECK(help.status == 0);
    if (sub != "budget" && sub != "preset") CHECK(help.out.find("--scenario") != std::string::npos);
  }
  const Run mc_help = run({"mc", "--help"});
  for (const char* flag : {"--seed", "--symbols", "--workers", "--snr-from", "--snr-to",
                           "--snr-step", "--mode"}) {
    CHECK(mc_help.out.find(flag) != std::string::npos);
  }
  CHECK(run({"required-snr", "--help"}).out.find("--target") != std::string::npos);
  CHECK(run({"preset", "--help"}).out.find("--preset") != std::string::npos);
}

TEST_CASE("validation failures exit with status 2") {
  const auto path = std::filesystem::temp_directory_path() / "eepn_bad.json";
  std::ofstream(path) << R"({"link": {"length_km": 2000},
    "lasers": {"tx_linewidth_khz": 100, "lo_linewidth_khz": -1},
    "modulation": {"level": 4, "symbol_rate_gbaud": 28}})";
  const Run r = run({"budget", "--scenario", path.string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("lo_linewidth") != std::string::npos);
  std::filesystem::remove(path);
}
