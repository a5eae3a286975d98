#include "eepn/mc_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "eepn/error.hpp"
#include "eepn/gray.hpp"
#include "eepn/wilson.hpp"

namespace eepn {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// splitmix64 stream; symbol k of a run starts at mix64(mix64(seed) + k).
class SymbolStream {
 public:
  using result_type = std::uint64_t;

  SymbolStream(std::uint64_t seed, std::uint64_t symbol)
      : state_(mix64(mix64(seed) + symbol)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += kGolden;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

struct SymbolDraws {
  std::uint32_t data = 0;  // differential index
  double walk = 0.0;       // unit-variance increment
  double eepn = 0.0;       // unit-variance iid EEPN phase
  std::complex<double> noise;
};

SymbolDraws draw_symbol(std::uint64_t seed, std::uint64_t k, int level,
                        double noise_std) {
  SymbolStream rng(seed, k);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(level - 1));
  std::normal_distribution<double> normal;
  SymbolDraws d;
  d.data = pick(rng);
  d.walk = normal(rng);
  d.eepn = normal(rng);
  const double re = normal(rng);
  const double im = normal(rng);
  d.noise = {noise_std * re, noise_std * im};
  return d;
}

struct Tally {
  std::uint64_t bit_errors = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t pairs = 0;
  double increment_sum = 0.0;
  double increment_sq_sum = 0.0;
};

struct PhaseModel {
  int level;
  double noise_std;   // per quadrature
  double walk_std;    // Wiener increment std
  double eepn_std;    // iid EEPN phase std, 0 in increment_matched mode
};

Tally run_block(const PhaseModel& model, std::uint64_t seed, std::uint64_t begin,
                std::uint64_t end) {
  Tally t;
  const double step = 2.0 * std::numbers::pi / model.level;
  const auto mask = static_cast<std::uint32_t>(model.level - 1);
  const std::uint64_t first = std::max<std::uint64_t>(begin, 1);
  if (first >= end) return t;

  SymbolDraws prev = draw_symbol(seed, first - 1, model.level, model.noise_std);
  for (std::uint64_t k = first; k < end; ++k) {
    const SymbolDraws cur = draw_symbol(seed, k, model.level, model.noise_std);
    const double increment =
        model.walk_std * cur.walk + model.eepn_std * (cur.eepn - prev.eepn);
    const double rotation = step * cur.data + increment;

    // Noise is expressed in each symbol's own phase frame, so only the
    // phase difference between the pair enters the product.
    const std::complex<double> r_prev = 1.0 + prev.noise;
    const std::complex<double> r_cur = std::polar(1.0, rotation) * (1.0 + cur.noise);
    const double detected_phase = std::arg(r_cur * std::conj(r_prev));
    const auto decided = static_cast<std::uint32_t>(
                             static_cast<std::int64_t>(std::lround(detected_phase / step))) &
                         mask;

    const std::uint32_t diff = gray_encode(cur.data, model.level) ^
                               gray_encode(decided, model.level);
    t.bit_errors += static_cast<std::uint64_t>(std::popcount(diff));
    t.symbol_errors += diff != 0 ? 1 : 0;
    t.increment_sum += increment;
    t.increment_sq_sum += increment * increment;
    ++t.pairs;
    prev = cur;
  }
  return t;
}

}  // namespace

std::string_view to_string(EepnProcess process) {
  return process == EepnProcess::iid ? "iid" : "increment_matched";
}

McResult simulate(const ModulationSpec& mod, const NoiseBudget& budget,
                  double snr_linear, const McConfig& mc) {
  mod.validate();
  if (mc.n_symbols < 2) fail_validation("n_symbols must be >= 2");
  if (!std::isfinite(snr_linear) || snr_linear <= 0.0) {
    fail_validation("snr_linear must be finite and > 0");
  }
  if (budget.var_tx < 0.0 || budget.var_lo < 0.0 || budget.var_eepn < 0.0 ||
      budget.var_total < 0.0) {
    fail_validation("noise budget variances must be >= 0");
  }
  if (mc.eepn_process == EepnProcess::iid && budget.var_cross != 0.0) {
    fail_validation("iid EEPN process does not support rho != 0");
  }

  PhaseModel model{mod.level, std::sqrt(0.25 / snr_linear), 0.0, 0.0};
  if (mc.eepn_process == EepnProcess::increment_matched) {
    model.walk_std = std::sqrt(budget.var_total);
  } else {
    model.walk_std = std::sqrt(budget.var_tx + budget.var_lo);
    model.eepn_std = std::sqrt(budget.var_eepn);
  }

  unsigned workers = mc.n_workers != 0 ? mc.n_workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(workers, 1, mc.n_symbols));

  std::vector<Tally> tallies(workers);
  const std::uint64_t chunk = mc.n_symbols / workers;
  const std::uint64_t extra = mc.n_symbols % workers;
  auto bounds = [&](unsigned w) {
    const std::uint64_t begin = w * chunk + std::min<std::uint64_t>(w, extra);
    return std::pair{begin, begin + chunk + (w < extra ? 1 : 0)};
  };

  if (workers == 1) {
    tallies[0] = run_block(model, mc.seed, 0, mc.n_symbols);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        const auto [begin, end] = bounds(w);
        tallies[w] = run_block(model, mc.seed, begin, end);
      });
    }
  }

  Tally total;
  for (const Tally& t : tallies) {
    total.bit_errors += t.bit_errors;
    total.symbol_errors += t.symbol_errors;
    total.pairs += t.pairs;
    total.increment_sum += t.increment_sum;
    total.increment_sq_sum += t.increment_sq_sum;
  }

  McResult r;
  r.bit_errors = total.bit_errors;
  r.symbol_errors = total.symbol_errors;
  r.symbols_total = total.pairs;
  r.bits_total = total.pairs * static_cast<std::uint64_t>(mod.bits_per_symbol());
  r.ber_hat = static_cast<double>(r.bit_errors) / static_cast<double>(r.bits_total);
  const Interval ci = wilson_interval(r.bit_errors, r.bits_total);
  r.ci95_low = ci.low;
  r.ci95_high = ci.high;
  const double n = static_cast<double>(total.pairs);
  const double mean = total.increment_sum / n;
  r.increment_variance = std::max(0.0, total.increment_sq_sum / n - mean * mean);
  return r;
}

McResult simulate(const LinkParams& link, const LaserParams& lasers,
                  const ModulationSpec& mod, double snr_linear,
                  const McConfig& mc) {
  return simulate(mod, noise_budget(link, lasers, mod), snr_linear, mc);
}

}  // namespace eepn
