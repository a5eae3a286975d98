#pragma once

#include <cstdint>
#include <string_view>

#include "eepn/core_model.hpp"

namespace eepn {

/// How the EEPN phase is laid onto the carrier phase process.
///
/// increment_matched folds EEPN into the Wiener walk so the differential
/// phase error has variance var_total. iid adds an independent per-symbol
/// phase of variance var_eepn instead, which contributes 2*var_eepn to the
/// differential error.
enum class EepnProcess { increment_matched, iid };

std::string_view to_string(EepnProcess process);

struct McConfig {
  std::uint64_t n_symbols = 10'000'000;
  std::uint64_t seed = 1;
  EepnProcess eepn_process = EepnProcess::increment_matched;
  unsigned n_workers = 0;  ///< 0 selects std::thread::hardware_concurrency()
};

struct McResult {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits_total = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t symbols_total = 0;
  double ber_hat = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  /// Empirical variance of the carrier phase increments phi_k - phi_{k-1}.
  double increment_variance = 0.0;

  double ci_half_width() const { return 0.5 * (ci95_high - ci95_low); }
};

/// Symbol-level simulation of a differentially detected, Gray-mapped m-PSK
/// link with Wiener laser phase noise, EEPN and AWGN.
///
/// Every symbol k draws its random variates from a generator keyed on
/// (seed, k), so the counts do not depend on n_workers. The first symbol is a
/// phase reference and carries no data.
///
/// snr_linear is on the same axis as ber_mpsk: the complex noise has total
/// variance 1 / (2 snr) for unit symbol energy, the scaling under which
/// erfc(G sqrt(SNR)) is the leading-order differential detection error rate.
McResult simulate(const ModulationSpec& mod, const NoiseBudget& budget,
                  double snr_linear, const McConfig& mc);

McResult simulate(const LinkParams& link, const LaserParams& lasers,
                  const ModulationSpec& mod, double snr_linear,
                  const McConfig& mc);

}  // namespace eepn
