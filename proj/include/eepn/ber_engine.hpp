#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "eepn/core_model.hpp"

namespace eepn {

/// How the phase error enters the erfc term of the differential m-PSK BER
/// integral.
///
/// `as_printed` keeps the erfc argument independent of the integration
/// variable, so the integral collapses to (1/log2 m) erfc(G sqrt(SNR)) and
/// has no phase-noise floor. `offset_folded` shifts the angular half-width
/// pi/m by +/- eps and averages the two erfc terms; as SNR grows it tends to
/// (1/log2 m) P(|eps| > pi/m), the EEPN-induced BER floor.
enum class BerMode { as_printed, offset_folded };

enum class SnrConvention { per_symbol, per_bit };

std::string_view to_string(BerMode mode);
std::string_view to_string(SnrConvention convention);

struct BerModelConfig {
  BerMode mode = BerMode::offset_folded;
  double quadrature_halfwidth = 10.0;  ///< range in units of the eps std s
  int quadrature_points = 4001;        ///< odd, >= 101
  SnrConvention snr_convention = SnrConvention::per_symbol;

  void validate() const;
};

struct BerPoint {
  double snr_linear = 0.0;
  double ber = 0.0;
  BerMode mode = BerMode::offset_folded;
};

struct BerCurvePoint {
  double snr_db = 0.0;
  BerPoint point;
};

using BerCurve = std::vector<BerCurvePoint>;

/// Complementary error function. Negative arguments go through
/// erfc(x) = 2 - erfc(-x).
double erfc(double x);

/// Standard deviation of eps implied by the Gaussian weight
/// exp(-8 eps^2 / (m^2 sigma^2)): s = m * sigma / 4.
double eps_stddev(int level, double sigma_total);

/// Prefactor times Gaussian weight. Integrates to 1/log2(m) over the real
/// line.
double eps_weight(double eps, int level, double sigma_total);

/// The erfc factor of the integrand (the part multiplied by eps_weight).
double erfc_term(double eps, double snr_linear, int level, BerMode mode);

/// Full integrand: eps_weight * erfc_term.
double ber_integrand(double eps, double snr_linear, int level,
                     double sigma_total, BerMode mode);

/// Integrates eps_weight(eps) * term(eps) over [-H s, H s] with composite
/// Simpson, doubling the node count up to twice until two successive results
/// agree to 1e-9 relative. Throws non_convergence otherwise.
double integrate_over_eps(const std::function<double(double)>& term, int level,
                          double sigma_total, const BerModelConfig& cfg);

/// Analytical BER at one SNR (interpreted per cfg.snr_convention).
BerPoint ber_mpsk(double snr_linear, int level, double sigma_total,
                  const BerModelConfig& cfg);

/// SNR -> infinity limit, (1/log2 m) erfc(2 sqrt(2) pi / (m^2 sigma)).
/// Zero in as_printed mode, which has no floor for any sigma.
double ber_floor(int level, double sigma_total, const BerModelConfig& cfg);

/// SNR in dB at which ber_mpsk hits target_ber, by bisection over
/// [-10, 60] dB.
double required_snr(double target_ber, int level, double sigma_total,
                    const BerModelConfig& cfg);

BerCurve ber_curve(std::span<const double> snr_grid_db, int level,
                   const NoiseBudget& budget, const BerModelConfig& cfg);

}  // namespace eepn
