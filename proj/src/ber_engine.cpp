#include "eepn/ber_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "eepn/error.hpp"
#include "eepn/quadrature.hpp"
#include "eepn/units.hpp"

namespace eepn {
namespace {

constexpr double kRefineTolerance = 1e-9;
// BER values below this are compared in absolute terms when refining.
constexpr double kRefineFloor = 1e-12;
constexpr int kMaxDoublings = 2;

constexpr double kSnrLowDb = -10.0;
constexpr double kSnrHighDb = 60.0;
constexpr int kMaxBisections = 80;
constexpr double kTargetTolerance = 1e-3;

double log2_level(int level) {
  return static_cast<double>(std::countr_zero(static_cast<unsigned>(level)));
}

void require_level(int level) {
  if (!is_supported_level(level)) {
    fail_validation("level must be a power of two >= 4, got " +
                    std::to_string(level));
  }
}

void require_sigma(double sigma_total) {
  if (!std::isfinite(sigma_total) || sigma_total < 0.0) {
    fail_validation("sigma_total must be finite and >= 0");
  }
}

// sqrt(1 + sin a) - sqrt(1 - sin a) with a clamped to [-pi/2, pi/2].
double shifted_margin(double angle) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double s = std::sin(std::clamp(angle, -half_pi, half_pi));
  return std::sqrt(1.0 + s) - std::sqrt(1.0 - s);
}

double symbol_snr(double snr_linear, int level, SnrConvention convention) {
  return convention == SnrConvention::per_bit ? snr_linear * log2_level(level)
                                              : snr_linear;
}

bool close_enough(double coarse, double fine) {
  return std::abs(coarse - fine) <=
         kRefineTolerance * std::max(std::abs(fine), kRefineFloor);
}

}  // namespace

std::string_view to_string(BerMode mode) {
  return mode == BerMode::as_printed ? "as_printed" : "offset_folded";
}

std::string_view to_string(SnrConvention convention) {
  return convention == SnrConvention::per_bit ? "per_bit" : "per_symbol";
}

void BerModelConfig::validate() const {
  if (quadrature_points < 101 || quadrature_points % 2 == 0) {
    fail_validation("quadrature_points must be odd and >= 101, got " +
                    std::to_string(quadrature_points));
  }
  if (!std::isfinite(quadrature_halfwidth) || quadrature_halfwidth < 6.0) {
    fail_validation("quadrature_halfwidth must be >= 6");
  }
}

double erfc(double x) {
  if (x < 0.0) return 2.0 - std::erfc(-x);
  return std::erfc(x);
}

double eps_stddev(int level, double sigma_total) {
  return level * sigma_total / 4.0;
}

double eps_weight(double eps, int level, double sigma_total) {
  const double s = eps_stddev(level, sigma_total);
  const double z = eps / s;
  const double prefactor =
      1.0 / (std::sqrt(2.0 * std::numbers::pi) * s * log2_level(level));
  return prefactor * std::exp(-0.5 * z * z);
}

double erfc_term(double eps, double snr_linear, int level, BerMode mode) {
  const double root_snr = std::sqrt(snr_linear);
  if (mode == BerMode::as_printed) {
    return erfc(decision_margin(level) * root_snr);
  }
  const double half_width = std::numbers::pi / level;
  const double upper = erfc(shifted_margin(half_width + eps) * root_snr);
  const double lower = erfc(shifted_margin(half_width - eps) * root_snr);
  return 0.5 * (upper + lower);
}

double ber_integrand(double eps, double snr_linear, int level,
                     double sigma_total, BerMode mode) {
  require_level(level);
  if (!(sigma_total > 0.0) || !std::isfinite(sigma_total)) {
    fail_validation("ber_integrand needs sigma_total > 0");
  }
  return eps_weight(eps, level, sigma_total) *
         erfc_term(eps, snr_linear, level, mode);
}

double integrate_over_eps(const std::function<double(double)>& term, int level,
                          double sigma_total, const BerModelConfig& cfg) {
  cfg.validate();
  require_level(level);
  if (!(sigma_total > 0.0) || !std::isfinite(sigma_total)) {
    fail_validation("integrate_over_eps needs sigma_total > 0");
  }
  const double reach = cfg.quadrature_halfwidth * eps_stddev(level, sigma_total);
  auto integrand = [&](double eps) {
    return eps_weight(eps, level, sigma_total) * term(eps);
  };

  // The clamp of the shifted sine argument at +/-pi/2 leaves kinks in the
  // offset_folded integrand, and at high SNR the erfc factor steps at
  // +/-pi/m. Panels end at both so Simpson keeps its order.
  std::vector<double> edges{-reach, reach};
  if (cfg.mode == BerMode::offset_folded) {
    const double half_width = std::numbers::pi / level;
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (double kink : {half_width, half_pi - half_width, half_pi + half_width}) {
      if (kink < reach && std::find(edges.begin(), edges.end(), kink) == edges.end()) {
        edges.push_back(kink);
        edges.push_back(-kink);
      }
    }
    std::sort(edges.begin(), edges.end());
  }

  auto points = static_cast<std::size_t>(cfg.quadrature_points);
  double previous = simpson_panels(integrand, edges, points);
  for (int doubling = 0; doubling <= kMaxDoublings; ++doubling) {
    points = 2 * points - 1;
    const double current = simpson_panels(integrand, edges, points);
    if (close_enough(previous, current)) return current;
    previous = current;
  }
  throw Error(ErrorKind::non_convergence,
              "quadrature did not converge to 1e-9 relative after " +
                  std::to_string(kMaxDoublings) + " refinements (" +
                  std::to_string(points) + " nodes)");
}

BerPoint ber_mpsk(double snr_linear, int level, double sigma_total,
                  const BerModelConfig& cfg) {
  cfg.validate();
  require_level(level);
  require_sigma(sigma_total);
  if (!std::isfinite(snr_linear) || snr_linear < 0.0) {
    fail_validation("snr_linear must be finite and >= 0");
  }
  const double snr = symbol_snr(snr_linear, level, cfg.snr_convention);

  double ber = 0.0;
  if (sigma_total == 0.0) {
    ber = erfc(decision_margin(level) * std::sqrt(snr)) / log2_level(level);
  } else {
    ber = integrate_over_eps(
        [&](double eps) { return erfc_term(eps, snr, level, cfg.mode); }, level,
        sigma_total, cfg);
  }
  return {snr_linear, std::clamp(ber, 0.0, 1.0), cfg.mode};
}

double ber_floor(int level, double sigma_total, const BerModelConfig& cfg) {
  require_level(level);
  require_sigma(sigma_total);
  if (sigma_total == 0.0 || cfg.mode == BerMode::as_printed) return 0.0;
  const double m = level;
  const double arg = 2.0 * std::numbers::sqrt2 * std::numbers::pi / (m * m * sigma_total);
  return erfc(arg) / log2_level(level);
}

double required_snr(double target_ber, int level, double sigma_total,
                    const BerModelConfig& cfg) {
  if (!std::isfinite(target_ber) || target_ber <= 0.0 || target_ber >= 1.0) {
    fail_validation("target BER must lie in (0, 1)");
  }
  const double floor = ber_floor(level, sigma_total, cfg);
  if (target_ber <= floor) {
    throw Error(ErrorKind::below_floor,
                "target BER " + std::to_string(target_ber) +
                    " is at or below the BER floor " + std::to_string(floor));
  }
  auto ber_at = [&](double db) {
    return ber_mpsk(units::snr_db_to_linear(db), level, sigma_total, cfg).ber;
  };

  if (target_ber >= ber_at(kSnrLowDb)) {
    const double ber_zero = ber_mpsk(0.0, level, sigma_total, cfg).ber;
    if (target_ber <= ber_zero) return kSnrLowDb;
    fail_validation("target BER " + std::to_string(target_ber) +
                    " is above the maximum BER " + std::to_string(ber_zero));
  }

  double lo = kSnrLowDb;
  double hi = kSnrHighDb;
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < kMaxBisections; ++i) {
    mid = 0.5 * (lo + hi);
    const double ber = ber_at(mid);
    if (std::abs(ber - target_ber) <= kTargetTolerance * target_ber) return mid;
    if (ber > target_ber) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (kSnrHighDb - lo < 1e-9) {
    throw Error(ErrorKind::below_floor,
                "target BER " + std::to_string(target_ber) +
                    " is not reached below " + std::to_string(kSnrHighDb) + " dB");
  }
  return mid;
}

BerCurve ber_curve(std::span<const double> snr_grid_db, int level,
                   const NoiseBudget& budget, const BerModelConfig& cfg) {
  for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
    if (!std::isfinite(snr_grid_db[i])) {
      fail_validation("snr grid index " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(snr_grid_db[i] > snr_grid_db[i - 1])) {
      fail_validation("snr grid must be strictly increasing (index " +
                      std::to_string(i) + ")");
    }
  }
  const double sigma = budget.sigma_total();
  BerCurve curve;
  curve.reserve(snr_grid_db.size());
  for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
    try {
      curve.push_back(
          {snr_grid_db[i],
           ber_mpsk(units::snr_db_to_linear(snr_grid_db[i]), level, sigma, cfg)});
    } catch (const Error& e) {
      throw Error(e.kind(), "snr grid index " + std::to_string(i) + " (" +
                                std::to_string(snr_grid_db[i]) + " dB): " + e.what());
    }
  }
  return curve;
}

}  // namespace eepn
