#include <doctest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "eepn/ber_engine.hpp"
#include "eepn/error.hpp"
#include "eepn/units.hpp"

using namespace eepn;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 50-digit erfc, independent of the libm path used by the engine.
double erfc_reference(double x) {
  using big = boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(boost::math::erfc(big(x)));
}

// sigma of the 5 MHz / 5 MHz, 2000 km, 28 GBd DQPSK budget (mpmath).
constexpr double kFig1bSigma = 0.24215489382467576352;

BerModelConfig folded() { return {}; }

BerModelConfig printed() {
  BerModelConfig cfg;
  cfg.mode = BerMode::as_printed;
  return cfg;
}

double ber_db(double db, int m, double sigma, const BerModelConfig& cfg) {
  return ber_mpsk(units::snr_db_to_linear(db), m, sigma, cfg).ber;
}

}  // namespace

TEST_CASE("erfc spot values") {
  CHECK(eepn::erfc(0.0) == 1.0);
  CHECK(std::abs(eepn::erfc(-10.0) - 2.0) < 1e-12);
  CHECK(rel(eepn::erfc(1.0), 0.15729920705028513066) < 1e-14);
  CHECK(eepn::erfc(30.0) >= 0.0);
}

TEST_CASE("erfc against a 50-digit reference on [-6, 10]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pick(-6.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = pick(rng);
    worst = std::max(worst, rel(eepn::erfc(x), erfc_reference(x)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("erfc reflection") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pick(-6.0, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = pick(rng);
    CHECK(std::abs(eepn::erfc(x) + eepn::erfc(-x) - 2.0) <= 1e-13);
  }
}

TEST_CASE("ber_integrand") {
  SUBCASE("modes coincide at eps = 0") {
    for (int m : {4, 8, 16}) {
      CHECK(ber_integrand(0.0, 10.0, m, 0.1, BerMode::as_printed) ==
            ber_integrand(0.0, 10.0, m, 0.1, BerMode::offset_folded));
    }
  }
  SUBCASE("even in eps") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> eps(-2.0, 2.0);
    std::uniform_real_distribution<double> snr(0.0, 200.0);
    for (int i = 0; i < 500; ++i) {
      const double e = eps(rng);
      const double s = snr(rng);
      for (BerMode mode : {BerMode::as_printed, BerMode::offset_folded}) {
        const double a = ber_integrand(e, s, 8, 0.3, mode);
        const double b = ber_integrand(-e, s, 8, 0.3, mode);
        CHECK(std::abs(a - b) <= 1e-15 * std::abs(a));
      }
    }
  }
  SUBCASE("single point value") {
    // 4/(sqrt(2 pi) * 4 * 0.1 * 2) * erfc(2 sin(pi/8) sqrt(10)), 40 digits.
    CHECK(rel(ber_integrand(0.0, 10.0, 4, 0.1, BerMode::as_printed),
              0.0012362031724076029651) < 1e-13);
  }
  SUBCASE("sigma must be positive") {
    CHECK_THROWS_AS(ber_integrand(0.0, 10.0, 4, 0.0, BerMode::as_printed), Error);
  }
}

TEST_CASE("weight-only integral normalizes to 1/log2 m") {
  for (int m : {4, 8, 16}) {
    for (double sigma : {1e-3, 0.1, 0.5}) {
      for (BerModelConfig cfg : {printed(), folded()}) {
        CAPTURE(m);
        CAPTURE(sigma);
        const double total = integrate_over_eps([](double) { return 1.0; }, m, sigma, cfg);
        CHECK(rel(total, 1.0 / std::log2(m)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("ber_mpsk closed form and limits") {
  constexpr double kClosedForm = 3.0987018251454390678e-4;  // 0.5 erfc(G4 sqrt(10))

  SUBCASE("SNR = 0 gives 1/2 for DQPSK") {
    for (double sigma : {0.0, 1e-3, 0.1, 0.5}) {
      CHECK(ber_mpsk(0.0, 4, sigma, printed()).ber == doctest::Approx(0.5).epsilon(1e-9));
    }
  }
  SUBCASE("noiseless path") {
    CHECK(rel(ber_mpsk(10.0, 4, 0.0, printed()).ber, kClosedForm) < 1e-13);
    CHECK(rel(ber_mpsk(10.0, 4, 0.0, folded()).ber, kClosedForm) < 1e-13);
  }
  SUBCASE("quadrature path at tiny sigma") {
    CHECK(rel(ber_mpsk(10.0, 4, 1e-6, printed()).ber, kClosedForm) < 1e-9);
    CHECK(rel(ber_mpsk(10.0, 4, 1e-6, folded()).ber, kClosedForm) < 1e-6);
  }
  SUBCASE("per-bit convention scales SNR by log2 m") {
    BerModelConfig per_bit = folded();
    per_bit.snr_convention = SnrConvention::per_bit;
    for (int m : {4, 8, 16}) {
      CHECK(ber_mpsk(5.0, m, 0.1, per_bit).ber ==
            ber_mpsk(5.0 * std::log2(m), m, 0.1, folded()).ber);
    }
  }
  SUBCASE("provenance tag") {
    CHECK(ber_mpsk(10.0, 4, 0.1, printed()).mode == BerMode::as_printed);
    CHECK(ber_mpsk(10.0, 4, 0.1, folded()).mode == BerMode::offset_folded);
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(ber_mpsk(-1.0, 4, 0.1, folded()), Error);
    CHECK_THROWS_AS(ber_mpsk(1.0, 4, -0.1, folded()), Error);
    CHECK_THROWS_AS(ber_mpsk(1.0, 5, 0.1, folded()), Error);
    BerModelConfig even = folded();
    even.quadrature_points = 4000;
    CHECK_THROWS_AS(ber_mpsk(1.0, 4, 0.1, even), Error);
    BerModelConfig narrow = folded();
    narrow.quadrature_halfwidth = 5.0;
    CHECK_THROWS_AS(ber_mpsk(1.0, 4, 0.1, narrow), Error);
  }
}

TEST_CASE("ber_mpsk is monotone in SNR and sigma") {
  const std::vector<double> grid = [] {
    std::vector<double> g;
    for (double db = -10.0; db <= 40.0; db += 1.0) g.push_back(db);
    return g;
  }();
  for (int m : {4, 8, 16}) {
    for (double sigma : {0.0, 0.01, 0.05, 0.1, 0.25}) {
      for (BerModelConfig cfg : {printed(), folded()}) {
        double previous = 1.0;
        for (double db : grid) {
          const double b = ber_db(db, m, sigma, cfg);
          CHECK(b <= previous);
          CHECK(b >= 0.0);
          previous = b;
        }
      }
    }
  }
  for (int m : {4, 8, 16}) {
    for (double db : {0.0, 10.0, 20.0, 30.0}) {
      double previous = 0.0;
      for (double sigma : {0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3}) {
        const double b = ber_db(db, m, sigma, folded());
        CHECK(b >= previous * (1.0 - 1e-12));
        previous = b;
      }
    }
  }
}

TEST_CASE("modes agree as sigma goes to zero") {
  for (int m : {4, 8, 16}) {
    for (double db = -5.0; db <= 20.0; db += 2.5) {
      const double a = ber_db(db, m, 1e-7, printed());
      const double b = ber_db(db, m, 1e-7, folded());
      CHECK(rel(b, a) <= 1e-6);
    }
  }
}

TEST_CASE("doubling the quadrature nodes changes nothing at 1e-9") {
  BerModelConfig fine = folded();
  fine.quadrature_points = 2 * fine.quadrature_points - 1;
  for (int m : {4, 8, 16}) {
    for (double sigma : {0.01, 0.1, kFig1bSigma}) {
      for (double db : {0.0, 10.0, 20.0, 30.0}) {
        const double coarse = ber_db(db, m, sigma, folded());
        const double dense = ber_db(db, m, sigma, fine);
        if (dense >= 1e-12) CHECK(rel(coarse, dense) < 1e-9);
      }
    }
  }
}

TEST_CASE("ber_floor") {
  CHECK(ber_floor(4, 0.0, folded()) == 0.0);
  CHECK(ber_floor(4, 0.3, printed()) == 0.0);
  // 0.5 erfc(2 sqrt 2 pi / (16 sigma)) with the 40-digit sigma.
  CHECK(rel(ber_floor(4, kFig1bSigma, folded()), 5.9062141121094222252e-4) < 1e-12);

  for (double sigma : {0.01, 0.05, 0.1, 0.3}) {
    CHECK(ber_floor(8, sigma, folded()) > ber_floor(4, sigma, folded()));
    CHECK(ber_floor(16, sigma, folded()) > ber_floor(8, sigma, folded()));
  }
  CHECK_THROWS_AS(ber_floor(4, -1.0, folded()), Error);
}

TEST_CASE("BER approaches the floor from above") {
  for (int m : {4, 8, 16}) {
    for (double sigma : {0.02, 0.05, 0.1, 0.2}) {
      const double floor = ber_floor(m, sigma, folded());
      // Below ~1e-22 the floor mass lies outside the truncated eps range.
      if (floor < 1e-12) continue;
      double previous = 1.0;
      for (double db : {20.0, 30.0, 40.0}) {
        const double b = ber_db(db, m, sigma, folded());
        CHECK(b >= floor);
        CHECK(b <= previous);
        previous = b;
      }
    }
  }
}

TEST_CASE("BER at 40 dB sits within 1% of the floor for the figure budgets") {
  // sigma_total of fig1b 5 MHz, fig2b 56 GBd and fig2a D16PSK.
  struct Case {
    int m;
    double sigma;
  };
  for (Case c : {Case{4, kFig1bSigma}, Case{4, 0.33750}, Case{16, 0.034246},
                 Case{4, 0.5}, Case{8, 0.1}}) {
    const double floor = ber_floor(c.m, c.sigma, folded());
    REQUIRE(floor >= 1e-12);
    const double ratio = ber_db(40.0, c.m, c.sigma, folded()) / floor;
    CAPTURE(c.m);
    CAPTURE(c.sigma);
    CHECK(ratio >= 0.99);
    CHECK(ratio <= 1.01);
  }
}

TEST_CASE("deep-tail floors are not yet reached at 40 dB") {
  // The floor is an SNR -> infinity limit; when it sits far out in the
  // Gaussian tail the residual erfc smoothing still matters at 40 dB. The
  // second case is the fig2b 14 GBd member.
  struct Case {
    int m;
    double sigma;
  };
  for (Case c : {Case{16, 0.0098}, Case{4, 0.18077}}) {
    CAPTURE(c.m);
    const double floor = ber_floor(c.m, c.sigma, folded());
    REQUIRE(floor >= 1e-12);
    const double r40 = ber_db(40.0, c.m, c.sigma, folded()) / floor;
    const double r50 = ber_db(50.0, c.m, c.sigma, folded()) / floor;
    CHECK(r40 > 1.01);
    CHECK(r50 < r40);
    CHECK(r50 < 1.05);
  }
}

TEST_CASE("required_snr") {
  SUBCASE("BER 1/2 sits at the lower bracket") {
    CHECK(required_snr(0.5, 4, 0.0, printed()) == -10.0);
  }
  SUBCASE("inverts the noiseless closed form") {
    const double db = required_snr(3.0987018251454390678e-4, 4, 0.0, printed());
    CHECK(db == doctest::Approx(10.0).epsilon(0.002));
  }
  SUBCASE("round trip above the floor") {
    for (double target : {1e-2, 1e-3}) {
      const double db = required_snr(target, 4, kFig1bSigma, folded());
      CHECK(std::abs(ber_db(db, 4, kFig1bSigma, folded()) - target) <= 1e-3 * target);
    }
  }
  SUBCASE("below the floor") {
    try {
      required_snr(1e-4, 4, kFig1bSigma, folded());
      FAIL("expected below_floor");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::below_floor);
    }
  }
  SUBCASE("above the SNR = 0 BER") {
    try {
      required_snr(0.9, 4, 0.1, folded());
      FAIL("expected validation error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::validation);
    }
  }
  SUBCASE("bad targets") {
    CHECK_THROWS_AS(required_snr(0.0, 4, 0.1, folded()), Error);
    CHECK_THROWS_AS(required_snr(1.0, 4, 0.1, folded()), Error);
  }
}

TEST_CASE("ber_curve") {
  NoiseBudget budget;
  budget.var_total = kFig1bSigma * kFig1bSigma;

  CHECK(ber_curve({}, 4, budget, folded()).empty());

  const std::vector<double> one{12.0};
  const BerCurve single = ber_curve(one, 4, budget, folded());
  REQUIRE(single.size() == 1);
  CHECK(single[0].snr_db == 12.0);
  CHECK(single[0].point.ber == ber_db(12.0, 4, kFig1bSigma, folded()));

  const std::vector<double> grid{0.0, 5.0, 10.0};
  const BerCurve curve = ber_curve(grid, 4, budget, folded());
  REQUIRE(curve.size() == 3);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(curve[i].snr_db == grid[i]);

  const std::vector<double> unsorted{0.0, 5.0, 5.0};
  CHECK_THROWS_AS(ber_curve(unsorted, 4, budget, folded()), Error);

  // Far past the resolution of the default quadrature at this sigma.
  NoiseBudget wide;
  wide.var_total = 0.25;
  const std::vector<double> steep{10.0, 60.0};
  try {
    ber_curve(steep, 8, wide, folded());
    FAIL("expected non-convergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_convergence);
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
}
