#pragma once

#include <cstdint>

namespace eepn {

struct Interval {
  double low = 0.0;
  double high = 0.0;

  double half_width() const { return 0.5 * (high - low); }
};

/// Wilson score interval for `successes` out of `trials`; z = 1.96 gives
/// 95% coverage.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

}  // namespace eepn
