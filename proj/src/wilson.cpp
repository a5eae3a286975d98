#include "eepn/wilson.hpp"

#include <algorithm>
#include <cmath>

#include "eepn/error.hpp"

namespace eepn {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) fail_validation("wilson interval needs at least one trial");
  if (successes > trials) fail_validation("successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double spread = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // Round-off can push a bound past p-hat at the 0 and n edges.
  return {std::clamp(center - spread, 0.0, p), std::clamp(center + spread, p, 1.0)};
}

}  // namespace eepn
