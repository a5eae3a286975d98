#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

namespace eepn {

/// Composite Simpson rule over [a, b] with `points` equally spaced nodes.
/// `points` must be odd and >= 3.
template <class Func>
double simpson(const Func& f, double a, double b, std::size_t points) {
  const std::size_t intervals = points - 1;
  const double h = (b - a) / static_cast<double>(intervals);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double x = a + static_cast<double>(i) * h;
    if (i % 2 == 1) {
      odd += f(x);
    } else {
      even += f(x);
    }
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

/// Composite Simpson over consecutive panels [edges[i], edges[i+1]], with
/// roughly `points` nodes in total shared in proportion to panel length.
/// Panel edges are where the integrand may have a kink.
template <class Func>
double simpson_panels(const Func& f, std::span<const double> edges, std::size_t points) {
  const double span = edges.back() - edges.front();
  const auto intervals = static_cast<double>(points - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double share = (edges[i + 1] - edges[i]) / span * intervals;
    auto panel = static_cast<std::size_t>(std::llround(share / 2.0)) * 2;
    panel = std::max<std::size_t>(panel, 2);
    sum += simpson(f, edges[i], edges[i + 1], panel + 1);
  }
  return sum;
}

}  // namespace eepn
