#include "zeno/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zeno {

double aitken_delta2(double x0, double x1, double x2) {
  const double d1 = x2 - x1;
  const double second = d1 - (x1 - x0);
  const double scale = std::max({std::abs(x0), std::abs(x1), std::abs(x2)});
  // A second difference at rounding level carries no information.
  if (std::abs(second) <= 16.0 * std::numeric_limits<double>::epsilon() * scale) return x2;
  return x2 - d1 * d1 / second;
}

std::vector<double> aitken_transform(std::span<const double> xs) {
  std::vector<double> out;
  if (xs.size() < 3) return out;
  out.reserve(xs.size() - 2);
  for (std::size_t i = 2; i < xs.size(); ++i) out.push_back(aitken_delta2(xs[i - 2], xs[i - 1], xs[i]));
  return out;
}

TailEstimate accelerate_tail(std::span<const double> xs, int max_passes) {
  TailEstimate est;
  if (xs.empty()) return est;
  std::vector<double> current(xs.begin(), xs.end());
  // Each pass must leave at least two entries so the change can be reported.
  while (est.passes < max_passes && current.size() >= 4) {
    current = aitken_transform(current);
    ++est.passes;
  }
  est.limit = current.back();
  est.last_change = current.size() >= 2 ? std::abs(current.back() - current[current.size() - 2])
                                        : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace zeno
