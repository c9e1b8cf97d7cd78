#pragma once

#include <span>
#include <vector>

namespace zeno {

// Aitken's delta-squared estimate from three consecutive terms. Returns x2
// unchanged when the second difference vanishes (sequence already stationary).
double aitken_delta2(double x0, double x1, double x2);

// Aitken transform of the whole sequence; the result is two entries shorter.
std::vector<double> aitken_transform(std::span<const double> xs);

struct TailEstimate {
  double limit = 0.0;
  // |difference| between the last two entries of the deepest pass.
  double last_change = 0.0;
  int passes = 0;
};

// Applies the Aitken transform up to max_passes times, as long as each pass
// leaves two or more entries, and reports the last entry of the deepest pass.
TailEstimate accelerate_tail(std::span<const double> xs, int max_passes);

}  // namespace zeno
