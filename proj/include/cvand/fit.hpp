#pragma once

#include <cstddef>
#include <span>

namespace cvand {

/// Ordinary least squares line through (log10 x, log10 y).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t samples = 0;
};

/// Needs at least 3 points with positive, finite x and y and at least two
/// distinct x values.
SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace cvand
