#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvand/fit.hpp"

namespace cvand {

struct Series {
  std::string label;
  std::vector<double> x, y;
  std::optional<SlopeFit> fit;  // drawn as a line; slope goes into the legend
};

/// Static log-log scatter plot. Non-positive points are skipped.
std::string render_loglog(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series);

}  // namespace cvand
