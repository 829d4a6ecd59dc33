#pragma once

#include <string>
#include <vector>

namespace polyiso::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Log-log line plot; non-positive samples are dropped. Output depends only on the input.
std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series);

}  // namespace polyiso::cli
