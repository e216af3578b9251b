#pragma once

#include <string>
#include <vector>

// Minimal deterministic SVG line plots: axes, ticks, polylines, error bars
// and a legend. Output is a pure function of the input data.

namespace tbl::svg {

struct Series {
  std::string label;
  std::string color;  // any SVG color string
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yerr;  // optional; empty for no error bars
};

std::string render_plot(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<Series>& series, int width = 860,
                        int height = 520);

}  // namespace tbl::svg
