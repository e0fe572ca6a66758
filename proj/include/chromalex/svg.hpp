#pragma once

#include <string>
#include <vector>

namespace chromalex::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Bar {
  std::string label;
  double value = 0.0;
  double ci_half = 0.0;  // half-width of the confidence whisker
};

/// Fixed-layout line chart; output bytes depend only on the inputs.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<Series>& series, int width = 640,
                       int height = 440);

/// Bar chart with optional CI whiskers.
std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<Bar>& bars, int width = 480,
                      int height = 360);

}  // namespace chromalex::svg
