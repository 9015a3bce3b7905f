#pragma once

// Minimal SVG line charts for quick looks at the CSV outputs.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace stirap {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Optional shaded band (e.g. the 98% interval), same length as x.
  std::vector<double> band_low;
  std::vector<double> band_high;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::optional<double> y_min;
  std::optional<double> y_max;
  std::vector<PlotSeries> series;
};

/// Throws IoError if the file cannot be written.
void write_svg_plot(const std::filesystem::path& path, const PlotSpec& plot);

}  // namespace stirap
