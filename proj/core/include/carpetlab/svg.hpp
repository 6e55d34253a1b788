#pragma once

#include <optional>
#include <string>

#include "carpetlab/geometry.hpp"

namespace carpetlab {

struct RenderOptions {
  int pixel_size = 720;          // square viewport, unit square stretched to it
  bool color_components = false; // palette by connected component of the approximation
  std::string fill = "#d64545";
  EnumBudget budget;
};

/// SVG 1.1 document with one filled rectangle per rank-k basic rectangle,
/// drawn on the integer n^k x m^k grid (y up). k = 0 draws the unit square
/// outline. Output is byte-deterministic for fixed inputs.
std::string render_svg(const CarpetSpec& spec, long k, const RenderOptions& options);

/// Unit cells on a grid_w x grid_h grid (y up), filled by component color.
/// component_of maps cell index to component id; pieces of one component
/// share a palette entry.
std::string render_cells_svg(std::uint64_t grid_w, std::uint64_t grid_h,
                             const std::vector<std::pair<std::uint64_t, std::uint64_t>>& cells,
                             const std::vector<std::uint32_t>& component_of, int pixel_size);

/// Simple deterministic polyline plot of (alpha, h) spectrum samples.
struct PlotPoint {
  double x = 0;
  double y = 0;
};
std::string render_curve_svg(const std::vector<PlotPoint>& points, const std::string& x_label,
                             const std::string& y_label);

}  // namespace carpetlab
