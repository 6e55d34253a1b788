#include "carpetlab/svg.hpp"

#include <cinttypes>
#include <cstdio>

#include "carpetlab/errors.hpp"

namespace carpetlab {

namespace {

const char* kPalette[] = {
    "#d64545", "#3b6fb5", "#3f9d56", "#c78f2c", "#7a4fb0", "#2ca8a0",
    "#b0485f", "#6b7f2c", "#8a5a36", "#4a5fd0", "#9d3f8f", "#2c7fc7",
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string render_svg(const CarpetSpec& spec, long k, const RenderOptions& options) {
  std::string out;
  const int px = options.pixel_size;
  if (k == 0) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(px) +
           "\" height=\"" + std::to_string(px) + "\" viewBox=\"0 0 1 1\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"none\" stroke=\"#222222\" "
           "stroke-width=\"0.004\"/>\n</svg>\n";
    return out;
  }
  if (k < 0) throw Error(Errc::ParseError, "render needs rank k >= 0");

  const std::uint64_t w = [&] {
    std::uint64_t v = 1;
    for (long i = 0; i < k; ++i) v *= static_cast<std::uint64_t>(spec.n());
    return v;
  }();
  const std::uint64_t h = [&] {
    std::uint64_t v = 1;
    for (long i = 0; i < k; ++i) v *= static_cast<std::uint64_t>(spec.m());
    return v;
  }();

  // One grid cell per basic rectangle; the viewBox is stretched to the unit
  // square so the carpet keeps its true aspect.
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(px) +
         "\" height=\"" + std::to_string(px) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
         std::to_string(h) + "\" preserveAspectRatio=\"none\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) + "\" height=\"" +
         std::to_string(h) + "\" fill=\"#ffffff\"/>\n";

  std::vector<std::uint32_t> component_of;
  if (options.color_components) {
    ComponentPartition part = components(spec, k, ApproxKind::TildeApprox, options.budget);
    component_of.assign(part.piece_count(), 0);
    for (std::uint32_t c = 0; c < part.cells.size(); ++c)
      for (std::uint32_t member : part.cells[c]) component_of[member] = c;
  }

  std::uint32_t index = 0;
  for_each_basic(spec, k, options.budget, [&](const BasicRectangle& r) {
    std::uint64_t x = 0, y = 0;
    for (int sx : r.x_word.symbols) x = x * static_cast<std::uint64_t>(spec.n()) + static_cast<std::uint64_t>(sx);
    for (int sy : r.y_word.symbols) y = y * static_cast<std::uint64_t>(spec.m()) + static_cast<std::uint64_t>(sy);
    const std::string color =
        options.color_components
            ? kPalette[component_of[index] % (sizeof(kPalette) / sizeof(kPalette[0]))]
            : options.fill;
    out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(h - y - 1) +
           "\" width=\"1\" height=\"1\" fill=\"" + color + "\"/>\n";
    ++index;
  });
  out += "</svg>\n";
  return out;
}

std::string render_cells_svg(std::uint64_t grid_w, std::uint64_t grid_h,
                             const std::vector<std::pair<std::uint64_t, std::uint64_t>>& cells,
                             const std::vector<std::uint32_t>& component_of, int pixel_size) {
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(pixel_size) +
         "\" height=\"" + std::to_string(pixel_size) + "\" viewBox=\"0 0 " +
         std::to_string(grid_w) + " " + std::to_string(grid_h) +
         "\" preserveAspectRatio=\"none\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(grid_w) + "\" height=\"" +
         std::to_string(grid_h) + "\" fill=\"#ffffff\"/>\n";
  for (size_t i = 0; i < cells.size(); ++i) {
    const char* color =
        kPalette[(i < component_of.size() ? component_of[i] : 0) %
                 (sizeof(kPalette) / sizeof(kPalette[0]))];
    out += "<rect x=\"" + std::to_string(cells[i].first) + "\" y=\"" +
           std::to_string(grid_h - cells[i].second - 1) + "\" width=\"1\" height=\"1\" fill=\"" +
           color + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_curve_svg(const std::vector<PlotPoint>& points, const std::string& x_label,
                             const std::string& y_label) {
  const int W = 720, H = 540, pad = 60;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!points.empty()) {
    xmin = xmax = points.front().x;
    ymin = ymax = points.front().y;
    for (const auto& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  auto sx = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad); };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
                    "\" height=\"" + std::to_string(H) + "\" viewBox=\"0 0 " + std::to_string(W) +
                    " " + std::to_string(H) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(W) + "\" height=\"" + std::to_string(H) +
         "\" fill=\"#ffffff\"/>\n";
  out += "<line x1=\"" + std::to_string(pad) + "\" y1=\"" + std::to_string(H - pad) + "\" x2=\"" +
         std::to_string(W - pad) + "\" y2=\"" + std::to_string(H - pad) +
         "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + std::to_string(pad) + "\" y1=\"" + std::to_string(pad) + "\" x2=\"" +
         std::to_string(pad) + "\" y2=\"" + std::to_string(H - pad) +
         "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
  out += "<text x=\"" + std::to_string(W / 2) + "\" y=\"" + std::to_string(H - pad / 4) +
         "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">" + x_label +
         "</text>\n";
  out += "<text x=\"" + std::to_string(pad / 3) + "\" y=\"" + std::to_string(H / 2) +
         "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 " +
         std::to_string(pad / 3) + " " + std::to_string(H / 2) + ")\">" + y_label + "</text>\n";
  if (!points.empty()) {
    out += "<polyline fill=\"none\" stroke=\"#3b6fb5\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < points.size(); ++i) {
      if (i) out += " ";
      out += fixed6(sx(points[i].x)) + "," + fixed6(sy(points[i].y));
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace carpetlab
