#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wwr/annotations.hpp"
#include "wwr/error.hpp"
#include "wwr/types.hpp"

namespace wwr {

// Rasterizes the union of the polygons into a binary mask.
//
// A pixel (i, j) is set iff its center (i+0.5, j+0.5) lies inside some
// polygon under the even-odd rule. The tie convention is half-open: an edge
// spans [min(y), max(y)) vertically, and a span covers centers in
// [x_left, x_right), so each vertex belongs to the edge going upward and a
// center exactly on a right/bottom boundary is outside. Horizontal edges
// never cross a scanline. Self-intersecting polygons are fine (even-odd is
// well defined for them); coordinates outside the raster contribute only
// where centers fall in bounds.
inline BinaryMask rasterize_polygons(const std::vector<PolygonAnnotation>& polygons,
                                     int width, int height) {
  if (width < 1 || height < 1)
    throw ValidationError("raster dimensions must be >= 1");
  BinaryMask mask(width, height);

  std::vector<double> crossings;
  for (const auto& poly : polygons) {
    const auto& pts = poly.points;
    const std::size_t n = pts.size();
    if (n < 3) continue;

    double ymin = pts[0].y, ymax = pts[0].y;
    for (const auto& p : pts) {
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    // Rows whose center satisfies ymin <= j+0.5 < ymax.
    const int j_begin = std::max(0, static_cast<int>(std::ceil(ymin - 0.5)));
    const int j_end = std::min(height - 1, static_cast<int>(std::ceil(ymax - 0.5)) - 1);

    for (int j = j_begin; j <= j_end; ++j) {
      const double y = j + 0.5;
      crossings.clear();
      for (std::size_t k = 0; k < n; ++k) {
        const Point& a = pts[k];
        const Point& b = pts[(k + 1) % n];
        if ((a.y <= y) == (b.y <= y)) continue;  // no crossing (half-open)
        crossings.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
      }
      if (crossings.empty()) continue;
      std::sort(crossings.begin(), crossings.end());
      // Crossing count is even; centers in [c(2k), c(2k+1)) are inside.
      for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
        int i0 = static_cast<int>(std::ceil(crossings[k] - 0.5));
        int i1 = static_cast<int>(std::ceil(crossings[k + 1] - 0.5)) - 1;
        i0 = std::max(i0, 0);
        i1 = std::min(i1, width - 1);
        for (int i = i0; i <= i1; ++i) mask.set(i, j, true);
      }
    }
  }
  return mask;
}

// Stamps the window mask onto the base label map: every set pixel becomes
// window_class, nothing else changes. Window wins over any base class.
inline LabelMap fuse_labels(const LabelMap& base, const BinaryMask& windows,
                            const ClassConfig& cfg) {
  cfg.validate();
  if (base.width != windows.width || base.height != windows.height)
    throw ShapeError("label map is " + std::to_string(base.width) + "x" +
                     std::to_string(base.height) + " but mask is " +
                     std::to_string(windows.width) + "x" + std::to_string(windows.height));
  LabelMap out = base;
  const std::size_t n = out.classes.size();
  for (std::size_t i = 0; i < n; ++i)
    if (windows.bits[i]) out.classes[i] = cfg.window_class;
  return out;
}

// True exactly where the map carries class_index.
inline BinaryMask mask_from_label(const LabelMap& map, std::uint8_t class_index) {
  BinaryMask out(map.width, map.height);
  const std::size_t n = map.classes.size();
  for (std::size_t i = 0; i < n; ++i)
    out.bits[i] = map.classes[i] == class_index ? 1 : 0;
  return out;
}

}  // namespace wwr
