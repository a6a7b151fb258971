#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wwr/error.hpp"

namespace wwr {

// Class index reserved for pixels excluded from all metrics (padding etc.).
inline constexpr std::uint8_t kIgnoreIndex = 255;

// Highest regular class index of the 150-category scene-parsing taxonomy
// (0 = unlabeled, 1..150 = classes).
inline constexpr std::uint8_t kMaxClassIndex = 150;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// 8-bit raster, interleaved. channels is 1 (gray) or 3 (RGB).
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;

  RasterImage() = default;
  RasterImage(int w, int h, int c, std::uint8_t fill = 0)
      : width(w), height(h), channels(c) {
    if (w < 1 || h < 1) throw ValidationError("image dimensions must be >= 1");
    if (c != 1 && c != 3) throw ValidationError("image channels must be 1 or 3");
    data.assign(static_cast<std::size_t>(w) * h * c, fill);
  }

  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  bool operator==(const RasterImage&) const = default;
};

// 32-bit float image, planar channel-major (all R, then G, then B).
struct FloatImage {
  static constexpr int channels = 3;

  int width = 0;
  int height = 0;
  std::vector<float> data;

  FloatImage() = default;
  FloatImage(int w, int h, float fill = 0.0f) : width(w), height(h) {
    if (w < 1 || h < 1) throw ValidationError("image dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(channels) * w * h, fill);
  }

  float& at(int c, int x, int y) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float at(int c, int x, int y) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  bool operator==(const FloatImage&) const = default;
};

// Row-major boolean raster; true marks a window pixel.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // 0 or 1

  BinaryMask() = default;
  BinaryMask(int w, int h, bool fill = false) : width(w), height(h) {
    if (w < 1 || h < 1) throw ValidationError("mask dimensions must be >= 1");
    bits.assign(static_cast<std::size_t>(w) * h, fill ? 1 : 0);
  }

  bool get(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) {
    bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  std::size_t count_true() const {
    std::size_t n = 0;
    for (auto b : bits) n += b != 0;
    return n;
  }
  bool operator==(const BinaryMask&) const = default;
};

// Row-major 8-bit class index per pixel. Valid values are [0, 150] plus the
// ignore index 255.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> classes;

  LabelMap() = default;
  LabelMap(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
    if (w < 1 || h < 1) throw ValidationError("label map dimensions must be >= 1");
    classes.assign(static_cast<std::size_t>(w) * h, fill);
  }

  std::uint8_t& at(int x, int y) {
    return classes[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t at(int x, int y) const {
    return classes[static_cast<std::size_t>(y) * width + x];
  }
  bool operator==(const LabelMap&) const = default;
};

inline bool valid_class_value(std::uint8_t v) {
  return v <= kMaxClassIndex || v == kIgnoreIndex;
}

// Class indices of the label maps this pipeline cares about.
struct ClassConfig {
  std::uint8_t building_class = 2;
  std::uint8_t window_class = 9;
  std::uint8_t ignore_index = kIgnoreIndex;

  void validate() const {
    if (building_class == window_class)
      throw ValidationError("building and window class must differ");
    if (building_class == ignore_index || window_class == ignore_index)
      throw ValidationError("class index collides with ignore index");
  }
};

}  // namespace wwr
