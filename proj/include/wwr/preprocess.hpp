#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "wwr/error.hpp"
#include "wwr/types.hpp"
#include "wwr/util.hpp"

namespace wwr {

// Model input sizes: 520 for the FCN path, 512 for the SegFormer path.
inline constexpr int kFcnInputSize = 520;
inline constexpr int kSegformerInputSize = 512;

// Per-channel normalization constants of the pretraining dataset.
struct NormalizationParams {
  std::array<float, 3> mean{0.485f, 0.456f, 0.406f};
  std::array<float, 3> stddev{0.229f, 0.224f, 0.225f};

  void validate() const {
    for (float s : stddev)
      if (!(s > 0.0f)) throw ValidationError("stddev components must be > 0");
  }
};

namespace detail {

// Half-pixel-aligned source coordinate: src = (dst + 0.5) * scale - 0.5.
inline double src_coord(int dst, double scale) {
  return (dst + 0.5) * scale - 0.5;
}

}  // namespace detail

// Bilinear resize with border clamp; each output sample rounds half up to
// 8 bits. Identity dimensions reproduce the input byte for byte.
inline RasterImage resize_bilinear(const RasterImage& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ValidationError("output dimensions must be >= 1");
  RasterImage out(out_w, out_h, img.channels);
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double fy = detail::src_coord(y, sy);
    const int y0 = static_cast<int>(std::floor(fy));
    const double wy = fy - y0;
    const int ya = clamp_index(y0, img.height);
    const int yb = clamp_index(y0 + 1, img.height);
    for (int x = 0; x < out_w; ++x) {
      const double fx = detail::src_coord(x, sx);
      const int x0 = static_cast<int>(std::floor(fx));
      const double wx = fx - x0;
      const int xa = clamp_index(x0, img.width);
      const int xb = clamp_index(x0 + 1, img.width);
      for (int c = 0; c < img.channels; ++c) {
        const double top = (1.0 - wx) * img.at(xa, ya, c) + wx * img.at(xb, ya, c);
        const double bot = (1.0 - wx) * img.at(xa, yb, c) + wx * img.at(xb, yb, c);
        const double v = (1.0 - wy) * top + wy * bot;
        const int q = iround_half_up(v);
        out.at(x, y, c) = static_cast<std::uint8_t>(q < 0 ? 0 : (q > 255 ? 255 : q));
      }
    }
  }
  return out;
}

// Planar float variant, no quantization.
inline FloatImage resize_bilinear(const FloatImage& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ValidationError("output dimensions must be >= 1");
  FloatImage out(out_w, out_h);
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
  for (int c = 0; c < FloatImage::channels; ++c) {
    for (int y = 0; y < out_h; ++y) {
      const double fy = detail::src_coord(y, sy);
      const int y0 = static_cast<int>(std::floor(fy));
      const double wy = fy - y0;
      const int ya = clamp_index(y0, img.height);
      const int yb = clamp_index(y0 + 1, img.height);
      for (int x = 0; x < out_w; ++x) {
        const double fx = detail::src_coord(x, sx);
        const int x0 = static_cast<int>(std::floor(fx));
        const double wx = fx - x0;
        const int xa = clamp_index(x0, img.width);
        const int xb = clamp_index(x0 + 1, img.width);
        const double top = (1.0 - wx) * img.at(c, xa, ya) + wx * img.at(c, xb, ya);
        const double bot = (1.0 - wx) * img.at(c, xa, yb) + wx * img.at(c, xb, yb);
        out.at(c, x, y) = static_cast<float>((1.0 - wy) * top + wy * bot);
      }
    }
  }
  return out;
}

// Nearest-neighbor resize under the same half-pixel mapping; the source pixel
// of output index d is floor((d + 0.5) * scale), clamped. Never invents class
// values absent from the input.
inline LabelMap resize_nearest(const LabelMap& map, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ValidationError("output dimensions must be >= 1");
  LabelMap out(out_w, out_h);
  const double sx = static_cast<double>(map.width) / out_w;
  const double sy = static_cast<double>(map.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const int syi = clamp_index(static_cast<int>(std::floor((y + 0.5) * sy)), map.height);
    for (int x = 0; x < out_w; ++x) {
      const int sxi = clamp_index(static_cast<int>(std::floor((x + 0.5) * sx)), map.width);
      out.at(x, y) = map.at(sxi, syi);
    }
  }
  return out;
}

// out[c][p] = (in[p][c] / 255 - mean[c]) / stddev[c], in 32-bit float.
inline FloatImage normalize(const RasterImage& img, const NormalizationParams& params) {
  if (img.channels != 3) throw ValidationError("normalize expects a 3-channel image");
  params.validate();
  FloatImage out(img.width, img.height);
  for (int c = 0; c < 3; ++c) {
    const float mean = params.mean[c];
    const float inv_std = 1.0f / params.stddev[c];
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x)
        out.at(c, x, y) = (img.at(x, y, c) / 255.0f - mean) * inv_std;
  }
  return out;
}

// Seeded 64-bit linear congruential generator, pinned so that preprocessing
// is reproducible across implementations and languages. The output of one
// step is the top 32 bits of the advanced state.
struct Lcg64 {
  std::uint64_t state;

  explicit Lcg64(std::uint64_t seed) : state(seed) {}

  std::uint32_t next_u32() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::uint32_t>(state >> 32);
  }
  // Uniform in [0, 1).
  double next_unit() { return next_u32() * 0x1p-32; }
  // Uniform in [0, n); always consumes one draw, returns 0 for n == 0.
  std::uint32_t next_below(std::uint32_t n) {
    const std::uint32_t v = next_u32();
    return n ? v % n : 0;
  }
};

struct CropPadResult {
  FloatImage image;
  LabelMap labels;
};

// Random crop/pad/resize applied with identical geometry to the image planes
// and the label map.
//
// Geometry (draws from Lcg64(seed), in this order):
//   s      = forced_fraction if given, else 0.5 + 0.5 * next_unit()
//   crop_w = max(1, round(s * width));  crop_h = max(1, round(s * height))
//   x0     = next_below(width - crop_w + 1);  y0 = next_below(height - crop_h + 1)
// The crop keeps the input aspect ratio. It is placed at the origin of a
// square canvas of side max(crop_w, crop_h); the uncovered right/bottom
// region is padding (0.0 in every image plane — the normalized dataset mean —
// and the ignore index 255 in the label map). The canvas is then resized to
// out_size x out_size, bilinear for the image and nearest for the labels.
inline CropPadResult crop_pad_resize(const FloatImage& img, const LabelMap& map,
                                     int out_size, std::uint64_t seed,
                                     std::optional<double> forced_fraction = std::nullopt) {
  if (img.width != map.width || img.height != map.height)
    throw ShapeError("image is " + std::to_string(img.width) + "x" +
                     std::to_string(img.height) + " but label map is " +
                     std::to_string(map.width) + "x" + std::to_string(map.height));
  if (out_size < 1) throw ValidationError("output size must be >= 1");
  if (forced_fraction && !(*forced_fraction > 0.0 && *forced_fraction <= 1.0))
    throw ValidationError("crop fraction must be in (0, 1]");

  Lcg64 rng(seed);
  const double s = forced_fraction ? *forced_fraction : 0.5 + 0.5 * rng.next_unit();
  const int crop_w = std::max(1, iround_half_up(s * img.width));
  const int crop_h = std::max(1, iround_half_up(s * img.height));
  const int x0 = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(img.width - crop_w + 1)));
  const int y0 = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(img.height - crop_h + 1)));

  const int side = std::max(crop_w, crop_h);
  FloatImage canvas(side, side, 0.0f);
  LabelMap canvas_labels(side, side, kIgnoreIndex);
  for (int y = 0; y < crop_h; ++y) {
    for (int x = 0; x < crop_w; ++x) {
      for (int c = 0; c < FloatImage::channels; ++c)
        canvas.at(c, x, y) = img.at(c, x0 + x, y0 + y);
      canvas_labels.at(x, y) = map.at(x0 + x, y0 + y);
    }
  }

  CropPadResult out;
  out.image = resize_bilinear(canvas, out_size, out_size);
  out.labels = resize_nearest(canvas_labels, out_size, out_size);
  return out;
}

// Portable tensor hand-off format: ASCII header "F32 <C> <H> <W>\n" followed
// by C*H*W little-endian IEEE-754 floats, planar channel-major, row-major.
inline void export_tensor(const FloatImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "F32 " << FloatImage::channels << ' ' << img.height << ' ' << img.width << '\n';
  for (float v : img.data) {
    const std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
    const char bytes[4] = {
        static_cast<char>(bits & 0xFF), static_cast<char>((bits >> 8) & 0xFF),
        static_cast<char>((bits >> 16) & 0xFF), static_cast<char>((bits >> 24) & 0xFF)};
    out.write(bytes, 4);
  }
  if (!out) throw IoError("write failure: " + path.string());
}

inline FloatImage import_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw FormatError("missing tensor header: " + path.string());

  std::istringstream hs(header);
  std::string magic;
  long long c = 0, h = 0, w = 0;
  if (!(hs >> magic >> c >> h >> w) || magic != "F32")
    throw FormatError("bad tensor header \"" + header + "\" in " + path.string());
  if (c != FloatImage::channels || h < 1 || w < 1 || h > 1 << 20 || w > 1 << 20)
    throw FormatError("unsupported tensor shape in " + path.string());

  FloatImage img(static_cast<int>(w), static_cast<int>(h));
  for (float& v : img.data) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4))
      throw FormatError("truncated tensor payload: " + path.string());
    const std::uint32_t bits = static_cast<std::uint32_t>(bytes[0]) |
                               (static_cast<std::uint32_t>(bytes[1]) << 8) |
                               (static_cast<std::uint32_t>(bytes[2]) << 16) |
                               (static_cast<std::uint32_t>(bytes[3]) << 24);
    v = std::bit_cast<float>(bits);
  }
  return img;
}

}  // namespace wwr
