#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "wwr/error.hpp"
#include "wwr/perspective.hpp"
#include "wwr/types.hpp"
#include "wwr/util.hpp"

namespace wwr {

// Gradient magnitudes plus the binary edge set that survived non-maximum
// suppression and hysteresis. Every binary pixel has magnitude >= the low
// threshold it was detected with.
struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<float> magnitude;
  std::vector<std::uint8_t> binary;

  EdgeMap() = default;
  EdgeMap(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw ValidationError("edge map dimensions must be >= 1");
    magnitude.assign(static_cast<std::size_t>(w) * h, 0.0f);
    binary.assign(static_cast<std::size_t>(w) * h, 0);
  }

  bool edge(int x, int y) const {
    return binary[static_cast<std::size_t>(y) * width + x] != 0;
  }
};

// Canny-style detector: luma conversion (0.299 R + 0.587 G + 0.114 B), 3x3
// Sobel with replicated borders, non-maximum suppression across 4 quantized
// gradient directions, then double-threshold hysteresis (strong >= high;
// weak >= low survives iff 8-connected to a strong pixel).
inline EdgeMap detect_edges(const RasterImage& img, double low, double high) {
  if (!(low > 0.0) || high < low)
    throw ValidationError("thresholds must satisfy high >= low > 0");

  const int w = img.width;
  const int h = img.height;
  std::vector<float> gray(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      gray[static_cast<std::size_t>(y) * w + x] =
          img.channels == 1
              ? static_cast<float>(img.at(x, y))
              : 0.299f * img.at(x, y, 0) + 0.587f * img.at(x, y, 1) + 0.114f * img.at(x, y, 2);
    }
  }
  auto g = [&](int x, int y) {
    return gray[static_cast<std::size_t>(clamp_index(y, h)) * w + clamp_index(x, w)];
  };

  EdgeMap out(w, h);
  std::vector<float> gx(gray.size()), gy(gray.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      gx[i] = (g(x + 1, y - 1) + 2.0f * g(x + 1, y) + g(x + 1, y + 1)) -
              (g(x - 1, y - 1) + 2.0f * g(x - 1, y) + g(x - 1, y + 1));
      gy[i] = (g(x - 1, y + 1) + 2.0f * g(x, y + 1) + g(x + 1, y + 1)) -
              (g(x - 1, y - 1) + 2.0f * g(x, y - 1) + g(x + 1, y - 1));
      out.magnitude[i] = std::hypot(gx[i], gy[i]);
    }
  }

  // Non-maximum suppression. Neighbor offsets along the quantized gradient
  // direction; a pixel survives iff mag > forward neighbor and >= backward
  // neighbor (keeps step edges one pixel wide).
  std::vector<std::uint8_t> keep(gray.size(), 0);
  auto mag = [&](int x, int y) -> float {
    if (x < 0 || x >= w || y < 0 || y >= h) return 0.0f;
    return out.magnitude[static_cast<std::size_t>(y) * w + x];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const float m = out.magnitude[i];
      if (m <= 0.0f) continue;
      double angle = std::atan2(gy[i], gx[i]) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      int dx = 1, dy = 0;  // bin 0: horizontal gradient
      if (angle >= 22.5 && angle < 67.5) {
        dx = 1; dy = 1;
      } else if (angle >= 67.5 && angle < 112.5) {
        dx = 0; dy = 1;
      } else if (angle >= 112.5 && angle < 157.5) {
        dx = -1; dy = 1;
      }
      if (m > mag(x + dx, y + dy) && m >= mag(x - dx, y - dy)) keep[i] = 1;
    }
  }

  // Hysteresis: BFS from strong pixels through weak ones, 8-connected.
  std::vector<std::size_t> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (keep[i] && out.magnitude[i] >= high) {
        out.binary[i] = 1;
        stack.push_back(i);
      }
    }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(i % w);
    const int y = static_cast<int>(i / w);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
        if (out.binary[j] || !keep[j] || out.magnitude[j] < low) continue;
        out.binary[j] = 1;
        stack.push_back(j);
      }
    }
  }
  return out;
}

namespace detail {

struct HoughLine {
  std::uint32_t votes = 0;
  int theta_deg = 0;   // [0, 180)
  double rho = 0.0;    // signed distance, 1 px bins
  // Folds (theta, rho) ~ (theta - 180, -rho) so that near-vertical lines on
  // both sides of theta = 0 compare directly.
  double canon_rho() const { return theta_deg > 90 ? -rho : rho; }
};

}  // namespace detail

inline constexpr int kHoughBandDeg = 30;        // orientation band half-width
inline constexpr double kHoughMinRhoSep = 20.0;  // px between same-band picks
inline constexpr double kHoughMinCrossDeg = 5.0;

// Recovers the dominant quadrilateral from a binary edge set with a Hough
// accumulator (rho resolution 1 px, theta resolution 1 degree): the two
// strongest near-vertical lines and the two strongest near-horizontal lines
// (bands of +-30 degrees, same-band picks separated by >= 20 px in rho)
// intersected pairwise and ordered canonically.
inline Quad quad_from_edges(const EdgeMap& edges, std::uint32_t min_votes = 20) {
  const int w = edges.width;
  const int h = edges.height;
  const int rho_max = static_cast<int>(std::ceil(std::hypot(w, h))) + 1;
  const int n_rho = 2 * rho_max + 1;

  std::array<double, 180> cos_t, sin_t;
  for (int t = 0; t < 180; ++t) {
    const double rad = t * std::numbers::pi / 180.0;
    cos_t[t] = std::cos(rad);
    sin_t[t] = std::sin(rad);
  }

  std::vector<std::uint32_t> acc(static_cast<std::size_t>(180) * n_rho, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!edges.edge(x, y)) continue;
      const double cx = x + 0.5, cy = y + 0.5;
      for (int t = 0; t < 180; ++t) {
        const int r = iround_half_up(cx * cos_t[t] + cy * sin_t[t]) + rho_max;
        ++acc[static_cast<std::size_t>(t) * n_rho + r];
      }
    }
  }

  auto band_lines = [&](bool vertical) {
    std::vector<detail::HoughLine> lines;
    for (int t = 0; t < 180; ++t) {
      const int ct = t > 90 ? t - 180 : t;
      const bool in_band = vertical ? std::abs(ct) <= kHoughBandDeg
                                    : std::abs(t - 90) <= kHoughBandDeg;
      if (!in_band) continue;
      for (int r = 0; r < n_rho; ++r) {
        const std::uint32_t votes = acc[static_cast<std::size_t>(t) * n_rho + r];
        if (votes >= min_votes)
          lines.push_back({votes, t, static_cast<double>(r - rho_max)});
      }
    }
    std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
      if (a.votes != b.votes) return a.votes > b.votes;
      if (a.theta_deg != b.theta_deg) return a.theta_deg < b.theta_deg;
      return a.rho < b.rho;
    });
    return lines;
  };

  auto pick_two = [&](bool vertical, const char* band_name) {
    const auto lines = band_lines(vertical);
    std::vector<detail::HoughLine> picks;
    for (const auto& line : lines) {
      const bool separated =
          std::all_of(picks.begin(), picks.end(), [&](const detail::HoughLine& p) {
            return std::abs(line.canon_rho() - p.canon_rho()) >= kHoughMinRhoSep;
          });
      if (!separated) continue;
      picks.push_back(line);
      if (picks.size() == 2) return picks;
    }
    throw DetectionError(std::string("missing ") + band_name + " line band");
  };

  const auto vert = pick_two(true, "near-vertical");
  const auto horiz = pick_two(false, "near-horizontal");

  std::array<Point, 4> corners;
  int idx = 0;
  for (const auto& v : vert) {
    for (const auto& hl : horiz) {
      const int d = std::abs(v.theta_deg - hl.theta_deg);
      const int cross = std::min(d, 180 - d);
      if (cross < kHoughMinCrossDeg)
        throw DetectionError("picked lines are near-parallel");
      const double cv = cos_t[v.theta_deg], sv = sin_t[v.theta_deg];
      const double ch = cos_t[hl.theta_deg], sh = sin_t[hl.theta_deg];
      const double det = cv * sh - sv * ch;
      corners[idx++] = Point{(v.rho * sh - sv * hl.rho) / det,
                             (cv * hl.rho - v.rho * ch) / det};
    }
  }

  try {
    return make_quad(corners);
  } catch (const ValidationError& e) {
    throw DetectionError(std::string("line intersections are degenerate: ") + e.what());
  }
}

}  // namespace wwr
