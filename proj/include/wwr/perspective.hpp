#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wwr/error.hpp"
#include "wwr/types.hpp"
#include "wwr/util.hpp"

namespace wwr {

namespace detail {

inline double triangle_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace detail

// Four sub-pixel corners in canonical order: top-left, top-right,
// bottom-right, bottom-left. TL minimizes x+y, BR maximizes x+y, TR maximizes
// x-y, BL minimizes x-y; ties go to the smaller y, then the smaller x.
struct Quad {
  std::array<Point, 4> corners{};

  const Point& tl() const { return corners[0]; }
  const Point& tr() const { return corners[1]; }
  const Point& br() const { return corners[2]; }
  const Point& bl() const { return corners[3]; }
  bool operator==(const Quad&) const = default;
};

inline constexpr double kMinCornerTriangleArea = 1e-6;  // px^2

// Canonicalizes four points (any order) into a Quad and validates that no
// three corners are collinear.
inline Quad make_quad(const std::array<Point, 4>& points) {
  auto better = [](const Point& cand, const Point& best, double cand_key, double best_key,
                   bool want_min) {
    if (cand_key != best_key) return want_min ? cand_key < best_key : cand_key > best_key;
    if (cand.y != best.y) return cand.y < best.y;
    return cand.x < best.x;
  };
  auto pick = [&](auto key, bool want_min) {
    int best = 0;
    for (int i = 1; i < 4; ++i)
      if (better(points[i], points[best], key(points[i]), key(points[best]), want_min))
        best = i;
    return best;
  };
  const int tl = pick([](const Point& p) { return p.x + p.y; }, true);
  const int br = pick([](const Point& p) { return p.x + p.y; }, false);
  const int tr = pick([](const Point& p) { return p.x - p.y; }, false);
  const int bl = pick([](const Point& p) { return p.x - p.y; }, true);

  const std::array<int, 4> roles{tl, tr, br, bl};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (roles[i] == roles[j])
        throw ValidationError("corner ordering is ambiguous; points do not form a quad");

  Quad q{{points[tl], points[tr], points[br], points[bl]}};
  for (int skip = 0; skip < 4; ++skip) {
    const Point& a = q.corners[(skip + 1) % 4];
    const Point& b = q.corners[(skip + 2) % 4];
    const Point& c = q.corners[(skip + 3) % 4];
    if (detail::triangle_area(a, b, c) <= kMinCornerTriangleArea)
      throw ValidationError("three quad corners are collinear");
  }
  return q;
}

// 3x3 projective transform, normalized so h[2][2] = 1.
struct Homography {
  std::array<double, 9> h{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Homography identity() { return Homography{}; }

  double at(int r, int c) const { return h[r * 3 + c]; }
  double& at(int r, int c) { return h[r * 3 + c]; }

  // Applies the transform in homogeneous coordinates. A point on the horizon
  // (third component ~ 0) maps to infinities, which downstream bounds checks
  // treat as out of range.
  Point project(const Point& p) const {
    const double w = h[6] * p.x + h[7] * p.y + h[8];
    return Point{(h[0] * p.x + h[1] * p.y + h[2]) / w,
                 (h[3] * p.x + h[4] * p.y + h[5]) / w};
  }

  double det() const {
    return h[0] * (h[4] * h[8] - h[5] * h[7]) - h[1] * (h[3] * h[8] - h[5] * h[6]) +
           h[2] * (h[3] * h[7] - h[4] * h[6]);
  }

  Homography inverse() const {
    const double d = det();
    if (std::abs(d) < 1e-12) throw DegeneracyError("homography is not invertible");
    // Adjugate; the determinant cancels in the h22 normalization.
    std::array<double, 9> a{
        h[4] * h[8] - h[5] * h[7], h[2] * h[7] - h[1] * h[8], h[1] * h[5] - h[2] * h[4],
        h[5] * h[6] - h[3] * h[8], h[0] * h[8] - h[2] * h[6], h[2] * h[3] - h[0] * h[5],
        h[3] * h[7] - h[4] * h[6], h[1] * h[6] - h[0] * h[7], h[0] * h[4] - h[1] * h[3]};
    if (std::abs(a[8]) < 1e-15 * std::abs(d))
      throw DegeneracyError("inverse homography cannot be normalized");
    Homography inv;
    for (int i = 0; i < 9; ++i) inv.h[i] = a[i] / a[8];
    return inv;
  }
};

// Matrix product renormalized to h22 = 1, so composition stays within the
// normalized representation.
inline Homography compose(const Homography& a, const Homography& b) {
  Homography p;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      p.at(r, c) = a.at(r, 0) * b.at(0, c) + a.at(r, 1) * b.at(1, c) + a.at(r, 2) * b.at(2, c);
  const double w = p.h[8];
  if (std::abs(w) < 1e-15) throw DegeneracyError("composed homography cannot be normalized");
  for (double& v : p.h) v /= w;
  return p;
}

// Solves for the H with h22 = 1 that maps each source corner to its target
// corner: the standard 8x8 linear system (two equations per correspondence),
// eliminated with partial pivoting.
inline Homography estimate_homography(const Quad& src, const Quad& dst) {
  double m[8][9];
  for (int i = 0; i < 4; ++i) {
    const double x = src.corners[i].x, y = src.corners[i].y;
    const double u = dst.corners[i].x, v = dst.corners[i].y;
    double* r0 = m[2 * i];
    double* r1 = m[2 * i + 1];
    r0[0] = x;  r0[1] = y;  r0[2] = 1;  r0[3] = 0;  r0[4] = 0;  r0[5] = 0;
    r0[6] = -u * x;  r0[7] = -u * y;  r0[8] = u;
    r1[0] = 0;  r1[1] = 0;  r1[2] = 0;  r1[3] = x;  r1[4] = y;  r1[5] = 1;
    r1[6] = -v * x;  r1[7] = -v * y;  r1[8] = v;
  }

  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-12)
      throw DegeneracyError("degenerate correspondences: homography system is singular");
    if (pivot != col)
      for (int c = 0; c < 9; ++c) std::swap(m[pivot][c], m[col][c]);
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < 9; ++c) m[r][c] -= f * m[col][c];
    }
  }

  Homography H;
  for (int i = 0; i < 8; ++i) H.h[i] = m[i][8] / m[i][i];
  H.h[8] = 1.0;

  if (std::abs(H.det()) < 1e-12)
    throw DegeneracyError("estimated homography is singular");
  for (int i = 0; i < 4; ++i) {
    const Point p = H.project(src.corners[i]);
    if (std::hypot(p.x - dst.corners[i].x, p.y - dst.corners[i].y) > 1e-6)
      throw DegeneracyError("homography does not reproduce its corner correspondences");
  }
  return H;
}

struct TargetRect {
  int width = 0;
  int height = 0;
  Quad dst;
};

// Fronto-parallel target sized from the longer of each pair of opposing
// edges, preserving the best-resolved side of the facade.
inline TargetRect target_rectangle(const Quad& src) {
  auto dist = [](const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); };
  TargetRect t;
  t.width = std::max(1, iround_half_up(std::max(dist(src.tr(), src.tl()), dist(src.br(), src.bl()))));
  t.height = std::max(1, iround_half_up(std::max(dist(src.bl(), src.tl()), dist(src.br(), src.tr()))));
  const double w1 = t.width - 1.0;
  const double h1 = t.height - 1.0;
  t.dst = Quad{{Point{0, 0}, Point{w1, 0}, Point{w1, h1}, Point{0, h1}}};
  return t;
}

namespace detail {

// Bilinear sample at continuous position (sx, sy) in pixel-center space,
// border-clamped. Callers guarantee 0 <= sx <= w and 0 <= sy <= h.
inline double sample_bilinear(const RasterImage& img, double sx, double sy, int c) {
  const double fx = sx - 0.5;
  const double fy = sy - 0.5;
  const int x0 = static_cast<int>(std::floor(fx));
  const int y0 = static_cast<int>(std::floor(fy));
  const double wx = fx - x0;
  const double wy = fy - y0;
  const int xa = clamp_index(x0, img.width);
  const int xb = clamp_index(x0 + 1, img.width);
  const int ya = clamp_index(y0, img.height);
  const int yb = clamp_index(y0 + 1, img.height);
  const double top = (1.0 - wx) * img.at(xa, ya, c) + wx * img.at(xb, ya, c);
  const double bot = (1.0 - wx) * img.at(xa, yb, c) + wx * img.at(xb, yb, c);
  return (1.0 - wy) * top + wy * bot;
}

}  // namespace detail

// Inverse-maps every output pixel center through H^-1 (H: source -> target)
// and samples the source bilinearly; source positions outside the image fill
// with 0.
inline RasterImage warp_image(const RasterImage& img, const Homography& H,
                              int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ValidationError("output dimensions must be >= 1");
  const Homography inv = H.inverse();
  RasterImage out(out_w, out_h, img.channels);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const Point s = inv.project(Point{x + 0.5, y + 0.5});
      if (!(s.x >= 0.0 && s.x <= img.width && s.y >= 0.0 && s.y <= img.height))
        continue;  // fill stays 0
      for (int c = 0; c < img.channels; ++c) {
        const int v = iround_half_up(detail::sample_bilinear(img, s.x, s.y, c));
        out.at(x, y, c) = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
      }
    }
  }
  return out;
}

// Same inverse mapping with nearest-neighbor sampling; out-of-bounds fills
// with the ignore index, so warping never invents class values.
inline LabelMap warp_labels(const LabelMap& map, const Homography& H,
                            int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ValidationError("output dimensions must be >= 1");
  const Homography inv = H.inverse();
  LabelMap out(out_w, out_h, kIgnoreIndex);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const Point s = inv.project(Point{x + 0.5, y + 0.5});
      if (!(s.x >= 0.0 && s.x <= map.width && s.y >= 0.0 && s.y <= map.height))
        continue;
      const int sx = clamp_index(static_cast<int>(std::floor(s.x)), map.width);
      const int sy = clamp_index(static_cast<int>(std::floor(s.y)), map.height);
      out.at(x, y) = map.at(sx, sy);
    }
  }
  return out;
}

// Facade corner candidates from segmentation geometry: restrict to the
// largest 4-connected building-class component and take the extreme-sum quad
// of its pixel centers (TL = argmin x+y, BR = argmax x+y, TR = argmax x-y,
// BL = argmin x-y; ties to smaller y, then smaller x).
inline Quad corners_from_mask(const LabelMap& map, const ClassConfig& cfg) {
  cfg.validate();
  const int w = map.width;
  const int h = map.height;
  std::vector<std::int32_t> component(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::size_t> stack;
  std::int32_t best_component = -1;
  std::size_t best_size = 0;
  std::int32_t next_id = 0;

  for (std::size_t start = 0; start < component.size(); ++start) {
    if (component[start] >= 0 || map.classes[start] != cfg.building_class) continue;
    const std::int32_t id = next_id++;
    std::size_t size = 0;
    stack.assign(1, start);
    component[start] = id;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      ++size;
      const int px = static_cast<int>(p % w);
      const int py = static_cast<int>(p / w);
      const int nx[4] = {px - 1, px + 1, px, px};
      const int ny[4] = {py, py, py - 1, py + 1};
      for (int k = 0; k < 4; ++k) {
        if (nx[k] < 0 || nx[k] >= w || ny[k] < 0 || ny[k] >= h) continue;
        const std::size_t q = static_cast<std::size_t>(ny[k]) * w + nx[k];
        if (component[q] >= 0 || map.classes[q] != cfg.building_class) continue;
        component[q] = id;
        stack.push_back(q);
      }
    }
    if (size > best_size) {  // first-found wins ties: deterministic scan order
      best_size = size;
      best_component = id;
    }
  }

  if (best_size < 4)
    throw DetectionError("largest building component has fewer than 4 pixels");

  struct Extreme {
    bool init = false;
    double key = 0.0;
    Point p;
  };
  Extreme ex[4];  // tl, br, tr, bl
  for (std::size_t i = 0; i < component.size(); ++i) {
    if (component[i] != best_component) continue;
    const Point c{static_cast<double>(i % w) + 0.5, static_cast<double>(i / w) + 0.5};
    const double keys[4] = {c.x + c.y, c.x + c.y, c.x - c.y, c.x - c.y};
    const bool want_min[4] = {true, false, false, true};
    for (int k = 0; k < 4; ++k) {
      // Row-major scan: strict comparison leaves the first (smallest y, then
      // smallest x) of any tied extreme in place.
      if (!ex[k].init || (want_min[k] ? keys[k] < ex[k].key : keys[k] > ex[k].key)) {
        ex[k] = {true, keys[k], c};
      }
    }
  }

  try {
    return make_quad({ex[0].p, ex[2].p, ex[1].p, ex[3].p});
  } catch (const ValidationError& e) {
    throw DetectionError(std::string("degenerate building extremes: ") + e.what());
  }
}

}  // namespace wwr
