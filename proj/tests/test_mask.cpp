#include "wwr/mask.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

wwr::PolygonAnnotation poly(std::vector<wwr::Point> pts, std::string label = "window") {
  return {std::move(label), std::move(pts)};
}

}  // namespace

TEST(Rasterize, AxisAlignedSquareCenterRule) {
  const auto mask = wwr::rasterize_polygons(
      {poly({{0, 0}, {4, 0}, {4, 4}, {0, 4}})}, 8, 8);
  EXPECT_EQ(mask.count_true(), 16u);  // centers in [0,4)^2
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x)
      EXPECT_EQ(mask.get(x, y), x < 4 && y < 4) << "(" << x << "," << y << ")";
}

TEST(Rasterize, EmptyPolygonList) {
  const auto mask = wwr::rasterize_polygons({}, 5, 5);
  EXPECT_EQ(mask.count_true(), 0u);
}

TEST(Rasterize, PolygonOutsideRasterContributesNothing) {
  const auto mask = wwr::rasterize_polygons(
      {poly({{10, 10}, {20, 10}, {20, 20}, {10, 20}})}, 5, 5);
  EXPECT_EQ(mask.count_true(), 0u);
}

TEST(Rasterize, PartiallyOutsideClampsToRaster) {
  const auto mask = wwr::rasterize_polygons(
      {poly({{-3, -3}, {2, -3}, {2, 2}, {-3, 2}})}, 5, 5);
  EXPECT_EQ(mask.count_true(), 4u);  // centers in [0,2)^2
}

TEST(Rasterize, UnionOverPolygons) {
  const auto mask = wwr::rasterize_polygons(
      {poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}), poly({{1, 1}, {4, 1}, {4, 3}, {1, 3}})}, 6, 6);
  const auto a = oracle::rasterize({poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}})}, 6, 6);
  const auto b = oracle::rasterize({poly({{1, 1}, {4, 1}, {4, 3}, {1, 3}})}, 6, 6);
  for (std::size_t i = 0; i < mask.bits.size(); ++i)
    EXPECT_EQ(mask.bits[i] != 0, a.bits[i] != 0 || b.bits[i] != 0);
}

// 100 random polygons against the independent ray-casting oracle at every
// pixel center, simple and self-intersecting alike.
TEST(Rasterize, MatchesEvenOddOracleEverywhere) {
  oracle::Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(3, 12);
    const bool star = trial % 2 == 0;
    const auto p = poly(oracle::random_polygon(rng, n, 64, 64, star));
    const auto fast = wwr::rasterize_polygons({p}, 64, 64);
    const auto slow = oracle::rasterize({p}, 64, 64);
    ASSERT_EQ(fast, slow) << "trial " << trial;
  }
}

TEST(FuseLabels, AllFalseMaskIsIdentity) {
  const wwr::LabelMap base(4, 4, 2);
  const wwr::BinaryMask mask(4, 4);
  EXPECT_EQ(wwr::fuse_labels(base, mask, {}), base);
}

TEST(FuseLabels, CountsAfterStamping) {
  wwr::LabelMap base(4, 4, 2);
  wwr::BinaryMask mask(4, 4);
  mask.set(0, 0, true);
  mask.set(1, 0, true);
  mask.set(2, 1, true);
  mask.set(3, 2, true);
  mask.set(0, 3, true);

  const wwr::LabelMap fused = wwr::fuse_labels(base, mask, {});
  int window = 0, building = 0;
  for (auto v : fused.classes) {
    window += v == 9;
    building += v == 2;
  }
  EXPECT_EQ(window, 5);
  EXPECT_EQ(building, 11);
}

TEST(FuseLabels, WindowOverridesAnyBaseClass) {
  wwr::LabelMap base(2, 1, 2);
  base.at(1, 0) = 17;  // sky-ish
  wwr::BinaryMask mask(2, 1);
  mask.set(1, 0, true);
  const wwr::LabelMap fused = wwr::fuse_labels(base, mask, {});
  EXPECT_EQ(fused.at(0, 0), 2);
  EXPECT_EQ(fused.at(1, 0), 9);
}

TEST(FuseLabels, DimensionMismatchReportsBothSizes) {
  try {
    wwr::fuse_labels(wwr::LabelMap(4, 4), wwr::BinaryMask(4, 5), {});
    FAIL() << "expected ShapeError";
  } catch (const wwr::ShapeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("4x4"), std::string::npos);
    EXPECT_NE(msg.find("4x5"), std::string::npos);
  }
}

TEST(FuseLabels, IdempotentAndCountPreserving) {
  oracle::Rng rng(9);
  const wwr::ClassConfig cfg;
  for (int trial = 0; trial < 30; ++trial) {
    const auto base = oracle::random_label_map(rng, 13, 11, cfg);
    const auto mask = oracle::random_mask(rng, 13, 11);
    const auto once = wwr::fuse_labels(base, mask, cfg);
    const auto twice = wwr::fuse_labels(once, mask, cfg);
    EXPECT_EQ(once, twice);

    // |{out = window}| = |{mask} ∪ {base = window}|
    std::size_t expected = 0;
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
      expected += mask.bits[i] || base.classes[i] == cfg.window_class;
    EXPECT_EQ(wwr::mask_from_label(once, cfg.window_class).count_true(), expected);
  }
}

TEST(MaskFromLabel, AllAndNone) {
  const wwr::LabelMap all_window(3, 3, 9);
  EXPECT_EQ(wwr::mask_from_label(all_window, 9).count_true(), 9u);
  EXPECT_EQ(wwr::mask_from_label(all_window, 2).count_true(), 0u);
}

// fuse then extract recovers the mask: superset always, equality when the
// base has no window pixels.
TEST(MaskFromLabel, FuseExtractRoundTrip) {
  oracle::Rng rng(21);
  const wwr::ClassConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    auto base = oracle::random_label_map(rng, 10, 10, cfg);
    for (auto& v : base.classes)
      if (v == cfg.window_class) v = cfg.building_class;  // purge windows
    const auto mask = oracle::random_mask(rng, 10, 10);
    const auto extracted =
        wwr::mask_from_label(wwr::fuse_labels(base, mask, cfg), cfg.window_class);
    EXPECT_EQ(extracted, mask);
  }
}
