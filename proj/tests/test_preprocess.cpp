#include "wwr/preprocess.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

wwr::RasterImage checkerboard2x2() {
  wwr::RasterImage img(2, 2, 3);
  for (int c = 0; c < 3; ++c) {
    img.at(0, 0, c) = 0;
    img.at(1, 0, c) = 255;
    img.at(0, 1, c) = 255;
    img.at(1, 1, c) = 0;
  }
  return img;
}

}  // namespace

TEST(ResizeBilinear, IdentityDimensionsAreByteIdentical) {
  oracle::Rng rng(1);
  wwr::RasterImage img(9, 7, 3);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  EXPECT_EQ(wwr::resize_bilinear(img, 9, 7), img);
}

TEST(ResizeBilinear, OnePixelExtendsConstant) {
  wwr::RasterImage img(1, 1, 3);
  img.at(0, 0, 0) = 12;
  img.at(0, 0, 1) = 34;
  img.at(0, 0, 2) = 56;
  const auto out = wwr::resize_bilinear(img, 4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      EXPECT_EQ(out.at(x, y, 0), 12);
      EXPECT_EQ(out.at(x, y, 1), 34);
      EXPECT_EQ(out.at(x, y, 2), 56);
    }
}

// Hand evaluation at (1,1): src = (1.5)*(2/3) - 0.5 = 0.5 in both axes, so
// the center mixes all four samples equally: (0+255+255+0)/4 = 127.5 -> 128.
TEST(ResizeBilinear, CheckerboardCenterPixel) {
  const auto out = wwr::resize_bilinear(checkerboard2x2(), 3, 3);
  EXPECT_EQ(out.at(1, 1, 0), 128);
}

TEST(ResizeNearest, IdentityAndValueSubset) {
  oracle::Rng rng(2);
  const wwr::ClassConfig cfg;
  const auto map = oracle::random_label_map(rng, 11, 8, cfg);
  EXPECT_EQ(wwr::resize_nearest(map, 11, 8), map);

  std::set<std::uint8_t> in_values(map.classes.begin(), map.classes.end());
  for (auto [w, h] : {std::pair{5, 3}, std::pair{23, 17}, std::pair{1, 1}}) {
    const auto out = wwr::resize_nearest(map, w, h);
    for (auto v : out.classes) EXPECT_TRUE(in_values.count(v)) << int(v);
  }
}

TEST(ResizeNearest, QuadrantsUpscale) {
  wwr::LabelMap map(2, 2);
  map.at(0, 0) = 2;
  map.at(1, 0) = 9;
  map.at(0, 1) = 9;
  map.at(1, 1) = 2;
  const auto out = wwr::resize_nearest(map, 8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x)
      EXPECT_EQ(out.at(x, y), map.at(x / 4, y / 4));
}

TEST(Normalize, PureRedPixelAgainstPaperConstants) {
  wwr::RasterImage img(1, 1, 3);
  img.at(0, 0, 0) = 255;
  const auto out = wwr::normalize(img, {});
  EXPECT_NEAR(out.at(0, 0, 0), (1.0 - 0.485) / 0.229, 1e-5);  // ~2.24890
  EXPECT_NEAR(out.at(1, 0, 0), (0.0 - 0.456) / 0.224, 1e-5);
  EXPECT_NEAR(out.at(2, 0, 0), (0.0 - 0.406) / 0.225, 1e-5);
}

TEST(Normalize, MeanColoredPixelIsNearZero) {
  wwr::NormalizationParams params;
  wwr::RasterImage img(1, 1, 3);
  for (int c = 0; c < 3; ++c)
    img.at(0, 0, c) = static_cast<std::uint8_t>(wwr::iround_half_up(params.mean[c] * 255.0));
  const auto out = wwr::normalize(img, params);
  for (int c = 0; c < 3; ++c) EXPECT_LT(std::abs(out.at(c, 0, 0)), 0.01f);
}

TEST(Normalize, IdentityParamsDividesBy255) {
  wwr::NormalizationParams params;
  params.mean = {0.0f, 0.0f, 0.0f};
  params.stddev = {1.0f, 1.0f, 1.0f};
  oracle::Rng rng(3);
  wwr::RasterImage img(6, 4, 3);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  const auto out = wwr::normalize(img, params);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 6; ++x)
      for (int c = 0; c < 3; ++c)
        EXPECT_EQ(out.at(c, x, y), img.at(x, y, c) / 255.0f);
}

// Affine per channel: normalize(a) - normalize(b) = (a - b) / (255 * std).
TEST(Normalize, AffineProperty) {
  oracle::Rng rng(4);
  wwr::NormalizationParams params;
  wwr::RasterImage a(5, 5, 3), b(5, 5, 3);
  for (auto& v : a.data) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  for (auto& v : b.data) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  const auto na = wwr::normalize(a, params);
  const auto nb = wwr::normalize(b, params);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 5; ++x) {
        const double expected =
            (double(a.at(x, y, c)) - b.at(x, y, c)) / (255.0 * params.stddev[c]);
        EXPECT_NEAR(na.at(c, x, y) - nb.at(c, x, y), expected, 1e-6);
      }
}

TEST(Normalize, RejectsNonPositiveStd) {
  wwr::NormalizationParams params;
  params.stddev[1] = 0.0f;
  EXPECT_THROW(wwr::normalize(wwr::RasterImage(2, 2, 3), params), wwr::ValidationError);
}

TEST(Lcg64, PinnedSequence) {
  // Frozen from the defining recurrence: state = state * 6364136223846793005
  // + 1442695040888963407, output = top 32 bits.
  wwr::Lcg64 rng(0);
  EXPECT_EQ(rng.next_u32(), 0x14057B7Eu);  // 1442695040888963407 >> 32
  wwr::Lcg64 rng1(1);
  const std::uint64_t s1 = 6364136223846793005ULL + 1442695040888963407ULL;
  EXPECT_EQ(rng1.next_u32(), static_cast<std::uint32_t>(s1 >> 32));
}

TEST(CropPadResize, SquareInputForcedFullFractionIsIdentity) {
  oracle::Rng rng(5);
  wwr::FloatImage img(512, 512);
  for (auto& v : img.data) v = static_cast<float>(rng.uniform(-2.0, 2.0));
  wwr::LabelMap map = oracle::random_label_map(rng, 512, 512, {});

  const auto out = wwr::crop_pad_resize(img, map, 512, 7, 1.0);
  EXPECT_EQ(out.image, img);
  EXPECT_EQ(out.labels, map);
}

TEST(CropPadResize, SameSeedBitIdentical) {
  oracle::Rng rng(6);
  wwr::FloatImage img(70, 50);
  for (auto& v : img.data) v = static_cast<float>(rng.uniform(-2.0, 2.0));
  const wwr::LabelMap map = oracle::random_label_map(rng, 70, 50, {});

  const auto a = wwr::crop_pad_resize(img, map, 64, 1234);
  const auto b = wwr::crop_pad_resize(img, map, 64, 1234);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.labels, b.labels);
  const auto c = wwr::crop_pad_resize(img, map, 64, 1235);
  EXPECT_FALSE(a.image == c.image && a.labels == c.labels);
}

// A 300x512 input at full crop fraction pads 212 columns of the square
// canvas, so exactly (512-300)*512 output label pixels are the ignore index.
TEST(CropPadResize, PortraitInputPadsRightColumns) {
  wwr::FloatImage img(300, 512, 1.5f);
  wwr::LabelMap map(300, 512, 2);

  const auto out = wwr::crop_pad_resize(img, map, 512, 0, 1.0);
  std::size_t padded = 0;
  for (int y = 0; y < 512; ++y)
    for (int x = 0; x < 512; ++x) {
      const bool is_pad = out.labels.at(x, y) == wwr::kIgnoreIndex;
      padded += is_pad;
      EXPECT_EQ(is_pad, x >= 300) << x << "," << y;
      if (is_pad) EXPECT_EQ(out.image.at(0, x, y), 0.0f);
    }
  EXPECT_EQ(padded, static_cast<std::size_t>(512 - 300) * 512);
}

// Geometric correspondence: a label map encoding coarse image intensity stays
// aligned with the image across the crop/pad/resize.
TEST(CropPadResize, ImageAndLabelsStayAligned) {
  const int w = 96, h = 64;
  wwr::FloatImage img(w, h);
  wwr::LabelMap map(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const bool right = x >= w / 2;
      map.at(x, y) = right ? 9 : 2;
      for (int c = 0; c < 3; ++c) img.at(c, x, y) = right ? 1.0f : 0.0f;
    }

  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 4242ULL}) {
    const auto out = wwr::crop_pad_resize(img, map, 64, seed);
    for (int y = 0; y < 64; ++y) {
      int label_edge = -1, image_edge = -1;
      for (int x = 1; x < 64; ++x) {
        if (label_edge < 0 && out.labels.at(x - 1, y) == 2 && out.labels.at(x, y) == 9)
          label_edge = x;
        if (image_edge < 0 && out.image.at(0, x - 1, y) < 0.5f && out.image.at(0, x, y) >= 0.5f)
          image_edge = x;
      }
      if (label_edge < 0 || image_edge < 0) continue;  // row cropped or padded away
      EXPECT_LE(std::abs(label_edge - image_edge), 1) << "seed " << seed << " row " << y;
    }
  }
}

TEST(CropPadResize, DimensionMismatchThrows) {
  EXPECT_THROW(wwr::crop_pad_resize(wwr::FloatImage(4, 4), wwr::LabelMap(4, 5), 8, 0),
               wwr::ShapeError);
}

TEST(Tensor, RoundTripBitIdentical) {
  oracle::TempDir tmp("tensor1");
  oracle::Rng rng(8);
  wwr::FloatImage img(4, 4);
  for (auto& v : img.data) v = static_cast<float>(rng.uniform(-10.0, 10.0));
  img.data[0] = -0.0f;
  img.data[1] = 1e-38f;

  const auto path = tmp.path / "t.f32";
  wwr::export_tensor(img, path);
  const wwr::FloatImage back = wwr::import_tensor(path);
  ASSERT_EQ(back.width, 4);
  ASSERT_EQ(back.height, 4);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    EXPECT_EQ(std::bit_cast<std::uint32_t>(back.data[i]),
              std::bit_cast<std::uint32_t>(img.data[i]));
}

TEST(Tensor, ZeroImagePayload) {
  oracle::TempDir tmp("tensor2");
  const auto path = tmp.path / "z.f32";
  wwr::export_tensor(wwr::FloatImage(4, 4, 0.0f), path);
  EXPECT_EQ(std::filesystem::file_size(path), std::string("F32 3 4 4\n").size() + 48 * 4);
  const wwr::FloatImage back = wwr::import_tensor(path);
  for (float v : back.data) EXPECT_EQ(v, 0.0f);
}

TEST(Tensor, ShortPayloadAndBadMagic) {
  oracle::TempDir tmp("tensor3");
  const auto short_path = tmp.path / "short.f32";
  std::ofstream(short_path, std::ios::binary) << "F32 3 4 4\n1234";
  EXPECT_THROW(wwr::import_tensor(short_path), wwr::FormatError);

  const auto magic_path = tmp.path / "magic.f32";
  std::ofstream(magic_path, std::ios::binary) << "F64 3 4 4\n";
  EXPECT_THROW(wwr::import_tensor(magic_path), wwr::FormatError);
}
