#pragma once

#include <csetjmp>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "wwr/error.hpp"
#include "wwr/types.hpp"

namespace wwr {

namespace detail {

struct FileHandle {
  std::FILE* fp = nullptr;
  ~FileHandle() {
    if (fp) std::fclose(fp);
  }
};

struct PngRead {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngRead() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct PngWrite {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWrite() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

// Reads an 8-bit PNG. strict_gray8 demands a plain 8-bit grayscale file
// (the label-map layout); otherwise palette/16-bit/alpha variants are
// normalized to 8-bit gray or RGB.
inline RasterImage read_png_file(const std::filesystem::path& path, bool strict_gray8) {
  FileHandle file;
  file.fp = std::fopen(path.string().c_str(), "rb");
  if (!file.fp) throw IoError("cannot open " + path.string());

  unsigned char sig[8];
  if (std::fread(sig, 1, 8, file.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw FormatError("not a PNG file: " + path.string());

  PngRead ctx;
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw Error("libpng: read struct allocation failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw Error("libpng: info struct allocation failed");

  if (setjmp(png_jmpbuf(ctx.png)))
    throw FormatError("corrupt PNG: " + path.string());

  png_init_io(ctx.png, file.fp);
  png_set_sig_bytes(ctx.png, 8);
  png_read_info(ctx.png, ctx.info);

  const png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
  const png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
  const int depth = png_get_bit_depth(ctx.png, ctx.info);
  const int color = png_get_color_type(ctx.png, ctx.info);

  if (strict_gray8 && (depth != 8 || color != PNG_COLOR_TYPE_GRAY))
    throw FormatError("expected 8-bit grayscale PNG: " + path.string());

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(ctx.png);
  if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(ctx.png);
  if (depth == 16) png_set_strip_16(ctx.png);
  png_set_strip_alpha(ctx.png);

  png_read_update_info(ctx.png, ctx.info);
  const int channels = png_get_channels(ctx.png, ctx.info);
  if (channels != 1 && channels != 3)
    throw FormatError("unsupported PNG channel layout: " + path.string());

  RasterImage img(static_cast<int>(w), static_cast<int>(h), channels);
  std::vector<png_bytep> rows(h);
  const std::size_t stride = static_cast<std::size_t>(w) * channels;
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.data.data() + y * stride;
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);
  return img;
}

inline void write_png_file(const std::filesystem::path& path, int width, int height,
                           int channels, const std::uint8_t* data) {
  FileHandle file;
  file.fp = std::fopen(path.string().c_str(), "wb");
  if (!file.fp) throw IoError("cannot write " + path.string());

  PngWrite ctx;
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw Error("libpng: write struct allocation failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw Error("libpng: info struct allocation failed");

  if (setjmp(png_jmpbuf(ctx.png)))
    throw IoError("PNG write failure: " + path.string());

  png_init_io(ctx.png, file.fp);
  png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);

  std::vector<png_bytep> rows(height);
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(data + y * stride);
  png_write_image(ctx.png, rows.data());
  png_write_end(ctx.png, nullptr);
  if (std::fflush(file.fp) != 0) throw IoError("PNG write failure: " + path.string());
}

struct JpegErr {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
};

inline void jpeg_error_exit_hook(j_common_ptr cinfo) {
  std::longjmp(reinterpret_cast<JpegErr*>(cinfo->err)->jump, 1);
}

struct JpegRead {
  jpeg_decompress_struct cinfo{};
  bool created = false;
  ~JpegRead() {
    if (created) jpeg_destroy_decompress(&cinfo);
  }
};

inline RasterImage read_jpeg_file(const std::filesystem::path& path) {
  FileHandle file;
  file.fp = std::fopen(path.string().c_str(), "rb");
  if (!file.fp) throw IoError("cannot open " + path.string());

  JpegRead ctx;
  JpegErr err;
  ctx.cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit_hook;
  if (setjmp(err.jump))
    throw FormatError("corrupt JPEG: " + path.string());

  jpeg_create_decompress(&ctx.cinfo);
  ctx.created = true;
  jpeg_stdio_src(&ctx.cinfo, file.fp);
  jpeg_read_header(&ctx.cinfo, TRUE);

  ctx.cinfo.out_color_space =
      ctx.cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&ctx.cinfo);

  const int w = static_cast<int>(ctx.cinfo.output_width);
  const int h = static_cast<int>(ctx.cinfo.output_height);
  const int channels = ctx.cinfo.output_components;
  if (channels != 1 && channels != 3)
    throw FormatError("unsupported JPEG channel layout: " + path.string());

  RasterImage img(w, h, channels);
  const std::size_t stride = static_cast<std::size_t>(w) * channels;
  while (ctx.cinfo.output_scanline < ctx.cinfo.output_height) {
    JSAMPROW row = img.data.data() + ctx.cinfo.output_scanline * stride;
    jpeg_read_scanlines(&ctx.cinfo, &row, 1);
  }
  jpeg_finish_decompress(&ctx.cinfo);
  return img;
}

}  // namespace detail

// Decodes a PNG or JPEG (dispatch on magic bytes) to an 8-bit raster.
// Grayscale files yield channels=1, color yields channels=3 (RGB); alpha is
// dropped. Baseline and progressive JPEG are both supported.
inline RasterImage decode_image(const std::filesystem::path& path) {
  detail::FileHandle probe;
  probe.fp = std::fopen(path.string().c_str(), "rb");
  if (!probe.fp) throw IoError("cannot open " + path.string());
  unsigned char magic[2] = {0, 0};
  if (std::fread(magic, 1, 2, probe.fp) != 2)
    throw FormatError("file too short to be an image: " + path.string());
  std::fclose(probe.fp);
  probe.fp = nullptr;

  if (magic[0] == 0x89 && magic[1] == 'P') return detail::read_png_file(path, false);
  if (magic[0] == 0xFF && magic[1] == 0xD8) return detail::read_jpeg_file(path);
  throw FormatError("unsupported image format: " + path.string());
}

// PNG is the only encoded output format of this pipeline.
inline void encode_png(const RasterImage& img, const std::filesystem::path& path) {
  if (img.width < 1 || img.height < 1 || img.data.empty())
    throw ValidationError("cannot encode an empty image");
  detail::write_png_file(path, img.width, img.height, img.channels, img.data.data());
}

// Label maps travel as 8-bit grayscale PNGs whose sample value is the class
// index (ignore = 255). Anything else is a format error.
inline LabelMap decode_label_png(const std::filesystem::path& path) {
  RasterImage img = detail::read_png_file(path, true);
  LabelMap map(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    if (!valid_class_value(img.data[i]))
      throw FormatError("sample " + std::to_string(img.data[i]) +
                        " is not a class index in " + path.string());
    map.classes[i] = img.data[i];
  }
  return map;
}

inline void encode_label_png(const LabelMap& map, const std::filesystem::path& path) {
  detail::write_png_file(path, map.width, map.height, 1, map.classes.data());
}

// Window masks travel as 8-bit grayscale PNGs, 0 = background, 255 = window.
// Any nonzero sample decodes to true.
inline BinaryMask decode_mask_png(const std::filesystem::path& path) {
  RasterImage img = detail::read_png_file(path, true);
  BinaryMask mask(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    mask.bits[i] = img.data[i] != 0 ? 1 : 0;
  return mask;
}

inline void encode_mask_png(const BinaryMask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> samples(mask.bits.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    samples[i] = mask.bits[i] ? 255 : 0;
  detail::write_png_file(path, mask.width, mask.height, 1, samples.data());
}

}  // namespace wwr
