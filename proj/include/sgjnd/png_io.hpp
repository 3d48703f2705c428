#pragma once

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <png.h>

#include "sgjnd/errors.hpp"
#include "sgjnd/image.hpp"

namespace sgjnd {

namespace detail {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

[[noreturn]] inline void png_error_fn(png_structp png, png_const_charp msg) {
  // png_error longjmps by default; we route through C++ exceptions instead.
  throw Error(ErrorKind::IoError, std::string("libpng: ") + (msg ? msg : "unknown error"));
}

inline void png_warn_fn(png_structp, png_const_charp) {}

}  // namespace detail

inline void write_png(const std::string& path, const ImageBuffer& img) {
  img.validate();
  detail::FilePtr fp(fopen(path.c_str(), "wb"));
  require(fp != nullptr, ErrorKind::IoError, "cannot open '" + path + "' for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            detail::png_error_fn, detail::png_warn_fn);
  require(png != nullptr, ErrorKind::IoError, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorKind::IoError, "png_create_info_struct failed");
  }

  try {
    png_init_io(png, fp.get());
    // Fixed settings keep output bytes deterministic for identical pixels.
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, img.width, img.height, 8,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const size_t stride = static_cast<size_t>(img.width) * img.channels;
    for (int y = 0; y < img.height; ++y) {
      png_write_row(png, const_cast<png_bytep>(img.data.data() + y * stride));
    }
    png_write_end(png, info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

inline ImageBuffer read_png(const std::string& path) {
  detail::FilePtr fp(fopen(path.c_str(), "rb"));
  require(fp != nullptr, ErrorKind::IoError, "cannot open '" + path + "' for reading");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           detail::png_error_fn, detail::png_warn_fn);
  require(png != nullptr, ErrorKind::IoError, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(ErrorKind::IoError, "png_create_info_struct failed");
  }

  ImageBuffer img;
  try {
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_set_strip_16(png);
    png_set_packing(png);
    const png_byte color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
      png_set_expand_gray_1_2_4_to_8(png);
    }
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    require(channels == 1 || channels == 3, ErrorKind::IoError,
            "unsupported channel count in '" + path + "'");
    img = ImageBuffer::allocate(static_cast<int>(png_get_image_width(png, info)),
                                static_cast<int>(png_get_image_height(png, info)), channels);
    const size_t stride = static_cast<size_t>(img.width) * channels;
    for (int y = 0; y < img.height; ++y) {
      png_read_row(png, img.data.data() + y * stride, nullptr);
    }
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

}  // namespace sgjnd
