#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgjnd/errors.hpp"

namespace sgjnd {

// 8-bit raster, row-major, interleaved channels (1 = gray, 3 = RGB).
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<uint8_t> data;

  static ImageBuffer allocate(int width, int height, int channels, uint8_t fill = 0) {
    ImageBuffer img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.data.assign(static_cast<size_t>(width) * height * channels, fill);
    img.validate();
    return img;
  }

  size_t sample_count() const { return static_cast<size_t>(width) * height * channels; }

  uint8_t& at(int x, int y, int c) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  uint8_t at(int x, int y, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }

  bool same_shape(const ImageBuffer& other) const {
    return width == other.width && height == other.height && channels == other.channels;
  }

  void validate() const {
    require(width > 0 && height > 0, ErrorKind::DimensionMismatch,
            "image dimensions must be positive");
    require(channels == 1 || channels == 3, ErrorKind::DimensionMismatch,
            "channel count must be 1 or 3, got " + std::to_string(channels));
    require(data.size() == sample_count(), ErrorKind::DimensionMismatch,
            "data length " + std::to_string(data.size()) + " != w*h*c " +
                std::to_string(sample_count()));
  }
};

inline bool operator==(const ImageBuffer& a, const ImageBuffer& b) {
  return a.same_shape(b) && a.data == b.data;
}

inline ImageBuffer crop(const ImageBuffer& src, int x, int y, int w, int h) {
  require(x >= 0 && y >= 0 && w > 0 && h > 0 && x + w <= src.width && y + h <= src.height,
          ErrorKind::OutOfRange,
          "crop rectangle exceeds image bounds");
  ImageBuffer out = ImageBuffer::allocate(w, h, src.channels);
  const size_t row_bytes = static_cast<size_t>(w) * src.channels;
  for (int row = 0; row < h; ++row) {
    const uint8_t* src_row =
        src.data.data() + (static_cast<size_t>(y + row) * src.width + x) * src.channels;
    std::copy(src_row, src_row + row_bytes,
              out.data.begin() + static_cast<size_t>(row) * row_bytes);
  }
  return out;
}

}  // namespace sgjnd
