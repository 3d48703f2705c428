#pragma once

#include <csetjmp>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>

#include <jpeglib.h>

#include "sgjnd/errors.hpp"
#include "sgjnd/image.hpp"

namespace sgjnd {

enum class CodecId { kJpeg, kGeneric };
enum class LevelOrientation { kHigherLevelIsBetter };

inline const char* codec_id_name(CodecId id) {
  return id == CodecId::kJpeg ? "jpeg" : "generic";
}

inline CodecId codec_id_from_name(const std::string& name) {
  if (name == "jpeg") return CodecId::kJpeg;
  if (name == "generic") return CodecId::kGeneric;
  fail(ErrorKind::InvalidConfig, "unknown codec id '" + name + "'");
}

// Inclusive quality-level interval, JPEG-style [1, 100] by default.
struct LevelRange {
  int lo = 1;
  int hi = 100;

  int count() const { return hi - lo + 1; }
  bool contains(int level) const { return level >= lo && level <= hi; }

  void validate() const {
    require(lo <= hi, ErrorKind::InvalidSpec,
            "level range [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
  }
};

inline bool operator==(const LevelRange& a, const LevelRange& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

namespace detail {

struct JpegErrorTrap {
  jpeg_error_mgr mgr;
  jmp_buf env;
  char message[JMSG_LENGTH_MAX] = {0};

  static void on_error(j_common_ptr cinfo) {
    auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, trap->message);
    longjmp(trap->env, 1);
  }
};

}  // namespace detail

// Encodes to an in-memory JPEG at the given quality (1..100).
inline std::vector<uint8_t> jpeg_encode(const ImageBuffer& src, int quality) {
  src.validate();
  jpeg_compress_struct cinfo;
  detail::JpegErrorTrap trap;
  cinfo.err = jpeg_std_error(&trap.mgr);
  trap.mgr.error_exit = detail::JpegErrorTrap::on_error;

  unsigned char* buffer = nullptr;
  unsigned long buffer_size = 0;
  if (setjmp(trap.env)) {
    jpeg_destroy_compress(&cinfo);
    if (buffer) free(buffer);
    fail(ErrorKind::CodecFailure,
         "jpeg encode failed at quality " + std::to_string(quality) + ": " + trap.message);
  }

  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
  cinfo.image_width = static_cast<JDIMENSION>(src.width);
  cinfo.image_height = static_cast<JDIMENSION>(src.height);
  cinfo.input_components = src.channels;
  cinfo.in_color_space = src.channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const size_t stride = static_cast<size_t>(src.width) * src.channels;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(src.data.data() + cinfo.next_scanline * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);

  std::vector<uint8_t> out(buffer, buffer + buffer_size);
  free(buffer);
  return out;
}

// Decodes an in-memory JPEG; `channels` selects the output colorspace.
inline ImageBuffer jpeg_decode(const std::vector<uint8_t>& bytes, int channels) {
  jpeg_decompress_struct cinfo;
  detail::JpegErrorTrap trap;
  cinfo.err = jpeg_std_error(&trap.mgr);
  trap.mgr.error_exit = detail::JpegErrorTrap::on_error;

  if (setjmp(trap.env)) {
    jpeg_destroy_decompress(&cinfo);
    fail(ErrorKind::CodecFailure, std::string("jpeg decode failed: ") + trap.message);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);

  ImageBuffer out = ImageBuffer::allocate(static_cast<int>(cinfo.output_width),
                                          static_cast<int>(cinfo.output_height), channels);
  const size_t stride = static_cast<size_t>(out.width) * channels;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.data.data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

inline ImageBuffer jpeg_roundtrip(const ImageBuffer& src, int quality) {
  return jpeg_decode(jpeg_encode(src, quality), src.channels);
}

using EncodeDecodeFn = std::function<ImageBuffer(const ImageBuffer&, int level)>;

// Which codec produces the distorted rungs and over which level interval.
// kGeneric carries an injected encode+decode function (e.g. a BPG binary
// wrapper); kJpeg is backed by libjpeg in-process.
struct CodecSpec {
  CodecId id = CodecId::kJpeg;
  LevelRange levels{1, 100};
  LevelOrientation orientation = LevelOrientation::kHigherLevelIsBetter;
  EncodeDecodeFn generic_fn;

  void validate() const {
    levels.validate();
    require(id != CodecId::kGeneric || static_cast<bool>(generic_fn), ErrorKind::InvalidSpec,
            "generic codec requires an injected encode function");
  }

  ImageBuffer encode_decode(const ImageBuffer& src, int level) const {
    require(levels.contains(level), ErrorKind::OutOfRange,
            "level " + std::to_string(level) + " outside codec range");
    if (id == CodecId::kJpeg) return jpeg_roundtrip(src, level);
    return generic_fn(src, level);
  }
};

inline CodecSpec jpeg_codec(LevelRange levels = {1, 100}) {
  CodecSpec spec;
  spec.id = CodecId::kJpeg;
  spec.levels = levels;
  return spec;
}

}  // namespace sgjnd
