#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgjnd/codec.hpp"
#include "sgjnd/errors.hpp"
#include "sgjnd/hash.hpp"
#include "sgjnd/image.hpp"
#include "sgjnd/png_io.hpp"

namespace sgjnd {

// One source image plus its decoded distorted version at every quality level.
// Rungs are stored in the decoded pixel domain so PSNR and patch extraction
// treat every level uniformly.
struct CompressionLadder {
  ImageBuffer source;
  CodecSpec codec;
  std::vector<ImageBuffer> rungs;  // rungs[i] is level codec.levels.lo + i

  const ImageBuffer& rung(int level) const {
    require(codec.levels.contains(level), ErrorKind::MissingRung,
            "no rung at level " + std::to_string(level));
    return rungs[static_cast<size_t>(level - codec.levels.lo)];
  }
};

inline CompressionLadder build_ladder(const ImageBuffer& source, const CodecSpec& codec) {
  source.validate();
  codec.validate();
  require(source.width >= 8 && source.height >= 8, ErrorKind::CodecFailure,
          "source smaller than the 8x8 codec minimum (" + std::to_string(source.width) + "x" +
              std::to_string(source.height) + ")");

  CompressionLadder ladder;
  ladder.source = source;
  ladder.codec = codec;
  ladder.rungs.reserve(static_cast<size_t>(codec.levels.count()));
  for (int level = codec.levels.lo; level <= codec.levels.hi; ++level) {
    ImageBuffer rung;
    try {
      rung = codec.encode_decode(source, level);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(ErrorKind::CodecFailure,
           "codec failed at level " + std::to_string(level) + ": " + e.what());
    }
    require(rung.same_shape(source), ErrorKind::DimensionMismatch,
            "decoded rung at level " + std::to_string(level) + " is " +
                std::to_string(rung.width) + "x" + std::to_string(rung.height) +
                ", source is " + std::to_string(source.width) + "x" +
                std::to_string(source.height));
    ladder.rungs.push_back(std::move(rung));
  }
  return ladder;
}

enum class LabelOrigin { kGroundTruth, kPredicted };

inline const char* label_origin_name(LabelOrigin o) {
  return o == LabelOrigin::kGroundTruth ? "ground_truth" : "predicted";
}

// Per-level binary perceptual labels over a full level range.
// 1 = perceptually lossy, 0 = perceptually lossless.
struct LabelSequence {
  LevelRange levels;
  std::vector<uint8_t> labels;  // labels[i] is level levels.lo + i
  LabelOrigin origin = LabelOrigin::kPredicted;

  int label(int level) const {
    require(levels.contains(level), ErrorKind::OutOfRange,
            "level " + std::to_string(level) + " outside label range");
    return labels[static_cast<size_t>(level - levels.lo)];
  }

  void set(int level, int value) {
    require(levels.contains(level), ErrorKind::OutOfRange,
            "level " + std::to_string(level) + " outside label range");
    require(value == 0 || value == 1, ErrorKind::InvalidSpec, "labels are binary");
    labels[static_cast<size_t>(level - levels.lo)] = static_cast<uint8_t>(value);
  }

  void validate() const {
    levels.validate();
    require(labels.size() == static_cast<size_t>(levels.count()), ErrorKind::IncompleteSequence,
            "label sequence holds " + std::to_string(labels.size()) + " labels for " +
                std::to_string(levels.count()) + " levels");
    for (uint8_t v : labels) {
      require(v == 0 || v == 1, ErrorKind::InvalidSpec, "labels are binary");
    }
  }
};

// Ground-truth labels implied by a JND target: every level strictly below the
// target is still perceptually lossy, the target itself is the first lossless
// level. Output is non-increasing in level.
inline LabelSequence labels_from_jnd(int jnd_target, const CodecSpec& codec) {
  codec.validate();
  require(codec.levels.contains(jnd_target), ErrorKind::OutOfRange,
          "jnd target " + std::to_string(jnd_target) + " outside level range [" +
              std::to_string(codec.levels.lo) + ", " + std::to_string(codec.levels.hi) + "]");
  LabelSequence seq;
  seq.levels = codec.levels;
  seq.origin = LabelOrigin::kGroundTruth;
  seq.labels.resize(static_cast<size_t>(codec.levels.count()));
  for (int level = codec.levels.lo; level <= codec.levels.hi; ++level) {
    seq.labels[static_cast<size_t>(level - codec.levels.lo)] = level < jnd_target ? 1 : 0;
  }
  return seq;
}

enum class SearchStrategy { kNaive, kWindow };

inline const char* search_strategy_name(SearchStrategy s) {
  return s == SearchStrategy::kNaive ? "naive" : "window";
}

// Sentinel for "no JND level found" (e.g. every level looks lossy). Callers
// that feed metrics must map it explicitly; nothing in this toolkit coerces
// it silently.
constexpr int kJndNone = -1;

struct JNDResult {
  int jnd_level = kJndNone;
  SearchStrategy strategy = SearchStrategy::kNaive;
  int window = 0;     // w: window covers w+1 consecutive levels
  int threshold = 0;  // theta: max lossy labels tolerated inside the window
  LabelSequence source_labels;

  bool found() const { return jnd_level != kJndNone; }
};

inline nlohmann::json label_sequence_to_json(const LabelSequence& seq) {
  return nlohmann::json{{"level_lo", seq.levels.lo},
                        {"level_hi", seq.levels.hi},
                        {"origin", label_origin_name(seq.origin)},
                        {"labels", seq.labels}};
}

inline LabelSequence label_sequence_from_json(const nlohmann::json& j) {
  LabelSequence seq;
  seq.levels.lo = j.at("level_lo").get<int>();
  seq.levels.hi = j.at("level_hi").get<int>();
  seq.origin = j.at("origin").get<std::string>() == "ground_truth" ? LabelOrigin::kGroundTruth
                                                                   : LabelOrigin::kPredicted;
  seq.labels = j.at("labels").get<std::vector<uint8_t>>();
  seq.validate();
  return seq;
}

inline nlohmann::json jnd_result_to_json(const JNDResult& result) {
  nlohmann::json j{{"strategy", search_strategy_name(result.strategy)},
                   {"window", result.window},
                   {"threshold", result.threshold},
                   {"labels", label_sequence_to_json(result.source_labels)}};
  if (result.found()) {
    j["jnd_level"] = result.jnd_level;
  } else {
    j["jnd_level"] = nullptr;
  }
  return j;
}

inline JNDResult jnd_result_from_json(const nlohmann::json& j) {
  JNDResult result;
  result.strategy = j.at("strategy").get<std::string>() == "naive" ? SearchStrategy::kNaive
                                                                   : SearchStrategy::kWindow;
  result.window = j.at("window").get<int>();
  result.threshold = j.at("threshold").get<int>();
  result.source_labels = label_sequence_from_json(j.at("labels"));
  result.jnd_level = j.at("jnd_level").is_null() ? kJndNone : j.at("jnd_level").get<int>();
  return result;
}

// ---------------------------------------------------------------------------
// On-disk ladder layout:
//   <dir>/ref.png, <dir>/q001.png ... q<level>.png (zero-padded, 3 digits),
//   <dir>/ladder.json manifest with codec id, level range and file hashes.
// ---------------------------------------------------------------------------

inline std::string rung_file_name(int level) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "q%03d.png", level);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << text;
  require(out.good(), ErrorKind::IoError, "write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::IoError, "cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void save_ladder(const CompressionLadder& ladder, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json files = nlohmann::json::object();

  const std::string ref_path = (fs::path(dir) / "ref.png").string();
  write_png(ref_path, ladder.source);
  files["ref.png"] = sha256_file(ref_path);

  for (int level = ladder.codec.levels.lo; level <= ladder.codec.levels.hi; ++level) {
    const std::string name = rung_file_name(level);
    const std::string path = (fs::path(dir) / name).string();
    write_png(path, ladder.rung(level));
    files[name] = sha256_file(path);
  }

  nlohmann::json manifest{{"codec_id", codec_id_name(ladder.codec.id)},
                          {"level_lo", ladder.codec.levels.lo},
                          {"level_hi", ladder.codec.levels.hi},
                          {"files", files}};
  write_text_file((fs::path(dir) / "ladder.json").string(), manifest.dump(2) + "\n");
}

inline CompressionLadder load_ladder(const std::string& dir, bool verify_hashes = true) {
  namespace fs = std::filesystem;
  const std::string manifest_path = (fs::path(dir) / "ladder.json").string();
  require(fs::exists(manifest_path), ErrorKind::LayoutError,
          "missing ladder manifest '" + manifest_path + "'");
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::LayoutError, "unparseable manifest '" + manifest_path + "': " + e.what());
  }

  CompressionLadder ladder;
  ladder.codec.id = codec_id_from_name(manifest.at("codec_id").get<std::string>());
  ladder.codec.levels.lo = manifest.at("level_lo").get<int>();
  ladder.codec.levels.hi = manifest.at("level_hi").get<int>();
  ladder.codec.levels.validate();
  const auto& files = manifest.at("files");

  auto load_entry = [&](const std::string& name) {
    const std::string path = (fs::path(dir) / name).string();
    require(fs::exists(path), ErrorKind::LayoutError, "missing ladder file '" + path + "'");
    require(files.contains(name), ErrorKind::LayoutError,
            "manifest lacks hash for '" + name + "'");
    if (verify_hashes) {
      const std::string expected = files.at(name).get<std::string>();
      const std::string actual = sha256_file(path);
      require(actual == expected, ErrorKind::LayoutError,
              "hash mismatch for '" + path + "'");
    }
    return read_png(path);
  };

  ladder.source = load_entry("ref.png");
  ladder.rungs.reserve(static_cast<size_t>(ladder.codec.levels.count()));
  for (int level = ladder.codec.levels.lo; level <= ladder.codec.levels.hi; ++level) {
    ImageBuffer rung = load_entry(rung_file_name(level));
    require(rung.same_shape(ladder.source), ErrorKind::DimensionMismatch,
            "rung " + rung_file_name(level) + " shape differs from ref.png");
    ladder.rungs.push_back(std::move(rung));
  }
  return ladder;
}

}  // namespace sgjnd
