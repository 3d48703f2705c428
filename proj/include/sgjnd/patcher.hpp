#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sgjnd/errors.hpp"
#include "sgjnd/image.hpp"
#include "sgjnd/rng.hpp"

namespace sgjnd {

struct PatchOrigin {
  int x = 0;
  int y = 0;
};

// Aligned (reference, distorted) crop pair taken from identical coordinates.
struct PatchPair {
  ImageBuffer ref_patch;
  ImageBuffer dist_patch;
  PatchOrigin origin;
  int index = 0;  // 1-based
};

inline bool rects_disjoint(PatchOrigin a, PatchOrigin b, int s) {
  return a.x + s <= b.x || b.x + s <= a.x || a.y + s <= b.y || b.y + s <= a.y;
}

// Draws n pairwise-disjoint s x s patch origins. Random rejection sampling
// first; after 1000 consecutive rejections the placement falls back to a
// seeded choice of grid-aligned tiles. Deterministic in the seed.
inline std::vector<PatchOrigin> draw_patch_origins(int width, int height, int n, int s,
                                                   uint64_t seed) {
  require(n >= 1 && s >= 1, ErrorKind::InvalidSpec, "need n >= 1 patches of size s >= 1");
  require(s <= width && s <= height, ErrorKind::InfeasiblePatching,
          "patch size " + std::to_string(s) + " exceeds image " + std::to_string(width) + "x" +
              std::to_string(height));
  require(static_cast<long long>(n) * s * s <= static_cast<long long>(width) * height,
          ErrorKind::InfeasiblePatching,
          std::to_string(n) + " patches of " + std::to_string(s) + "x" + std::to_string(s) +
              " exceed the image area");

  Rng rng(seed);
  std::vector<PatchOrigin> origins;
  origins.reserve(static_cast<size_t>(n));
  int consecutive_rejections = 0;
  while (static_cast<int>(origins.size()) < n && consecutive_rejections < 1000) {
    PatchOrigin candidate{rng.uniform_int(0, width - s), rng.uniform_int(0, height - s)};
    bool ok = true;
    for (const PatchOrigin& placed : origins) {
      if (!rects_disjoint(candidate, placed, s)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      origins.push_back(candidate);
      consecutive_rejections = 0;
    } else {
      ++consecutive_rejections;
    }
  }
  if (static_cast<int>(origins.size()) == n) return origins;

  // Grid fallback: shuffle the disjoint tile positions and take the first n.
  const int cols = width / s;
  const int rows = height / s;
  require(cols * rows >= n, ErrorKind::InfeasiblePatching,
          "grid tiling fits only " + std::to_string(cols * rows) + " of " + std::to_string(n) +
              " requested patches");
  std::vector<PatchOrigin> tiles;
  tiles.reserve(static_cast<size_t>(cols) * rows);
  for (int ty = 0; ty < rows; ++ty) {
    for (int tx = 0; tx < cols; ++tx) {
      tiles.push_back(PatchOrigin{tx * s, ty * s});
    }
  }
  for (size_t i = tiles.size(); i > 1; --i) {
    std::swap(tiles[i - 1], tiles[rng.uniform_int(0, static_cast<int>(i) - 1)]);
  }
  tiles.resize(static_cast<size_t>(n));
  return tiles;
}

// Random aligned, non-overlapping patch extraction from a reference/distorted
// pair. Positions are shared between the two images so every pair crops
// identical coordinates.
inline std::vector<PatchPair> extract_patches(const ImageBuffer& ref, const ImageBuffer& dist,
                                              int n, int s, uint64_t seed) {
  require(ref.same_shape(dist), ErrorKind::ShapeMismatch,
          "reference and distorted images differ in shape");
  const std::vector<PatchOrigin> origins = draw_patch_origins(ref.width, ref.height, n, s, seed);
  std::vector<PatchPair> pairs;
  pairs.reserve(origins.size());
  for (size_t i = 0; i < origins.size(); ++i) {
    PatchPair pair;
    pair.origin = origins[i];
    pair.index = static_cast<int>(i) + 1;
    pair.ref_patch = crop(ref, origins[i].x, origins[i].y, s, s);
    pair.dist_patch = crop(dist, origins[i].x, origins[i].y, s, s);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace sgjnd
