#pragma once

#include <string>

#include "sgjnd/core.hpp"
#include "sgjnd/errors.hpp"

namespace sgjnd {

// How a per-level label sequence is collapsed into one JND level.
// Window semantics: a window starting at level q covers the w+1 labels at
// levels [q, q+w] and qualifies when at most theta of them are lossy.
struct SearchSpec {
  SearchStrategy strategy = SearchStrategy::kWindow;
  int window = 6;     // w
  int threshold = 5;  // theta

  void validate() const {
    require(window >= 0, ErrorKind::InvalidSpec, "window extent must be >= 0");
    require(threshold >= 0, ErrorKind::InvalidSpec, "threshold must be >= 0");
    if (strategy == SearchStrategy::kWindow) {
      require(threshold <= window + 1, ErrorKind::InvalidSpec,
              "threshold " + std::to_string(threshold) + " exceeds window capacity " +
                  std::to_string(window + 1));
    }
  }
};

// Default parameters reported for the two ladder families.
inline SearchSpec jpeg_search_defaults() { return SearchSpec{SearchStrategy::kWindow, 6, 5}; }
inline SearchSpec bpg_search_defaults() { return SearchSpec{SearchStrategy::kWindow, 3, 2}; }

// First perceptually lossless level: the smallest level whose label is 0.
// All-lossy sequences yield the kJndNone sentinel. Deliberately sensitive to
// single-label noise; window_search is the robust variant.
inline JNDResult naive_search(const LabelSequence& labels) {
  labels.validate();
  JNDResult result;
  result.strategy = SearchStrategy::kNaive;
  result.source_labels = labels;
  for (int level = labels.levels.lo; level <= labels.levels.hi; ++level) {
    if (labels.label(level) == 0) {
      result.jnd_level = level;
      return result;
    }
  }
  result.jnd_level = kJndNone;
  return result;
}

// Smallest window start whose w+1 labels contain at most theta lossy ones;
// kJndNone when no window qualifies. Window starts are restricted to
// positions where the window fits inside the level range.
inline JNDResult window_search(const LabelSequence& labels, const SearchSpec& spec) {
  labels.validate();
  spec.validate();
  require(spec.strategy == SearchStrategy::kWindow, ErrorKind::InvalidSpec,
          "window_search requires a WINDOW spec");
  require(spec.window <= labels.levels.count() - 1, ErrorKind::InvalidSpec,
          "window of " + std::to_string(spec.window + 1) + " labels does not fit a range of " +
              std::to_string(labels.levels.count()) + " levels");

  JNDResult result;
  result.strategy = SearchStrategy::kWindow;
  result.window = spec.window;
  result.threshold = spec.threshold;
  result.source_labels = labels;

  const int max_start = labels.levels.hi - spec.window;
  int sum = 0;
  for (int level = labels.levels.lo; level <= labels.levels.lo + spec.window; ++level) {
    sum += labels.label(level);
  }
  for (int start = labels.levels.lo; start <= max_start; ++start) {
    if (sum <= spec.threshold) {
      result.jnd_level = start;
      return result;
    }
    if (start < max_start) {
      sum -= labels.label(start);
      sum += labels.label(start + spec.window + 1);
    }
  }
  result.jnd_level = kJndNone;
  return result;
}

inline JNDResult run_search(const LabelSequence& labels, const SearchSpec& spec) {
  if (spec.strategy == SearchStrategy::kNaive) return naive_search(labels);
  return window_search(labels, spec);
}

}  // namespace sgjnd
