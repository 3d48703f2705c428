#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgjnd/core.hpp"
#include "sgjnd/errors.hpp"
#include "sgjnd/image.hpp"

namespace sgjnd {

// Identical images are capped at +99 dB so downstream means stay finite.
constexpr double kPsnrCapDb = 99.0;

enum class PsnrMode { kAllChannels, kLumaOnly };

inline double psnr(const ImageBuffer& ref, const ImageBuffer& dist,
                   PsnrMode mode = PsnrMode::kAllChannels) {
  require(ref.same_shape(dist), ErrorKind::ShapeMismatch,
          "psnr requires identically shaped images");
  double sq_sum = 0.0;
  size_t n = 0;
  if (mode == PsnrMode::kAllChannels || ref.channels == 1) {
    for (size_t i = 0; i < ref.data.size(); ++i) {
      const double d = static_cast<double>(ref.data[i]) - static_cast<double>(dist.data[i]);
      sq_sum += d * d;
    }
    n = ref.data.size();
  } else {
    // Rec.601 luma from interleaved RGB.
    for (size_t i = 0; i + 2 < ref.data.size(); i += 3) {
      const double yr = 0.299 * ref.data[i] + 0.587 * ref.data[i + 1] + 0.114 * ref.data[i + 2];
      const double yd =
          0.299 * dist.data[i] + 0.587 * dist.data[i + 1] + 0.114 * dist.data[i + 2];
      const double d = yr - yd;
      sq_sum += d * d;
      ++n;
    }
  }
  const double mse = sq_sum / static_cast<double>(n);
  if (mse <= 0.0) return kPsnrCapDb;
  const double value = 10.0 * std::log10(255.0 * 255.0 / mse);
  return std::min(value, kPsnrCapDb);
}

// Mean absolute error between predicted and ground-truth JND levels.
inline double delta_jnd(const std::vector<int>& pred, const std::vector<int>& gt) {
  require(pred.size() == gt.size(), ErrorKind::LengthMismatch,
          "delta_jnd requires equal-length sequences");
  require(!pred.empty(), ErrorKind::EmptyInput, "delta_jnd requires at least one pair");
  double sum = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    sum += std::abs(static_cast<double>(pred[i]) - static_cast<double>(gt[i]));
  }
  return sum / static_cast<double>(pred.size());
}

// Mean absolute difference between the PSNRs at predicted and ground-truth
// JND levels, each measured against the ladder's own reference.
inline double delta_psnr(const std::vector<const CompressionLadder*>& ladders,
                         const std::vector<int>& pred, const std::vector<int>& gt,
                         PsnrMode mode = PsnrMode::kAllChannels) {
  require(ladders.size() == pred.size() && pred.size() == gt.size(), ErrorKind::LengthMismatch,
          "delta_psnr requires aligned ladders/pred/gt");
  require(!ladders.empty(), ErrorKind::EmptyInput, "delta_psnr requires at least one ladder");
  double sum = 0.0;
  for (size_t i = 0; i < ladders.size(); ++i) {
    const CompressionLadder& ladder = *ladders[i];
    const double p = psnr(ladder.source, ladder.rung(pred[i]), mode);
    const double g = psnr(ladder.source, ladder.rung(gt[i]), mode);
    sum += std::abs(p - g);
  }
  return sum / static_cast<double>(ladders.size());
}

// Pearson linear correlation coefficient.
inline double plcc(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorKind::LengthMismatch, "plcc requires equal lengths");
  require(x.size() >= 2, ErrorKind::EmptyInput, "plcc requires at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  require(sxx > 0.0 && syy > 0.0, ErrorKind::DegenerateVariance,
          "plcc undefined for zero-variance input");
  return sxy / std::sqrt(sxx * syy);
}

struct EvalRow {
  std::string image_id;
  int jnd_pred = kJndNone;  // kJndNone marks an unresolved prediction
  int jnd_gt = 0;
  double psnr_pred_db = 0.0;  // meaningful only when jnd_pred is resolved
  double psnr_gt_db = 0.0;
};

// Aggregates exclude rows whose prediction is the NONE sentinel; those rows
// are counted in none_count instead of being coerced to a level.
struct EvalReport {
  static constexpr int kSchemaVersion = 1;
  std::vector<EvalRow> per_image;
  double delta_jnd = 0.0;
  double delta_psnr = 0.0;
  double plcc = 0.0;
  bool plcc_defined = false;
  int none_count = 0;
};

inline EvalReport make_report(std::vector<EvalRow> rows) {
  require(!rows.empty(), ErrorKind::EmptyInput, "report requires at least one row");
  EvalReport report;
  report.per_image = std::move(rows);

  std::vector<double> abs_jnd_err, psnr_pred, psnr_gt;
  for (const EvalRow& row : report.per_image) {
    if (row.jnd_pred == kJndNone) {
      ++report.none_count;
      continue;
    }
    abs_jnd_err.push_back(std::abs(static_cast<double>(row.jnd_pred - row.jnd_gt)));
    psnr_pred.push_back(row.psnr_pred_db);
    psnr_gt.push_back(row.psnr_gt_db);
  }
  if (!abs_jnd_err.empty()) {
    double jnd_sum = 0.0, psnr_sum = 0.0;
    for (size_t i = 0; i < abs_jnd_err.size(); ++i) {
      jnd_sum += abs_jnd_err[i];
      psnr_sum += std::abs(psnr_pred[i] - psnr_gt[i]);
    }
    report.delta_jnd = jnd_sum / static_cast<double>(abs_jnd_err.size());
    report.delta_psnr = psnr_sum / static_cast<double>(abs_jnd_err.size());
  }
  if (psnr_pred.size() >= 2) {
    bool x_varies = false, y_varies = false;
    for (size_t i = 1; i < psnr_gt.size(); ++i) {
      if (psnr_gt[i] != psnr_gt[0]) x_varies = true;
      if (psnr_pred[i] != psnr_pred[0]) y_varies = true;
    }
    if (x_varies && y_varies) {
      report.plcc = plcc(psnr_gt, psnr_pred);
      report.plcc_defined = true;
    }
  }
  return report;
}

inline nlohmann::json eval_report_to_json(const EvalReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const EvalRow& row : report.per_image) {
    nlohmann::json j{{"image_id", row.image_id},
                     {"jnd_gt", row.jnd_gt},
                     {"psnr_gt_db", row.psnr_gt_db}};
    if (row.jnd_pred == kJndNone) {
      j["jnd_pred"] = nullptr;
      j["psnr_pred_db"] = nullptr;
    } else {
      j["jnd_pred"] = row.jnd_pred;
      j["psnr_pred_db"] = row.psnr_pred_db;
    }
    rows.push_back(std::move(j));
  }
  nlohmann::json j{{"schema", EvalReport::kSchemaVersion},
                   {"per_image", rows},
                   {"delta_jnd", report.delta_jnd},
                   {"delta_psnr", report.delta_psnr},
                   {"none_count", report.none_count}};
  if (report.plcc_defined) {
    j["plcc"] = report.plcc;
  } else {
    j["plcc"] = nullptr;
  }
  return j;
}

inline EvalReport eval_report_from_json(const nlohmann::json& j) {
  require(j.at("schema").get<int>() == EvalReport::kSchemaVersion, ErrorKind::InvalidConfig,
          "unsupported report schema version");
  EvalReport report;
  for (const auto& row_json : j.at("per_image")) {
    EvalRow row;
    row.image_id = row_json.at("image_id").get<std::string>();
    row.jnd_gt = row_json.at("jnd_gt").get<int>();
    row.psnr_gt_db = row_json.at("psnr_gt_db").get<double>();
    if (row_json.at("jnd_pred").is_null()) {
      row.jnd_pred = kJndNone;
    } else {
      row.jnd_pred = row_json.at("jnd_pred").get<int>();
      row.psnr_pred_db = row_json.at("psnr_pred_db").get<double>();
    }
    report.per_image.push_back(std::move(row));
  }
  report.delta_jnd = j.at("delta_jnd").get<double>();
  report.delta_psnr = j.at("delta_psnr").get<double>();
  report.none_count = j.at("none_count").get<int>();
  report.plcc_defined = !j.at("plcc").is_null();
  if (report.plcc_defined) report.plcc = j.at("plcc").get<double>();
  return report;
}

inline std::string eval_report_to_csv(const EvalReport& report) {
  std::string csv = "image_id,jnd_pred,jnd_gt,abs_err,psnr_pred_db,psnr_gt_db\n";
  char line[256];
  for (const EvalRow& row : report.per_image) {
    if (row.jnd_pred == kJndNone) {
      std::snprintf(line, sizeof(line), "%s,NONE,%d,NONE,NONE,%.6f\n", row.image_id.c_str(),
                    row.jnd_gt, row.psnr_gt_db);
    } else {
      std::snprintf(line, sizeof(line), "%s,%d,%d,%d,%.6f,%.6f\n", row.image_id.c_str(),
                    row.jnd_pred, row.jnd_gt, std::abs(row.jnd_pred - row.jnd_gt),
                    row.psnr_pred_db, row.psnr_gt_db);
    }
    csv += line;
  }
  return csv;
}

}  // namespace sgjnd
