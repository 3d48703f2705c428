#include <catch2/catch_amalgamated.hpp>

#include "sgjnd/core.hpp"
#include "sgjnd/eval.hpp"
#include "test_support.hpp"

using namespace sgjnd;

TEST_CASE("psnr closed forms", "[eval]") {
  const ImageBuffer a = test::textured_image(32, 32, 1, 1);
  REQUIRE(psnr(a, a) == Catch::Approx(kPsnrCapDb));

  ImageBuffer shifted = a;
  for (auto& v : shifted.data) v = static_cast<uint8_t>(v >= 128 ? v - 16 : v + 16);
  REQUIRE(psnr(a, shifted) == Catch::Approx(24.0329).margin(0.01));

  ImageBuffer checker = ImageBuffer::allocate(16, 16, 1);
  ImageBuffer inverse = ImageBuffer::allocate(16, 16, 1);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      const bool on = (x + y) % 2 == 0;
      checker.at(x, y, 0) = on ? 255 : 0;
      inverse.at(x, y, 0) = on ? 0 : 255;
    }
  }
  REQUIRE(psnr(checker, inverse) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("psnr is symmetric and rejects shape mismatches", "[eval]") {
  const ImageBuffer a = test::textured_image(24, 16, 3, 2);
  const ImageBuffer b = test::textured_image(24, 16, 3, 9);
  REQUIRE(psnr(a, b) == Catch::Approx(psnr(b, a)).epsilon(1e-12));

  const ImageBuffer c = test::textured_image(16, 16, 3, 9);
  REQUIRE_THROWS_AS(psnr(a, c), Error);
}

TEST_CASE("luma-only psnr equals joint psnr on grayscale content", "[eval]") {
  ImageBuffer a = test::textured_image(16, 16, 3, 4);
  ImageBuffer b = a;
  // Same delta on all three channels keeps luma behavior aligned.
  for (size_t i = 0; i < b.data.size(); ++i) {
    b.data[i] = static_cast<uint8_t>(b.data[i] >= 8 ? b.data[i] - 8 : b.data[i] + 8);
  }
  // Force equal RGB triplets.
  for (size_t i = 0; i + 2 < a.data.size(); i += 3) {
    a.data[i + 1] = a.data[i];
    a.data[i + 2] = a.data[i];
    b.data[i + 1] = b.data[i];
    b.data[i + 2] = b.data[i];
  }
  REQUIRE(psnr(a, b, PsnrMode::kLumaOnly) ==
          Catch::Approx(psnr(a, b, PsnrMode::kAllChannels)).margin(1e-9));
}

TEST_CASE("delta_jnd closed forms", "[eval]") {
  REQUIRE(delta_jnd({30, 40}, {30, 40}) == Catch::Approx(0.0));
  REQUIRE(delta_jnd({30, 40}, {35, 38}) == Catch::Approx(3.5));
  REQUIRE(delta_jnd({10, 20}, {20, 10}) == Catch::Approx(delta_jnd({20, 10}, {10, 20})));
  REQUIRE_THROWS_AS(delta_jnd({1, 2}, {1}), Error);
}

TEST_CASE("delta_psnr equals direct recomputation", "[eval]") {
  const ImageBuffer src_a = test::textured_image(32, 32, 3, 21);
  const ImageBuffer src_b = test::textured_image(32, 32, 3, 22);
  const CompressionLadder la = build_ladder(src_a, jpeg_codec({1, 30}));
  const CompressionLadder lb = build_ladder(src_b, jpeg_codec({1, 30}));

  const std::vector<const CompressionLadder*> ladders{&la, &lb};
  const std::vector<int> pred{10, 25};
  const std::vector<int> gt{14, 22};

  REQUIRE(delta_psnr(ladders, gt, gt) == Catch::Approx(0.0));

  const double expected = (std::abs(psnr(src_a, la.rung(10)) - psnr(src_a, la.rung(14))) +
                           std::abs(psnr(src_b, lb.rung(25)) - psnr(src_b, lb.rung(22)))) /
                          2.0;
  REQUIRE(delta_psnr(ladders, pred, gt) == Catch::Approx(expected).epsilon(1e-12));
  REQUIRE(delta_psnr(ladders, gt, pred) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("plcc closed forms and affine invariance", "[eval]") {
  std::vector<double> x{1, 2, 3, 4};
  REQUIRE(plcc(x, {3, 5, 7, 9}) == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(plcc(x, {-1, -2, -3, -4}) == Catch::Approx(-1.0).margin(1e-12));
  REQUIRE(plcc(x, {1, 3, 2, 4}) == Catch::Approx(0.8).margin(1e-9));

  std::vector<double> y{0.4, 2.9, 1.1, 7.3};
  const double base = plcc(x, y);
  std::vector<double> x_affine, y_affine;
  for (double v : x) x_affine.push_back(3.7 * v + 11.0);
  for (double v : y) y_affine.push_back(0.02 * v - 5.0);
  REQUIRE(plcc(x_affine, y) == Catch::Approx(base).margin(1e-9));
  REQUIRE(plcc(x, y_affine) == Catch::Approx(base).margin(1e-9));

  REQUIRE_THROWS_AS(plcc({1, 1, 1}, {1, 2, 3}), Error);
}

TEST_CASE("report aggregates equal recomputation from rows", "[eval]") {
  std::vector<EvalRow> rows{{"a", 30, 35, 33.0, 34.0},
                            {"b", 40, 38, 31.5, 30.0},
                            {"c", kJndNone, 50, 0.0, 29.0},
                            {"d", 20, 20, 36.25, 36.25}};
  const EvalReport report = make_report(rows);
  REQUIRE(report.none_count == 1);
  REQUIRE(report.delta_jnd == Catch::Approx((5 + 2 + 0) / 3.0));
  REQUIRE(report.delta_psnr == Catch::Approx((1.0 + 1.5 + 0.0) / 3.0));
  REQUIRE(report.plcc_defined);
  REQUIRE(report.plcc ==
          Catch::Approx(plcc({34.0, 30.0, 36.25}, {33.0, 31.5, 36.25})).margin(1e-12));
}

TEST_CASE("report JSON round-trip is exact", "[eval]") {
  std::vector<EvalRow> rows{{"img_00", 31, 29, 33.125, 34.0625},
                            {"img_01", kJndNone, 77, 0.0, 28.5},
                            {"img_02", 64, 60, 38.0009765625, 37.5}};
  const EvalReport report = make_report(rows);
  const nlohmann::json j = eval_report_to_json(report);
  const EvalReport back = eval_report_from_json(j);
  REQUIRE(eval_report_to_json(back) == j);
  REQUIRE(back.per_image.size() == report.per_image.size());
  REQUIRE(back.per_image[1].jnd_pred == kJndNone);
  REQUIRE(back.delta_jnd == report.delta_jnd);
  REQUIRE(back.delta_psnr == report.delta_psnr);
}

TEST_CASE("report CSV has a header plus one row per image", "[eval]") {
  std::vector<EvalRow> rows{{"a", 30, 35, 33.0, 34.0}, {"b", kJndNone, 38, 0.0, 30.0}};
  const std::string csv = eval_report_to_csv(make_report(rows));
  const size_t lines = std::count(csv.begin(), csv.end(), '\n');
  REQUIRE(lines == rows.size() + 1);
  REQUIRE(csv.rfind("image_id,jnd_pred,jnd_gt,abs_err,psnr_pred_db,psnr_gt_db\n", 0) == 0);
  REQUIRE(csv.find("b,NONE,38,NONE") != std::string::npos);
}
