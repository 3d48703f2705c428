#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sgjnd/gev.hpp"

using namespace sgjnd;

namespace {

// Bisection oracle for the quantile function, independent of the closed form.
double quantile_by_bisection(const GEVParams& p, double prob) {
  double lo = p.location - 60.0 * p.scale;
  double hi = p.location + 60.0 * p.scale;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gev_cdf(p, mid) < prob) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("degenerate samples are rejected", "[gev]") {
  const std::vector<double> flat(20, 40.0);
  try {
    fit_gev(flat);
    FAIL("expected DegenerateSamples");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::DegenerateSamples);
  }
}

TEST_CASE("too few samples violate the precondition", "[gev]") {
  try {
    fit_gev({28.0, 31.0, 35.0}, 5);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::TooFewRecords);
  }
}

TEST_CASE("MLE recovers known parameters from inverse-CDF samples", "[gev]") {
  const GEVParams truth{30.0, 5.0, 0.1};
  Rng rng(1234);
  const std::vector<double> samples = gev_sample(truth, 200, rng);
  const GevFit fit = fit_gev(samples);
  REQUIRE(fit.converged);
  REQUIRE(std::abs(fit.params.location - truth.location) <= 1.0);
  REQUIRE(std::abs(fit.params.scale - truth.scale) <= 0.8);
}

TEST_CASE("gumbel quantile identity at the location parameter", "[gev]") {
  const GEVParams p{50.0, 10.0, 0.0};
  // CDF(mu) = exp(-1) for the Gumbel case, so the inverse at exp(-1) is mu.
  const double prob = std::exp(-1.0);
  REQUIRE(gev_quantile(p, prob) == Catch::Approx(50.0).margin(1e-9));
  REQUIRE(gev_target(p, prob) == 50);
}

TEST_CASE("median target matches a bisection oracle", "[gev]") {
  for (const GEVParams& p :
       {GEVParams{30.0, 5.0, 0.1}, GEVParams{50.0, 10.0, 0.0}, GEVParams{70.0, 3.0, -0.2}}) {
    const double closed_form = gev_quantile(p, 0.5);
    const double numeric = quantile_by_bisection(p, 0.5);
    REQUIRE(closed_form == Catch::Approx(numeric).margin(1e-6));
  }
}

TEST_CASE("targets are rounded and clamped into the level range", "[gev]") {
  const GEVParams low{-40.0, 2.0, 0.0};
  REQUIRE(gev_target(low, 0.5, {1, 100}) == 1);
  const GEVParams high{500.0, 2.0, 0.0};
  REQUIRE(gev_target(high, 0.5, {1, 100}) == 100);
  const GEVParams mid{42.3, 1.0, 0.0};
  REQUIRE(gev_target(mid, std::exp(-1.0), {1, 100}) == 42);
}

TEST_CASE("gev_target is monotone non-decreasing in the quantile", "[gev]") {
  const GEVParams p{45.0, 8.0, 0.15};
  int previous = 0;
  for (double q : {0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    const int target = gev_target(p, q, {1, 100});
    REQUIRE(target >= previous);
    previous = target;
  }
}

TEST_CASE("bootstrap stability: refit of fitted-model samples stays close", "[gev]") {
  const GEVParams truth{35.0, 6.0, 0.05};
  Rng rng(99);
  const std::vector<double> samples = gev_sample(truth, 300, rng);
  const GevFit first = fit_gev(samples);

  Rng rng2(100);
  const std::vector<double> resampled = gev_sample(first.params, 500, rng2);
  const GevFit second = fit_gev(resampled);
  REQUIRE(second.converged);
  REQUIRE(std::abs(second.params.location - first.params.location) <= 1.0);
  REQUIRE(std::abs(second.params.scale - first.params.scale) <= 1.0);
  REQUIRE(std::abs(second.params.shape - first.params.shape) <= 0.25);
}
