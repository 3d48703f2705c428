#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sgjnd/codec.hpp"
#include "sgjnd/errors.hpp"
#include "sgjnd/rng.hpp"

namespace sgjnd {

// Generalized extreme value distribution. shape == 0 is the Gumbel limit;
// |shape| below kGumbelEps is evaluated with the Gumbel formulas to avoid
// catastrophic cancellation near zero.
struct GEVParams {
  double location = 0.0;  // mu
  double scale = 1.0;     // sigma_g, > 0
  double shape = 0.0;     // xi

  void validate() const {
    require(scale > 0.0, ErrorKind::InvalidSpec, "GEV scale must be positive");
    require(std::isfinite(location) && std::isfinite(scale) && std::isfinite(shape),
            ErrorKind::InvalidSpec, "GEV parameters must be finite");
  }
};

namespace detail {
constexpr double kGumbelEps = 1e-9;
}

inline double gev_cdf(const GEVParams& p, double x) {
  const double z = (x - p.location) / p.scale;
  if (std::abs(p.shape) < detail::kGumbelEps) {
    return std::exp(-std::exp(-z));
  }
  const double t = 1.0 + p.shape * z;
  if (t <= 0.0) return p.shape > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::pow(t, -1.0 / p.shape));
}

// Inverse CDF.
inline double gev_quantile(const GEVParams& p, double prob) {
  p.validate();
  require(prob > 0.0 && prob < 1.0, ErrorKind::OutOfRange, "quantile must lie in (0, 1)");
  const double log_term = -std::log(prob);
  if (std::abs(p.shape) < detail::kGumbelEps) {
    return p.location - p.scale * std::log(log_term);
  }
  return p.location + p.scale / p.shape * (std::pow(log_term, -p.shape) - 1.0);
}

// Negative log-likelihood; +inf when any sample falls outside the support.
inline double gev_negative_log_likelihood(const GEVParams& p, const std::vector<double>& xs) {
  if (!(p.scale > 0.0)) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(xs.size());
  double nll = n * std::log(p.scale);
  if (std::abs(p.shape) < detail::kGumbelEps) {
    for (double x : xs) {
      const double z = (x - p.location) / p.scale;
      nll += z + std::exp(-z);
    }
    return nll;
  }
  const double inv_shape = 1.0 / p.shape;
  for (double x : xs) {
    const double t = 1.0 + p.shape * (x - p.location) / p.scale;
    if (t <= 0.0) return std::numeric_limits<double>::infinity();
    nll += (1.0 + inv_shape) * std::log(t) + std::pow(t, -inv_shape);
  }
  return nll;
}

struct GevFit {
  GEVParams params;
  bool converged = false;
  int iterations = 0;
  double nll = std::numeric_limits<double>::infinity();
};

namespace detail {

// Nelder-Mead over (location, log(scale), shape). Derivative-free keeps the
// fit stable when the shape sits near the Gumbel boundary, where gradient MLE
// is fragile.
struct NelderMead {
  using Point = std::array<double, 3>;

  static GevFit minimize(const std::vector<double>& xs, const Point& start, int max_iter,
                         std::string* trace) {
    auto objective = [&xs](const Point& p) {
      GEVParams params{p[0], std::exp(p[1]), p[2]};
      return gev_negative_log_likelihood(params, xs);
    };

    std::array<Point, 4> simplex;
    std::array<double, 4> f;
    simplex[0] = start;
    for (int i = 0; i < 3; ++i) {
      simplex[i + 1] = start;
      simplex[i + 1][i] += (i == 1) ? 0.2 : 0.5;  // log-scale moves are gentler
    }
    for (int i = 0; i < 4; ++i) f[i] = objective(simplex[i]);

    int iter = 0;
    for (; iter < max_iter; ++iter) {
      std::array<int, 4> order{0, 1, 2, 3};
      std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
      const int best = order[0], worst = order[3], second_worst = order[2];

      if (std::abs(f[worst] - f[best]) < 1e-12 * (1.0 + std::abs(f[best]))) break;

      Point centroid{0, 0, 0};
      for (int i = 0; i < 4; ++i) {
        if (i == worst) continue;
        for (int d = 0; d < 3; ++d) centroid[d] += simplex[i][d] / 3.0;
      }

      auto blend = [&](double coeff) {
        Point p;
        for (int d = 0; d < 3; ++d) {
          p[d] = centroid[d] + coeff * (simplex[worst][d] - centroid[d]);
        }
        return p;
      };

      const Point reflected = blend(-1.0);
      const double f_reflected = objective(reflected);
      if (f_reflected < f[best]) {
        const Point expanded = blend(-2.0);
        const double f_expanded = objective(expanded);
        if (f_expanded < f_reflected) {
          simplex[worst] = expanded;
          f[worst] = f_expanded;
        } else {
          simplex[worst] = reflected;
          f[worst] = f_reflected;
        }
      } else if (f_reflected < f[second_worst]) {
        simplex[worst] = reflected;
        f[worst] = f_reflected;
      } else {
        const Point contracted = blend(0.5);
        const double f_contracted = objective(contracted);
        if (f_contracted < f[worst]) {
          simplex[worst] = contracted;
          f[worst] = f_contracted;
        } else {
          for (int i = 0; i < 4; ++i) {
            if (i == best) continue;
            for (int d = 0; d < 3; ++d) {
              simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            }
            f[i] = objective(simplex[i]);
          }
        }
      }

      if (trace && iter % 50 == 0) {
        *trace += "iter " + std::to_string(iter) + " nll " + std::to_string(f[best]) + "; ";
      }
    }

    int best = 0;
    for (int i = 1; i < 4; ++i) {
      if (f[i] < f[best]) best = i;
    }
    GevFit fit;
    fit.params = GEVParams{simplex[best][0], std::exp(simplex[best][1]), simplex[best][2]};
    fit.nll = f[best];
    fit.iterations = iter;
    fit.converged = iter < max_iter && std::isfinite(fit.nll);
    return fit;
  }
};

}  // namespace detail

// Maximum-likelihood GEV fit from moment-based (Gumbel) initialization.
inline GevFit fit_gev(const std::vector<double>& samples, int min_n = 5) {
  require(static_cast<int>(samples.size()) >= min_n, ErrorKind::TooFewRecords,
          "fit_gev needs at least " + std::to_string(min_n) + " samples, got " +
              std::to_string(samples.size()));

  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= n;
  require(var >= 1e-9, ErrorKind::DegenerateSamples,
          "sample variance " + std::to_string(var) + " below 1e-9");

  // Gumbel moment estimates: scale = sd*sqrt(6)/pi, location = mean - gamma*scale.
  constexpr double kEulerGamma = 0.57721566490153286;
  const double sd = std::sqrt(var);
  const double scale0 = sd * std::sqrt(6.0) / 3.14159265358979323846;
  const double loc0 = mean - kEulerGamma * scale0;

  std::string trace;
  GevFit best;
  // Multi-start over a few shape seeds; the likelihood surface is flat in
  // shape for small samples.
  for (double shape0 : {0.0, 0.1, -0.1, 0.3}) {
    GevFit fit = detail::NelderMead::minimize(
        samples, {loc0, std::log(scale0), shape0}, 500, &trace);
    if (fit.nll < best.nll) best = fit;
  }
  require(best.converged && std::isfinite(best.nll), ErrorKind::NoConvergence,
          "GEV MLE did not converge; trace: " + trace);
  best.params.validate();
  return best;
}

// Quantile of the fitted distribution, rounded to the nearest integer level
// and clamped into the codec's range. The default quantile (median) is
// exposed in run configs.
inline int gev_target(const GEVParams& params, double quantile, LevelRange range = {1, 100}) {
  range.validate();
  const double value = gev_quantile(params, quantile);
  const long rounded = std::lround(value);
  return static_cast<int>(std::clamp(rounded, static_cast<long>(range.lo),
                                     static_cast<long>(range.hi)));
}

// Inverse-CDF sampling; used by tests and bootstrap stability checks.
inline std::vector<double> gev_sample(const GEVParams& params, int count, Rng& rng) {
  params.validate();
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    double u = rng.next_double();
    while (u <= 0.0) u = rng.next_double();
    out.push_back(gev_quantile(params, u));
  }
  return out;
}

}  // namespace sgjnd
