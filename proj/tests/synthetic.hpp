#pragma once

// Synthetic samples with known tails, shared by the estimator tests.

#include <cmath>
#include <vector>

#include "mfm/rng.hpp"

namespace mfm_test {

// Pareto with scale 1: P(X > x) = x^-alpha for x >= 1.
inline std::vector<double> pareto(double alpha, std::size_t n, std::uint64_t seed) {
  mfm::Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = std::pow(1.0 - rng.uniform(), -1.0 / alpha);
  return out;
}

// Pareto magnitudes with random signs.
inline std::vector<double> symmetric_pareto(double alpha, std::size_t n, std::uint64_t seed) {
  mfm::Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) {
    const double mag = std::pow(1.0 - rng.uniform(), -1.0 / alpha);
    x = rng.uniform() < 0.5 ? -mag : mag;
  }
  return out;
}

inline std::vector<double> exponential(double rate, std::size_t n, std::uint64_t seed) {
  mfm::Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = -std::log(1.0 - rng.uniform()) / rate;
  return out;
}

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  mfm::Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = rng.normal();
  return out;
}

// Least-squares slope of y on x.
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace mfm_test
