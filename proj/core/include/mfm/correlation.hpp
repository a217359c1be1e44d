#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfm/model_config.hpp"

namespace mfm {

struct AcfResult {
  std::vector<std::size_t> lags;  // 1..max_lag
  std::vector<double> acf;
  double noise_band = 0.0;        // 1.96 / sqrt(T)

  /// Fraction of lags whose |acf| lies strictly inside the noise band.
  double fraction_inside_band() const;
  /// Fraction of lags whose acf exceeds +noise_band.
  double fraction_above_band() const;
};

/// Biased sample autocorrelation: c_k / c_0 with
///   c_k = (1/T) * sum_{t < T-k} (x_t - mean)(x_{t+k} - mean).
/// Requires max_lag < T / 4 and a non-constant series.
AcfResult autocorrelation(std::span<const double> series, std::size_t max_lag);

/// Pearson correlation of two equal-length series.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace mfm
