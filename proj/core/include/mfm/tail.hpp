#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfm/model_config.hpp"

namespace mfm {

enum class TailSign { Positive, Negative };

const char* to_string(TailSign sign);

/// Magnitudes on one tail, sorted in descending order: the positive samples
/// for TailSign::Positive, and |x| of the negative samples otherwise.
std::vector<double> tail_values(std::span<const double> samples, TailSign sign);

/// Hill statistic from the k largest tail values:
///   gamma = (1/k) * sum_{i=1..k} ln(X_(i) / X_(k+1)),
/// with X_(1) >= X_(2) >= ... the order statistics of the tail. Returns 0 for
/// a flat tail. Requires 1 <= k and at least k + 1 values on the tail.
double hill_gamma(std::span<const double> samples, std::size_t k, TailSign sign);

/// Hill statistics for every k in [1, sorted_desc.size() - 1]; entry k - 1
/// holds gamma_k. Input must be positive and sorted in descending order.
std::vector<double> hill_profile(std::span<const double> sorted_desc);

struct BootstrapConfig {
  std::size_t resamples = 100;
  double subsample_fraction = 0.1;
  std::size_t grid_points = 50;
  std::size_t k_min = 10;
  /// Consecutive grid points used to locate the flattest stretch of gamma_k.
  std::size_t plateau_window = 10;
  /// |d ln gamma_k / d ln k| above this means no stable plateau.
  double drift_tolerance = 0.1;
  std::uint64_t seed = 0x5EED5EEDULL;
};

struct KDiagnostic {
  std::size_t k = 0;
  double gamma = 0.0;
  double subsample_mse = 0.0;
};

struct TailEstimate {
  double alpha = 0.0;  // 1 / gamma
  double gamma = 0.0;
  std::size_t k = 0;
  TailSign tail_sign = TailSign::Positive;
  std::size_t n_tail = 0;
  std::vector<KDiagnostic> k_diagnostics;
  double plateau_gamma = 0.0;
  std::size_t plateau_k_lo = 0;
  std::size_t plateau_k_hi = 0;
  /// OLS slope of ln gamma_k against ln k across the grid.
  double drift = 0.0;
  bool plateau_found = false;
  /// Fewer than 1000 tail values; the estimate is unreliable.
  bool small_sample = false;
};

/// Hill estimate with the order statistic chosen by a subsample bootstrap.
///
/// Candidate k values form a geometric grid on [k_min, n/10], n being the
/// number of tail values. The reference value is the mean of gamma_k over
/// the flattest window of the grid (the plateau). For each candidate k,
/// `resamples` subsamples of size n * subsample_fraction are drawn without
/// replacement and their Hill statistic is taken at the rescaled order
/// statistic k * (n_sub / n)^(2/3). The selected k minimizes the mean squared
/// deviation of those subsample statistics from the reference.
TailEstimate optimal_k(std::span<const double> samples, TailSign sign,
                       const BootstrapConfig& cfg = {});

}  // namespace mfm
