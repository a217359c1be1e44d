#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfm/model_config.hpp"

namespace mfm {

struct ScalingFitRange {
  std::size_t d_min = 10;
  std::size_t d_max = 1000;
};

struct MultifractalSpectrum {
  std::vector<double> q_values;
  std::vector<std::size_t> d_values;
  /// moments[iq][id] = M_q(d) = mean_t |ln p_{t+d} - ln p_t|^q
  std::vector<std::vector<double>> moments;
  std::vector<double> zeta;
  std::vector<double> zeta_stderr;
  std::vector<double> fit_r2;
  ScalingFitRange fit_range;

  /// True when M_q(d) is non-decreasing in d for every q.
  bool monotone_in_d() const;
  /// Index of q in q_values; throws if absent.
  std::size_t index_of(double q) const;
};

/// Structure functions of the log-price and their log-log slopes zeta_q,
/// fitted by least squares over the d values inside `fit`.
MultifractalSpectrum structure_functions(std::span<const double> prices,
                                         std::span<const double> q_values,
                                         std::span<const std::size_t> d_values,
                                         ScalingFitRange fit = {});

/// Same fit applied to externally supplied moments (e.g. an ensemble average).
void fit_scaling_exponents(MultifractalSpectrum& spectrum);

/// Roughly geometric grid of distinct integers in [lo, hi].
std::vector<std::size_t> geometric_lags(std::size_t lo, std::size_t hi, std::size_t points);

}  // namespace mfm
