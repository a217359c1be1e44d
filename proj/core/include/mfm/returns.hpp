#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfm/model_config.hpp"

namespace mfm {

struct ReturnSeries {
  std::vector<double> values;
  std::size_t delta_t = 1;
  bool normalized = false;
};

/// values[t] = ln(prices[t + delta_t] / prices[t]).
ReturnSeries log_returns(std::span<const double> prices, std::size_t delta_t = 1);

/// Subtracts the sample mean and divides by the sample standard deviation.
ReturnSeries normalize(const ReturnSeries& series);

/// Mean and (n - 1)-denominator standard deviation.
struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};
Moments sample_moments(std::span<const double> values);

/// Sample standard deviation over each window [t, t + window).
/// Output length is values.size() - window + 1.
std::vector<double> rolling_volatility(std::span<const double> values, std::size_t window);

}  // namespace mfm
