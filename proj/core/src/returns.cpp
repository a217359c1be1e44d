#include "mfm/returns.hpp"

#include <cmath>

#include "mfm/model_config.hpp"

namespace mfm {

ReturnSeries log_returns(std::span<const double> prices, std::size_t delta_t) {
  if (delta_t == 0) throw ValidationError("delta_t", "must be positive");
  if (delta_t >= prices.size()) throw ValidationError("delta_t", "must be shorter than the price series");
  for (double p : prices) {
    if (!(p > 0.0)) throw ValidationError("prices", "must be positive");
  }
  ReturnSeries out;
  out.delta_t = delta_t;
  out.values.resize(prices.size() - delta_t);
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    out.values[t] = std::log(prices[t + delta_t] / prices[t]);
  }
  return out;
}

Moments sample_moments(std::span<const double> values) {
  if (values.size() < 2) throw ValidationError("values", "need at least 2 samples");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

ReturnSeries normalize(const ReturnSeries& series) {
  const Moments m = sample_moments(series.values);
  if (!(m.sd > 0.0)) throw ValidationError("values", "zero variance");
  ReturnSeries out = series;
  for (double& v : out.values) v = (v - m.mean) / m.sd;
  // One correction pass removes the residual rounding in mean and scale.
  const Moments again = sample_moments(out.values);
  for (double& v : out.values) v = (v - again.mean) / again.sd;
  out.normalized = true;
  return out;
}

std::vector<double> rolling_volatility(std::span<const double> values, std::size_t window) {
  if (window < 2) throw ValidationError("window", "must be at least 2");
  if (window > values.size()) throw ValidationError("window", "larger than the series");
  std::vector<double> out(values.size() - window + 1);
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = sample_moments(values.subspan(t, window)).sd;
  }
  return out;
}

}  // namespace mfm
