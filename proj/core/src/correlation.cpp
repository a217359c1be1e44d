#include "mfm/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "mfm/model_config.hpp"

namespace mfm {

double AcfResult::fraction_inside_band() const {
  if (acf.empty()) return 0.0;
  const auto inside = std::count_if(acf.begin(), acf.end(), [&](double a) { return std::abs(a) < noise_band; });
  return static_cast<double>(inside) / static_cast<double>(acf.size());
}

double AcfResult::fraction_above_band() const {
  if (acf.empty()) return 0.0;
  const auto above = std::count_if(acf.begin(), acf.end(), [&](double a) { return a > noise_band; });
  return static_cast<double>(above) / static_cast<double>(acf.size());
}

AcfResult autocorrelation(std::span<const double> series, std::size_t max_lag) {
  const std::size_t n = series.size();
  if (max_lag < 1) throw ValidationError("max_lag", "must be at least 1");
  if (4 * max_lag >= n) throw ValidationError("max_lag", "must be below a quarter of the series length");

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t t = 0; t < n; ++t) centered[t] = series[t] - mean;

  double c0 = 0.0;
  for (double v : centered) c0 += v * v;
  if (!(c0 > 0.0)) throw ValidationError("series", "constant series has no autocorrelation");

  AcfResult out;
  out.noise_band = 1.96 / std::sqrt(static_cast<double>(n));
  out.lags.reserve(max_lag);
  out.acf.reserve(max_lag);
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) ck += centered[t] * centered[t + k];
    out.lags.push_back(k);
    out.acf.push_back(std::clamp(ck / c0, -1.0, 1.0));
  }
  return out;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw ValidationError("series", "need equal lengths >= 2");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0 && sbb > 0.0)) throw ValidationError("series", "zero variance");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace mfm
