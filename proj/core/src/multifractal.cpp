#include "mfm/multifractal.hpp"

#include <algorithm>
#include <cmath>

#include "mfm/model_config.hpp"

namespace mfm {

bool MultifractalSpectrum::monotone_in_d() const {
  for (const auto& row : moments) {
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i] < row[i - 1]) return false;
    }
  }
  return true;
}

std::size_t MultifractalSpectrum::index_of(double q) const {
  for (std::size_t i = 0; i < q_values.size(); ++i) {
    if (q_values[i] == q) return i;
  }
  throw ValidationError("q", "not in the spectrum");
}

std::vector<std::size_t> geometric_lags(std::size_t lo, std::size_t hi, std::size_t points) {
  if (lo < 1 || hi < lo) throw ValidationError("d_values", "need 1 <= lo <= hi");
  std::vector<std::size_t> out;
  const double ratio = points > 1 ? std::log(static_cast<double>(hi) / static_cast<double>(lo)) /
                                        static_cast<double>(points - 1)
                                  : 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const auto d = static_cast<std::size_t>(
        std::llround(static_cast<double>(lo) * std::exp(ratio * static_cast<double>(i))));
    if (out.empty() || d > out.back()) out.push_back(d);
  }
  return out;
}

void fit_scaling_exponents(MultifractalSpectrum& s) {
  std::vector<double> lx;
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < s.d_values.size(); ++j) {
    if (s.d_values[j] >= s.fit_range.d_min && s.d_values[j] <= s.fit_range.d_max) {
      lx.push_back(std::log(static_cast<double>(s.d_values[j])));
      used.push_back(j);
    }
  }
  if (lx.size() < 3) throw ValidationError("d_values", "need at least 3 lags inside the fit range");
  const double m = static_cast<double>(lx.size());
  double mx = 0.0;
  for (double v : lx) mx += v;
  mx /= m;
  double sxx = 0.0;
  for (double v : lx) sxx += (v - mx) * (v - mx);

  s.zeta.assign(s.q_values.size(), 0.0);
  s.zeta_stderr.assign(s.q_values.size(), 0.0);
  s.fit_r2.assign(s.q_values.size(), 1.0);
  for (std::size_t iq = 0; iq < s.q_values.size(); ++iq) {
    std::vector<double> ly;
    for (std::size_t j : used) ly.push_back(std::log(s.moments[iq][j]));
    double my = 0.0;
    for (double v : ly) my += v;
    my /= m;
    double sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < ly.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      syy += (ly[i] - my) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    double sse = 0.0;
    for (std::size_t i = 0; i < ly.size(); ++i) {
      const double resid = ly[i] - (my + slope * (lx[i] - mx));
      sse += resid * resid;
    }
    s.zeta[iq] = slope;
    s.zeta_stderr[iq] = std::sqrt(sse / (m - 2.0) / sxx);
    s.fit_r2[iq] = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  }
}

MultifractalSpectrum structure_functions(std::span<const double> prices,
                                         std::span<const double> q_values,
                                         std::span<const std::size_t> d_values, ScalingFitRange fit) {
  if (q_values.empty()) throw ValidationError("q_values", "must not be empty");
  if (d_values.empty()) throw ValidationError("d_values", "must not be empty");
  for (double q : q_values) {
    if (!(q >= 0.0)) throw ValidationError("q_values", "must be non-negative");
  }
  const std::size_t max_d = *std::max_element(d_values.begin(), d_values.end());
  if (*std::min_element(d_values.begin(), d_values.end()) < 1)
    throw ValidationError("d_values", "must be positive");
  if (max_d * 10 > prices.size()) throw ValidationError("d_values", "largest d exceeds a tenth of the series");
  if (fit.d_min < 1 || fit.d_max < fit.d_min) throw ValidationError("fit_range", "need 1 <= d_min <= d_max");

  std::vector<double> logp(prices.size());
  for (std::size_t t = 0; t < prices.size(); ++t) {
    if (!(prices[t] > 0.0)) throw ValidationError("prices", "must be positive");
    logp[t] = std::log(prices[t]);
  }

  MultifractalSpectrum s;
  s.q_values.assign(q_values.begin(), q_values.end());
  s.d_values.assign(d_values.begin(), d_values.end());
  s.fit_range = fit;
  s.moments.assign(q_values.size(), std::vector<double>(d_values.size(), 0.0));

  std::vector<double> mag;
  for (std::size_t j = 0; j < d_values.size(); ++j) {
    const std::size_t d = d_values[j];
    const std::size_t count = logp.size() - d;
    mag.resize(count);
    for (std::size_t t = 0; t < count; ++t) mag[t] = std::abs(logp[t + d] - logp[t]);
    for (std::size_t iq = 0; iq < q_values.size(); ++iq) {
      const double q = q_values[iq];
      double sum = 0.0;
      for (double v : mag) sum += std::pow(v, q);
      const double moment = sum / static_cast<double>(count);
      if (!(moment > 0.0)) throw ValidationError("prices", "zero structure function (constant series)");
      s.moments[iq][j] = moment;
    }
  }
  fit_scaling_exponents(s);
  return s;
}

}  // namespace mfm
