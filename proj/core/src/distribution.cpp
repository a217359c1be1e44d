#include "mfm/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "mfm/model_config.hpp"

namespace mfm {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

Ccdf::Ccdf(std::span<const double> samples) : sorted_(samples.begin(), samples.end()) {
  if (sorted_.empty()) throw ValidationError("samples", "must not be empty");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ccdf::operator()(double x) const {
  const auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

std::vector<CcdfPoint> Ccdf::points() const {
  std::vector<CcdfPoint> out;
  const double n = static_cast<double>(sorted_.size());
  for (std::size_t i = 0; i < sorted_.size();) {
    std::size_t j = i;
    while (j < sorted_.size() && sorted_[j] == sorted_[i]) ++j;
    if (j == sorted_.size()) break;
    out.push_back({sorted_[i], static_cast<double>(sorted_.size() - j) / n});
    i = j;
  }
  return out;
}

std::vector<CcdfPoint> ccdf(std::span<const double> samples) { return Ccdf(samples).points(); }

double normal_ccdf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

LogNormalFit lognormal_fit(std::span<const double> samples, double trim) {
  if (samples.size() < 3) throw ValidationError("samples", "need at least 3 samples");
  if (!(trim >= 0.0 && trim < 0.5)) throw ValidationError("trim", "must lie in [0, 0.5)");
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (double v : samples) {
    if (!(v > 0.0)) throw ValidationError("samples", "must be strictly positive");
    logs.push_back(std::log(v));
  }
  std::sort(logs.begin(), logs.end());

  const auto n = logs.size();
  const auto cut = static_cast<std::size_t>(std::floor(trim * static_cast<double>(n)));
  const std::span<const double> bulk(logs.data() + cut, n - 2 * cut);
  if (bulk.size() < 3) throw ValidationError("samples", "too few samples after trimming");
  if (bulk.front() == bulk.back()) throw ValidationError("samples", "degenerate (zero spread in log-samples)");

  double mean = 0.0;
  for (double v : bulk) mean += v;
  mean /= static_cast<double>(bulk.size());
  double ss = 0.0;
  for (double v : bulk) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(bulk.size() - 1));

  if (trim > 0.0) {
    // Variance of a normal truncated symmetrically at its trim quantiles.
    const double z = std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * trim);
    const double shrink = 1.0 - 2.0 * z * normal_pdf(z) / (1.0 - 2.0 * trim);
    sd /= std::sqrt(shrink);
  }

  const double lo = normal_cdf((bulk.front() - mean) / sd);
  const double hi = normal_cdf((bulk.back() - mean) / sd);
  const double mass = hi - lo;
  double ks = 0.0;
  const double m = static_cast<double>(bulk.size());
  for (std::size_t i = 0; i < bulk.size(); ++i) {
    const double model = mass > 0.0 ? (normal_cdf((bulk[i] - mean) / sd) - lo) / mass : 0.0;
    const double below = static_cast<double>(i) / m;
    const double upto = static_cast<double>(i + 1) / m;
    ks = std::max({ks, std::abs(model - below), std::abs(upto - model)});
  }
  return {mean, sd, ks, bulk.size()};
}

RegimeDecision classify_tail(std::span<const double> samples, double quantile) {
  if (!(quantile > 0.0 && quantile < 1.0)) throw ValidationError("quantile", "must lie in (0, 1)");
  std::vector<double> mags;
  mags.reserve(samples.size());
  for (double v : samples) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  const auto start = static_cast<std::size_t>(std::floor(quantile * static_cast<double>(mags.size())));
  if (start >= mags.size()) throw ValidationError("samples", "too few samples for the tail");

  RegimeDecision d;
  d.threshold = mags[start];
  if (!(d.threshold > 0.0)) throw ValidationError("samples", "tail threshold must be positive");
  double excess = 0.0;
  double log_ratio = 0.0;
  std::size_t m = 0;
  for (std::size_t i = start; i < mags.size(); ++i) {
    if (mags[i] <= d.threshold) continue;
    excess += mags[i] - d.threshold;
    log_ratio += std::log(mags[i] / d.threshold);
    ++m;
  }
  if (m < 2) throw ValidationError("samples", "tail has fewer than 2 points above the threshold");
  d.n_tail = m;
  const double mm = static_cast<double>(m);
  d.exponential_rate = mm / excess;
  d.loglik_exponential = mm * std::log(d.exponential_rate) - d.exponential_rate * excess;
  d.power_exponent = mm / log_ratio;
  // Pareto density a u^a x^-(a+1), summed in logs.
  d.loglik_power = mm * std::log(d.power_exponent / d.threshold) - (d.power_exponent + 1.0) * log_ratio;
  d.regime = d.loglik_power > d.loglik_exponential ? TailRegime::PowerLaw : TailRegime::Exponential;
  return d;
}

NormalityTest jarque_bera(std::span<const double> samples) {
  if (samples.size() < 4) throw ValidationError("samples", "need at least 4 samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw ValidationError("samples", "zero variance");
  NormalityTest t;
  t.skewness = m3 / std::pow(m2, 1.5);
  t.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  t.jarque_bera = n / 6.0 * (t.skewness * t.skewness + 0.25 * t.excess_kurtosis * t.excess_kurtosis);
  t.p_value = std::exp(-0.5 * t.jarque_bera);
  return t;
}

}  // namespace mfm
