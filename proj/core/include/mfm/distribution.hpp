#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfm/model_config.hpp"

namespace mfm {

struct CcdfPoint {
  double x = 0.0;
  double p = 0.0;  // P(X > x)
};

/// Empirical complementary CDF of a sample.
class Ccdf {
 public:
  explicit Ccdf(std::span<const double> samples);

  /// P(X > x) under the empirical law.
  double operator()(double x) const;

  /// One point per distinct sample value with P(X > x) > 0, ascending in x
  /// and strictly decreasing in p. The maximum is omitted since P = 0 there.
  std::vector<CcdfPoint> points() const;

  std::size_t size() const { return sorted_.size(); }
  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }

 private:
  std::vector<double> sorted_;
};

std::vector<CcdfPoint> ccdf(std::span<const double> samples);

/// P(Z > x) for a standard normal Z.
double normal_ccdf(double x);

struct LogNormalFit {
  double mu_ln = 0.0;
  double sigma_ln = 0.0;
  double ks_distance = 0.0;
  std::size_t n_used = 0;
};

/// Log-normal fit on the central (1 - 2 * trim) of the samples.
///
/// Moments of the trimmed log-samples are corrected for the truncation of a
/// normal law at the same quantiles, so an exact log-normal input recovers
/// its parameters. ks_distance compares the trimmed sample with the fitted
/// law truncated to the trimmed range.
LogNormalFit lognormal_fit(std::span<const double> samples, double trim = 0.05);

enum class TailRegime { Exponential, PowerLaw };

struct RegimeDecision {
  TailRegime regime = TailRegime::Exponential;
  double threshold = 0.0;       // tail starts above this sample quantile
  std::size_t n_tail = 0;
  double exponential_rate = 0.0;
  double power_exponent = 0.0;  // density exponent minus one, i.e. CCDF exponent
  double loglik_exponential = 0.0;
  double loglik_power = 0.0;
};

/// Compares maximum-likelihood exponential and Pareto fits to the excesses of
/// |samples| above the given quantile. Both laws share the support
/// [threshold, inf) and have one free parameter.
RegimeDecision classify_tail(std::span<const double> samples, double quantile = 0.95);

struct NormalityTest {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double jarque_bera = 0.0;
  double p_value = 0.0;  // chi-square with 2 degrees of freedom
};

NormalityTest jarque_bera(std::span<const double> samples);

}  // namespace mfm
