#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mfm/model_config.hpp"

namespace mfm {

/// Confluent hypergeometric function M(a, b, z) = sum_k (a)_k z^k / ((b)_k k!)
/// for real arguments. b must not be a non-positive integer.
///
/// Negative z is evaluated through Kummer's transformation
/// M(a, b, z) = e^z M(b - a, b, -z), whose series has no alternating
/// cancellation when b > a. When b = a + 1 and z < -kSeriesLimit the value
/// is taken from the lower incomplete gamma function instead:
///   M(a, a + 1, -x) = a x^-a gamma(a, x).
double kummer_m(double a, double b, double z);

/// Largest |z| evaluated by series when the incomplete-gamma route applies.
inline constexpr double kSeriesLimit = 30.0;

/// Series branch only (with Kummer's transformation for z < 0).
double kummer_m_series(double a, double b, double z);

/// Incomplete-gamma branch for M(a, a + 1, -x), x > 0.
double kummer_m_incomplete_gamma(double a, double x);

/// Lower incomplete gamma function gamma(a, x) = int_0^x t^(a-1) e^-t dt.
double lower_incomplete_gamma(double a, double x);

/// Finite Gaussian mixture over trader counts n = 1..n_max with conditional
/// variance n and weights proportional to n^-(zeta_v + 1).
struct MixtureParams {
  double zeta_v = 1.5;
  std::size_t n_max = 10000;
  /// sum_{n=1..n_max} n^-(zeta_v + 1); divides the raw weights.
  double normalization = 0.0;
};

MixtureParams make_mixture(double zeta_v, std::size_t n_max);

double mixture_density(double r, const MixtureParams& params);

/// Continuum limit of the mixture, proportional to
/// M(zeta_v + 1/2, zeta_v + 3/2, -r^2 / 2); normalized by quadrature.
class ClosedFormDensity {
 public:
  explicit ClosedFormDensity(double zeta_v);

  double operator()(double r) const;
  /// Unnormalized shape M(zeta_v + 1/2, zeta_v + 3/2, -r^2 / 2).
  double shape(double r) const;
  /// Constant C with density = C * shape; equals 1 / integral of shape.
  double normalization() const { return normalization_; }
  double zeta_v() const { return zeta_v_; }

 private:
  double zeta_v_;
  double normalization_;
};

double closed_form_density(double r, double zeta_v);

/// Gamma(1/2 + z) Gamma(1 + z) / (sqrt(2 pi) Gamma(z) Gamma(3/2 + z)); the
/// analytic value of ClosedFormDensity::normalization().
double gamma_ratio_normalization(double zeta_v);

/// Closed form specialized to zeta_v = 3/2 in elementary functions, scaled to
/// equal M(2, 3, -r^2/2): (8 / r^4) [1 - e^(-r^2/2) (1 + r^2/2)], with r -> 0
/// limit 1. Small r uses the Taylor series to avoid cancellation.
double three_halves_shape(double r);

/// Cumulative tail exponent implied by a volume exponent: 2 * zeta_v.
double predicted_alpha(double zeta_v);

/// max over the grid of |mixture / closed_form - 1|.
double mixture_vs_closed_form(double zeta_v, std::size_t n_max, std::span<const double> r_grid);

/// Least-squares slope of ln f(r) against ln r on a geometric grid.
double log_log_slope(const std::function<double(double)>& f, double r_lo, double r_hi,
                     std::size_t points = 50);

/// Integral of an even density over the real line, 2 * int_0^inf f.
double integrate_even(const std::function<double(double)>& f);

}  // namespace mfm
