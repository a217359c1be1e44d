#include "mfm/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mfm/model_config.hpp"

namespace mfm {

namespace {

bool non_positive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

// Plain power series. Terms are summed until they no longer change the sum.
double hypergeometric_series(double a, double b, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 100000; ++k) {
    term *= (a + k - 1) * z / ((b + k - 1) * k);
    const double next = sum + term;
    if (term == 0.0 || (next == sum && std::abs(term) < 1e-17 * std::abs(next))) return next;
    sum = next;
  }
  throw std::runtime_error("kummer_m: series did not converge");
}

void check_zeta(double zeta_v) {
  if (!(zeta_v > 0.0) || !std::isfinite(zeta_v)) throw ValidationError("zeta_v", "must be positive");
}

}  // namespace

double lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw ValidationError("a", "must be positive");
  if (!(x >= 0.0)) throw ValidationError("x", "must be non-negative");
  return boost::math::tgamma_lower(a, x);
}

double kummer_m_series(double a, double b, double z) {
  if (non_positive_integer(b)) throw ValidationError("b", "must not be a non-positive integer");
  if (z == 0.0) return 1.0;
  if (z > 0.0) return hypergeometric_series(a, b, z);
  return std::exp(z) * hypergeometric_series(b - a, b, -z);
}

double kummer_m_incomplete_gamma(double a, double x) {
  if (!(x > 0.0)) throw ValidationError("x", "must be positive");
  return a * std::pow(x, -a) * lower_incomplete_gamma(a, x);
}

double kummer_m(double a, double b, double z) {
  if (non_positive_integer(b)) throw ValidationError("b", "must not be a non-positive integer");
  if (z < -kSeriesLimit && b == a + 1.0 && a > 0.0) return kummer_m_incomplete_gamma(a, -z);
  return kummer_m_series(a, b, z);
}

MixtureParams make_mixture(double zeta_v, std::size_t n_max) {
  check_zeta(zeta_v);
  if (n_max < 1) throw ValidationError("n_max", "must be at least 1");
  MixtureParams p{zeta_v, n_max, 0.0};
  // Smallest terms first.
  for (std::size_t n = n_max; n >= 1; --n) p.normalization += std::pow(static_cast<double>(n), -(zeta_v + 1.0));
  return p;
}

double mixture_density(double r, const MixtureParams& params) {
  check_zeta(params.zeta_v);
  if (!(params.normalization > 0.0)) throw ValidationError("normalization", "use make_mixture");
  const double r2 = r * r;
  double sum = 0.0;
  for (std::size_t i = params.n_max; i >= 1; --i) {
    const double n = static_cast<double>(i);
    sum += std::pow(n, -(params.zeta_v + 1.0)) * std::exp(-r2 / (2.0 * n)) / std::sqrt(n);
  }
  return sum / (params.normalization * std::sqrt(2.0 * std::numbers::pi));
}

double integrate_even(const std::function<double(double)>& f) {
  // Gauss-Kronrod on the core, exp-sinh on the algebraic tail.
  constexpr double split = 10.0;
  const double core = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, split, 15, 1e-14);
  boost::math::quadrature::exp_sinh<double> tail_rule;
  const double tail = tail_rule.integrate(f, split, std::numeric_limits<double>::infinity(), 1e-13);
  return 2.0 * (core + tail);
}

ClosedFormDensity::ClosedFormDensity(double zeta_v) : zeta_v_(zeta_v), normalization_(0.0) {
  check_zeta(zeta_v);
  normalization_ = 1.0 / integrate_even([this](double r) { return shape(r); });
}

double ClosedFormDensity::shape(double r) const {
  const double a = zeta_v_ + 0.5;
  return kummer_m(a, a + 1.0, -0.5 * r * r);
}

double ClosedFormDensity::operator()(double r) const { return normalization_ * shape(r); }

double closed_form_density(double r, double zeta_v) { return ClosedFormDensity(zeta_v)(r); }

double gamma_ratio_normalization(double zeta_v) {
  check_zeta(zeta_v);
  using boost::math::tgamma_ratio;
  // Gamma(1/2 + z) / Gamma(3/2 + z) * Gamma(1 + z) / Gamma(z)
  return tgamma_ratio(0.5 + zeta_v, 1.5 + zeta_v) * tgamma_ratio(1.0 + zeta_v, zeta_v) /
         std::sqrt(2.0 * std::numbers::pi);
}

double three_halves_shape(double r) {
  const double x = 0.5 * r * r;
  if (x < 1e-2) {
    // 2 x^-2 [1 - e^-x (1 + x)] = 2 sum_{k>=0} (-1)^k (k+1) x^k / (k+2)!
    double sum = 0.0;
    double power = 1.0;
    double factorial = 2.0;
    for (int k = 0; k < 12; ++k) {
      sum += (k % 2 == 0 ? 1.0 : -1.0) * (k + 1) * power / factorial;
      power *= x;
      factorial *= k + 3;
    }
    return 2.0 * sum;
  }
  return 2.0 / (x * x) * (-std::expm1(-x) - x * std::exp(-x));
}

double predicted_alpha(double zeta_v) {
  check_zeta(zeta_v);
  return 2.0 * zeta_v;
}

double mixture_vs_closed_form(double zeta_v, std::size_t n_max, std::span<const double> r_grid) {
  const auto mixture = make_mixture(zeta_v, n_max);
  const ClosedFormDensity closed(zeta_v);
  double worst = 0.0;
  for (double r : r_grid) {
    worst = std::max(worst, std::abs(mixture_density(r, mixture) / closed(r) - 1.0));
  }
  return worst;
}

double log_log_slope(const std::function<double(double)>& f, double r_lo, double r_hi, std::size_t points) {
  if (!(r_lo > 0.0 && r_hi > r_lo) || points < 2) throw ValidationError("range", "need 0 < r_lo < r_hi");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double lx = std::log(r_lo) + (std::log(r_hi) - std::log(r_lo)) * static_cast<double>(i) /
                                           static_cast<double>(points - 1);
    const double ly = std::log(f(std::exp(lx)));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mfm
