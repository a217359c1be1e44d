#include "mfm/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mfm {

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  // Lemire's rejection method keeps the result unbiased.
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // 1 - uniform() lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::poisson(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson: lambda must be positive");
  const double u = uniform();
  double term = std::exp(-lambda);
  double cdf = term;
  std::uint64_t k = 0;
  // The 1e4 cap only matters for u within rounding of 1.
  while (u >= cdf && k < 10000) {
    ++k;
    term *= lambda / static_cast<double>(k);
    const double next = cdf + term;
    if (next == cdf) break;
    cdf = next;
  }
  return k;
}

}  // namespace mfm
