#include "mfm/tail.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "mfm/model_config.hpp"
#include "mfm/rng.hpp"

namespace mfm {

const char* to_string(TailSign sign) { return sign == TailSign::Positive ? "positive" : "negative"; }

std::vector<double> tail_values(std::span<const double> samples, TailSign sign) {
  std::vector<double> out;
  for (double v : samples) {
    if (sign == TailSign::Positive && v > 0.0) out.push_back(v);
    if (sign == TailSign::Negative && v < 0.0) out.push_back(-v);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double hill_gamma(std::span<const double> samples, std::size_t k, TailSign sign) {
  if (k < 1) throw ValidationError("k", "must be at least 1");
  const auto tail = tail_values(samples, sign);
  if (tail.size() < k + 1) throw ValidationError("k", "needs at least k + 1 values on the tail");
  const double log_ref = std::log(tail[k]);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(tail[i]) - log_ref;
  return sum / static_cast<double>(k);
}

std::vector<double> hill_profile(std::span<const double> sorted_desc) {
  if (sorted_desc.size() < 2) return {};
  std::vector<double> gamma(sorted_desc.size() - 1);
  double prefix = 0.0;
  for (std::size_t k = 1; k < sorted_desc.size(); ++k) {
    prefix += std::log(sorted_desc[k - 1]);
    gamma[k - 1] = prefix / static_cast<double>(k) - std::log(sorted_desc[k]);
  }
  return gamma;
}

namespace {

std::vector<std::size_t> geometric_grid(std::size_t lo, std::size_t hi, std::size_t points) {
  std::vector<std::size_t> grid;
  if (hi <= lo || points < 2) return {lo};
  const double ratio = std::log(static_cast<double>(hi) / static_cast<double>(lo));
  for (std::size_t i = 0; i < points; ++i) {
    const double k = static_cast<double>(lo) * std::exp(ratio * static_cast<double>(i) /
                                                         static_cast<double>(points - 1));
    const auto rounded = static_cast<std::size_t>(std::llround(k));
    if (grid.empty() || rounded > grid.back()) grid.push_back(rounded);
  }
  return grid;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

TailEstimate optimal_k(std::span<const double> samples, TailSign sign, const BootstrapConfig& cfg) {
  if (cfg.resamples < 1) throw ValidationError("bootstrap_resamples", "must be at least 1");
  if (!(cfg.subsample_fraction > 0.0 && cfg.subsample_fraction < 1.0))
    throw ValidationError("bootstrap_subsample_fraction", "must lie in (0, 1)");
  if (cfg.grid_points < 2) throw ValidationError("bootstrap_grid_points", "must be at least 2");
  if (cfg.k_min < 1) throw ValidationError("bootstrap_k_min", "must be at least 1");

  const auto tail = tail_values(samples, sign);
  if (tail.size() < 3) throw ValidationError("samples", std::string("no usable mass on the ") +
                                                            to_string(sign) + " tail");
  const std::size_t n = tail.size();
  const auto profile = hill_profile(tail);

  TailEstimate est;
  est.tail_sign = sign;
  est.n_tail = n;
  est.small_sample = n < 1000;

  const std::size_t k_hi = std::max<std::size_t>(2, std::min(n / 10, n - 2));
  const std::size_t k_lo = std::min(cfg.k_min, k_hi - 1);
  const auto grid = geometric_grid(k_lo, k_hi, cfg.grid_points);

  std::vector<double> grid_gamma(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid_gamma[i] = profile[grid[i] - 1];

  // Plateau: window of consecutive grid points with the smallest spread.
  const std::size_t window = std::clamp<std::size_t>(cfg.plateau_window, 1, grid.size());
  double best_spread = std::numeric_limits<double>::infinity();
  std::size_t best_start = 0;
  for (std::size_t s = 0; s + window <= grid.size(); ++s) {
    const double mean = std::accumulate(grid_gamma.begin() + s, grid_gamma.begin() + s + window, 0.0) /
                        static_cast<double>(window);
    double ss = 0.0;
    for (std::size_t j = s; j < s + window; ++j) ss += (grid_gamma[j] - mean) * (grid_gamma[j] - mean);
    if (ss < best_spread) {
      best_spread = ss;
      best_start = s;
      est.plateau_gamma = mean;
    }
  }
  est.plateau_k_lo = grid[best_start];
  est.plateau_k_hi = grid[best_start + window - 1];

  // Drift of ln gamma_k against ln k.
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid_gamma[i] > 0.0) {
      lx.push_back(std::log(static_cast<double>(grid[i])));
      ly.push_back(std::log(grid_gamma[i]));
    }
  }
  est.drift = lx.size() >= 2 ? ols_slope(lx, ly) : 0.0;
  est.plateau_found = std::abs(est.drift) < cfg.drift_tolerance;

  // Subsample bootstrap.
  const auto n_sub = std::max<std::size_t>(
      3, static_cast<std::size_t>(std::floor(cfg.subsample_fraction * static_cast<double>(n))));
  const double scale = std::pow(static_cast<double>(n_sub) / static_cast<double>(n), 2.0 / 3.0);
  std::vector<std::size_t> sub_k(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto k1 = static_cast<std::size_t>(std::llround(static_cast<double>(grid[i]) * scale));
    sub_k[i] = std::clamp<std::size_t>(k1, 1, n_sub - 1);
  }

  Rng rng(cfg.seed);
  std::vector<std::size_t> index(n);
  std::vector<double> sub(n_sub);
  std::vector<double> sq(grid.size(), 0.0);
  for (std::size_t b = 0; b < cfg.resamples; ++b) {
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t j = 0; j < n_sub; ++j) {
      const auto pick = j + static_cast<std::size_t>(rng.uniform_index(n - j));
      std::swap(index[j], index[pick]);
      sub[j] = tail[index[j]];
    }
    std::sort(sub.begin(), sub.end(), std::greater<>());
    const auto sub_profile = hill_profile(sub);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = sub_profile[sub_k[i] - 1] - est.plateau_gamma;
      sq[i] += d * d;
    }
  }

  std::size_t best = 0;
  est.k_diagnostics.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double mse = sq[i] / static_cast<double>(cfg.resamples);
    est.k_diagnostics.push_back({grid[i], grid_gamma[i], mse});
    if (mse < est.k_diagnostics[best].subsample_mse) best = i;
  }
  est.k = grid[best];
  est.gamma = grid_gamma[best];
  est.alpha = est.gamma > 0.0 ? 1.0 / est.gamma : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace mfm
